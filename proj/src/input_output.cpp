#include "polariton/input_output.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

namespace polariton {

namespace {

const cdouble kI(0.0, 1.0);

// Row/column swap (a, b) <-> (a', b').
Matrix4cd swap_pairs(const Matrix4cd& m)
{
    static const std::array<int, 4> p{2, 3, 0, 1};
    Matrix4cd out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out(i, j) = m(p[i], p[j]);
    return out;
}

Vector4cd closed_frequencies(const SystemParams& p)
{
    const PolaritonBasis b = diagonalize_polaritons(p);
    return Vector4cd(b[0].omega, b[1].omega, -b[0].omega, -b[1].omega);
}

Vector4cd mirror_labels(const Vector4cd& v)
{
    return Vector4cd(-std::conj(v(2)), -std::conj(v(3)), -std::conj(v(0)), -std::conj(v(1)));
}

void fill_outputs(FrequencyResponse& r, const KernelPair& k)
{
    Matrix4cd res = Matrix4cd::Zero();
    for (int j = 0; j < 4; ++j) res(j, j) = 1.0 / (r.eigvals(j) - r.omega);
    r.L = kI * r.V * res;
    const double g = kernel_fullline_fourier(k.photonic, r.omega);
    for (int j = 0; j < 2; ++j) {
        r.T[j] = r.V(0, j) + g * r.L(0, j);
        r.S[j] = r.V(0, j + 2) + g * r.L(0, j + 2);
    }
}

FrequencyResponse positive_response(const SystemParams& p, const KernelPair& k, double omega, const Vector4cd& ref)
{
    FrequencyResponse r;
    r.omega = omega;
    r.M = build_M(p, k, omega);
    Eigen::ComplexEigenSolver<Matrix4cd> es(r.M);
    if (es.info() != Eigen::Success) throw BranchTrackingLost("eigen decomposition of M failed");

    std::array<int, 4> perm{0, 1, 2, 3}, best{};
    double c1 = INFINITY, c2 = INFINITY;
    do {
        double c = 0;
        for (int i = 0; i < 4; ++i) c += std::abs(es.eigenvalues()(perm[i]) - ref(i));
        if (c < c1) {
            c2 = c1;
            c1 = c;
            best = perm;
        } else if (c < c2) {
            c2 = c;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!(c2 >= 2 * c1)) throw BranchTrackingLost("ambiguous eigenvalue labelling at omega = " + std::to_string(omega));

    for (int j = 0; j < 4; ++j) {
        r.eigvals(j) = es.eigenvalues()(best[j]);
        Vector4cd v = es.eigenvectors().col(best[j]);
        const double norm = std::norm(v(0)) + std::norm(v(1)) - std::norm(v(2)) - std::norm(v(3));
        v /= std::sqrt(std::abs(norm));
        Eigen::Index top;
        v.cwiseAbs().maxCoeff(&top);
        v *= std::conj(v(top)) / std::abs(v(top));
        r.V.col(j) = v;
    }
    fill_outputs(r, k);
    return r;
}

// Integral of a matrix-valued sample sequence by the trapezoid rule.
template <typename M>
M trapezoid(const std::vector<double>& x, const std::vector<M>& f, int stride)
{
    M acc = M::Zero();
    size_t prev = 0;
    for (size_t i = stride; i < x.size(); i += stride) {
        acc += 0.5 * (x[i] - x[prev]) * (f[i] + f[prev]);
        prev = i;
    }
    if (prev != x.size() - 1) acc += 0.5 * (x.back() - x[prev]) * (f.back() + f[prev]);
    return acc;
}

// Points c + width tan(theta), theta uniform, covering [a, b].
void tangent_points(double a, double b, double c, double width, int n, std::vector<double>& out)
{
    const double t0 = std::atan((a - c) / width), t1 = std::atan((b - c) / width);
    for (int i = 0; i < n; ++i) out.push_back(c + width * std::tan(t0 + (t1 - t0) * i / (n - 1)));
}

std::array<double, 2> resonance_widths(const SystemParams& p, const KernelPair& k)
{
    const PolaritonBasis b = diagonalize_polaritons(p);
    std::array<double, 2> w{};
    for (int j = 0; j < 2; ++j)
        w[j] = std::max(1e-6, 0.5 * (k.photonic.gamma * std::norm(b[j].w) + k.excitonic.gamma * std::norm(b[j].x)));
    return w;
}

std::array<double, 2> resonance_centers(const SystemParams& p, const KernelPair& k)
{
    const PolaritonBasis b = diagonalize_polaritons(p);
    std::array<double, 2> c{};
    for (int j = 0; j < 2; ++j) {
        c[j] = b[j].omega;
        try {
            c[j] = frequency_response(p, k, b[j].omega).eigvals(j).real();
        } catch (const Error&) {
        }
    }
    return c;
}

} // namespace

Matrix4cd coefficient_matrix(const SystemParams& p, cdouble gc_plus, cdouble gx_plus, cdouble gc_mirror,
                             cdouble gx_mirror)
{
    const double wc = p.omega_c, wx = p.omega_x, om = p.rabi, d = p.diamag;
    Matrix4cd m;
    m << wc + 2 * d - kI * gc_plus, kI * om, 2 * d, -kI * om,
         -kI * om, wx - kI * gx_plus, -kI * om, 0.0,
         -2 * d, -kI * om, -wc - 2 * d - kI * gc_mirror, kI * om,
         -kI * om, 0.0, -kI * om, -wx - kI * gx_mirror;
    return m;
}

Matrix4cd build_M(const SystemParams& p, const KernelPair& k, double omega)
{
    validate(p);
    return coefficient_matrix(p, kernel_halfline_fourier(k.photonic, omega),
                              kernel_halfline_fourier(k.excitonic, omega),
                              std::conj(kernel_halfline_fourier(k.photonic, -omega)),
                              std::conj(kernel_halfline_fourier(k.excitonic, -omega)));
}

FrequencyResponse mirrored(const FrequencyResponse& r, const KernelPair& k)
{
    FrequencyResponse out;
    out.omega = -r.omega;
    out.M = -swap_pairs(r.M.conjugate());
    out.V = swap_pairs(r.V.conjugate());
    out.eigvals = mirror_labels(r.eigvals);
    fill_outputs(out, k);
    return out;
}

FrequencyResponse frequency_response(const SystemParams& p, const KernelPair& k, double omega,
                                     const Vector4cd* reference)
{
    const Vector4cd ref = reference ? *reference : closed_frequencies(p);
    if (omega < 0) return mirrored(positive_response(p, k, -omega, mirror_labels(ref)), k);
    return positive_response(p, k, omega, ref);
}

std::vector<FrequencyResponse> track_branches(const SystemParams& p, const KernelPair& k,
                                              const std::vector<double>& omega)
{
    std::vector<size_t> order(omega.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return omega[a] > omega[b]; });
    std::vector<FrequencyResponse> out(omega.size());
    Vector4cd ref = closed_frequencies(p);
    for (size_t i : order) {
        if (omega[i] <= 0) throw InvalidParams("branch tracking needs positive frequencies");
        out[i] = positive_response(p, k, omega[i], ref);
        ref = out[i].eigvals;
    }
    return out;
}

Matrix4cd input_moments(const ReservoirCorrelations& corr, const FrequencyResponse& r, bool replace)
{
    if (replace && corr.mode == ReservoirMode::squeezed_ground) {
        Matrix4cd d = Matrix4cd::Zero();
        d(0, 0) = d(1, 1) = 1.0;
        return r.V * d * r.V.adjoint();
    }
    return corr.moments.k;
}

InputCorrelationMatrix build_input_correlations(const ReservoirCorrelations& corr, const FrequencyResponse& r,
                                                bool replace)
{
    const KernelPair& k = corr.kernels;
    const double w = r.omega;
    const cdouble gc = kernel_halfline_fourier(k.photonic, w), gx = kernel_halfline_fourier(k.excitonic, w);
    const cdouble gcm = kernel_halfline_fourier(k.photonic, -w), gxm = kernel_halfline_fourier(k.excitonic, -w);
    const Vector4cd rows(gc, gx, std::conj(gcm), std::conj(gxm));
    const Vector4cd cols(std::conj(gc), std::conj(gx), gcm, gxm);
    const Matrix4cd m = input_moments(corr, r, replace);
    return {rows.asDiagonal() * m, m * cols.asDiagonal()};
}

SpectralResult ordered_output_spectrum(const SystemParams& p, const ReservoirCorrelations& corr,
                                       const std::vector<double>& omega, bool replace)
{
    const KernelPair& k = corr.kernels;
    std::vector<double> positive;
    for (double w : omega) {
        if (w == 0) throw SingularFrequency("omega = 0");
        positive.push_back(std::abs(w));
    }
    const auto tracked = track_branches(p, k, positive);

    SpectralResult out;
    out.omega = omega;
    for (size_t n = 0; n < omega.size(); ++n) {
        const FrequencyResponse rp = omega[n] > 0 ? tracked[n] : mirrored(tracked[n], k);
        const FrequencyResponse rm = mirrored(rp, k);
        auto dressed = [&](const FrequencyResponse& r) {
            const InputCorrelationMatrix c = build_input_correlations(corr, r, replace);
            const auto lu = r.V.partialPivLu();
            const Matrix4cd vi = lu.inverse();
            return InputCorrelationMatrix{vi * c.plus * vi.adjoint(), vi * c.minus * vi.adjoint()};
        };
        const InputCorrelationMatrix wp = dressed(rp), wm = dressed(rm);
        const Matrix4cd tp = wp.total(), tm = wm.total();
        cdouble normal = 0, anomalous = 0;
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l) {
                const cdouble a1 = tm(l + 2, j + 2);
                const cdouble a2 = wp.plus(j, l + 2) + wm.plus(l, j + 2);
                const cdouble a3 = wp.minus(l + 2, j) + wm.minus(j + 2, l);
                const cdouble a4 = tp(j + 2, l + 2);
                normal += rp.T[j] * a1 * std::conj(rp.T[l]) + rp.T[j] * a2 * std::conj(rp.S[l]) +
                          rp.S[j] * a3 * std::conj(rp.T[l]) + rp.S[j] * a4 * std::conj(rp.S[l]);
                anomalous += rp.T[j] * a2 * rm.T[l] + rp.T[j] * a1 * rm.S[l] + rp.S[j] * a4 * rm.T[l] +
                             rp.S[j] * a3 * rm.S[l];
            }
        out.normal.push_back(normal);
        out.anomalous.push_back(anomalous);
    }
    return out;
}

std::vector<double> unordered_output_spectrum(const SystemParams& p, const ReservoirCorrelations& corr,
                                              const std::vector<double>& omega, bool replace)
{
    const KernelPair& k = corr.kernels;
    std::vector<double> out;
    for (double w : omega) {
        const Matrix4cd m = build_M(p, k, w);
        const Matrix4cd resolvent = kI * (m - w * Matrix4cd::Identity()).inverse();
        Vector4cd c = kernel_fullline_fourier(k.photonic, w) * resolvent.row(0).transpose();
        c(0) += 1.0;
        const FrequencyResponse rm = frequency_response(p, k, -w);
        const Matrix4cd cm = build_input_correlations(corr, rm, replace).total();
        cdouble acc = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) acc += std::conj(c(a)) * c(b) * cm(a ^ 2, b ^ 2);
        out.push_back(acc.real());
    }
    return out;
}

IntracavityOccupations intracavity_occupations(const SystemParams& p, const ReservoirCorrelations& corr,
                                               const std::vector<double>& omega, bool replace)
{
    const KernelPair& k = corr.kernels;
    if (omega.size() < 3 || !std::is_sorted(omega.begin(), omega.end()))
        throw InvalidParams("occupation grid must be ascending with at least 3 points");
    std::vector<double> positive;
    for (double w : omega)
        if (w > 0) positive.push_back(w);
    std::vector<double> negative;
    for (double w : omega)
        if (w < 0) negative.push_back(-w);
    const auto tp = track_branches(p, k, positive);
    const auto tn = negative.empty() ? std::vector<FrequencyResponse>{} : track_branches(p, k, negative);

    std::vector<Matrix4cd> bare, dressed, dressed_plus;
    size_t ip = 0, in = 0;
    for (double w : omega) {
        if (w == 0) throw SingularFrequency("omega = 0");
        const FrequencyResponse r = w > 0 ? tp[ip++] : mirrored(tn[in++], k);
        // s(w) = L(w) V(w)^-1 Phi(w)
        const Matrix4cd vi = r.V.partialPivLu().inverse();
        const InputCorrelationMatrix c = build_input_correlations(corr, r, replace);
        const Matrix4cd d = r.L * vi * c.total() * vi.adjoint() * r.L.adjoint();
        const Matrix4cd dp = r.L * vi * c.plus * vi.adjoint() * r.L.adjoint();
        bare.push_back(d);
        dressed.push_back(vi * d * vi.adjoint());
        dressed_plus.push_back(vi * dp * vi.adjoint());
    }

    const PolaritonBasis basis = diagonalize_polaritons(p);
    const Matrix4cd f = basis.forward();
    auto assemble = [&](int stride) {
        IntracavityOccupations o;
        o.moments.k = trapezoid(omega, bare, stride) / (2 * std::numbers::pi);
        const Matrix4cd dk = trapezoid(omega, dressed, stride) / (2 * std::numbers::pi);
        const Matrix4cd dp = trapezoid(omega, dressed_plus, stride) / (2 * std::numbers::pi);
        const Matrix4cd& kk = o.moments.k;
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l) {
                cdouble n = 0, q = 0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        n += std::conj(f(j, a)) * f(l, b) * kk(a ^ 2, b ^ 2);
                        q += f(j, a) * f(l, b) * kk(a, b ^ 2);
                    }
                o.number(j, l) = n;
                o.pair(j, l) = q;
                o.dressed_number(j, l) = dk(j + 2, l + 2);
                o.dressed_pair(j, l) = 0.5 * (dp(j, l + 2) + dp(l, j + 2));
            }
        return o;
    };
    const IntracavityOccupations fine = assemble(1), coarse = assemble(2);
    const double change = std::max({(fine.moments.k - coarse.moments.k).cwiseAbs().maxCoeff(),
                                    (fine.number - coarse.number).cwiseAbs().maxCoeff(),
                                    (fine.pair - coarse.pair).cwiseAbs().maxCoeff()});
    if (change > 1e-3) throw GridTooCoarse("trapezoid refinement changes occupations by " + std::to_string(change));
    return fine;
}

std::vector<double> occupation_grid(const SystemParams& p, const KernelPair& k, int points_per_segment)
{
    const double cutoff = std::min(k.photonic.cutoff, k.excitonic.cutoff);
    const double eps = 1e-8 * cutoff;
    const auto c = resonance_centers(p, k);
    const auto g = resonance_widths(p, k);
    const double mid = 0.5 * (c[0] + c[1]);
    // The kernel transforms have log singularities at 0 and at the cutoff.
    const double low = 0.25 * c[0], high = 0.5 * cutoff;
    std::vector<double> pos, tail;
    geometric_points(eps, low, points_per_segment / 4, pos);
    sinh_points(low, mid, c[0], g[0], points_per_segment, pos);
    sinh_points(mid, high, c[1], g[1], points_per_segment, pos);
    geometric_points(eps, cutoff - high, points_per_segment / 4, tail);
    for (auto it = tail.rbegin(); it != tail.rend(); ++it) pos.push_back(cutoff - *it);
    std::vector<double> out;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back(-*it);
    out.insert(out.end(), pos.begin(), pos.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> spectrum_grid(const SystemParams& p, const KernelPair& k, double lo, double hi, int points)
{
    if (!(hi > lo) || points < 8) throw InvalidParams("spectrum grid needs hi > lo and at least 8 points");
    const double gamma = std::max({k.photonic.gamma, k.excitonic.gamma, 1e-6});
    const auto c = resonance_centers(p, k);
    const int uniform = points - 2 * (points / 4);
    std::vector<double> out;
    for (int i = 0; i < uniform; ++i) out.push_back(lo + (hi - lo) * i / (uniform - 1));
    for (int j = 0; j < 2; ++j) {
        const double a = std::max(lo, c[j] - 5 * gamma), b = std::min(hi, c[j] + 5 * gamma);
        if (b > a) tangent_points(a, b, c[j], gamma / 2, points / 4, out);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace polariton
