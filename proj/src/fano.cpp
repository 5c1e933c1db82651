#include "polariton/fano.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "polariton/spectrum.hpp"

namespace polariton {

namespace {

constexpr double kPi = std::numbers::pi;

double peak_center(const KernelSpec& k, double omega_c)
{
    return omega_c * compute_zeta(k, omega_c, omega_c).real();
}

} // namespace

cdouble compute_zeta(const KernelSpec& k, double omega_c, double omega)
{
    validate(k);
    if (!(omega_c > 0)) throw InvalidParams("omega_c must be > 0");
    const Band b = band_of(k);
    const double eps = 1e-9 * k.cutoff;
    if (std::abs(omega - b.lo) < eps || std::abs(omega - b.hi) < eps)
        throw SingularFrequency("zeta evaluated at a band edge");
    const double density = k.gamma / (2 * kPi);
    const double pv = std::log(std::abs((omega - b.lo) / (omega - b.hi)));
    const double inside = (omega > b.lo && omega < b.hi) ? 1.0 : 0.0;
    return 1.0 + density / omega_c * cdouble(pv, kPi * inside);
}

FanoCoefficients spectral_weight(const KernelSpec& k, double omega_c, const std::vector<double>& omega)
{
    validate(k);
    if (k.gamma == 0) throw InvalidParams("Gamma = 0: the weight degenerates to a delta function");
    if (omega.size() < 2) throw InvalidParams("weight grid needs at least 2 points");
    const Band b = band_of(k);
    const double kappa = std::sqrt(k.gamma / (2 * kPi));

    const double center = peak_center(k, omega_c), half = 0.5 * k.gamma;
    int resolved = 0;
    for (double w : omega)
        if (std::abs(w - center) <= half) ++resolved;
    if (resolved < 20)
        throw GridTooCoarse("only " + std::to_string(resolved) + " points within the peak half-width");

    FanoCoefficients out;
    out.omega = omega;
    for (double w : omega) {
        const cdouble z = compute_zeta(k, omega_c, w);
        const double coupling = (w > b.lo && w < b.hi) ? kappa : 0.0;
        const cdouble u = coupling / (w - omega_c * z);
        out.zeta.push_back(z);
        out.u.push_back(u);
        out.weight.push_back(std::norm(u));
    }
    for (size_t i = 1; i < omega.size(); ++i) {
        const double h = omega[i] - omega[i - 1];
        out.normalization += 0.5 * h * (out.weight[i] + out.weight[i - 1]);
        out.first_moment += 0.5 * h * (omega[i] * out.weight[i] + omega[i - 1] * out.weight[i - 1]);
    }
    if (std::abs(out.normalization - 1) > 1e-2)
        throw GridTooCoarse("weight normalization " + std::to_string(out.normalization));
    return out;
}

std::vector<double> fano_grid(const KernelSpec& k, double omega_c, int points)
{
    validate(k);
    if (k.gamma == 0) throw InvalidParams("Gamma = 0: the weight degenerates to a delta function");
    if (points < 64) throw InvalidParams("fano grid needs at least 64 points");
    const Band b = band_of(k);
    const double eps = 1e-8 * k.cutoff;
    const double center = peak_center(k, omega_c), width = 0.5 * k.gamma;
    const double low = b.lo + 0.5 * (center - b.lo), high = center + 0.5 * (b.hi - center);
    const int edge = points / 8;
    std::vector<double> out, tail;
    geometric_points(eps, low - b.lo, edge, tail);
    for (double d : tail) out.push_back(b.lo + d);
    out.pop_back();
    sinh_points(low, high, center, width, points - 2 * edge + 2, out);
    out.pop_back();
    tail.clear();
    geometric_points(eps, b.hi - high, edge, tail);
    for (auto it = tail.rbegin(); it != tail.rend(); ++it) out.push_back(b.hi - *it);
    return out;
}

GroundReservoirCorrelation ground_state_reservoir_correlation(const PolaritonBasis& basis, const KernelPair& k,
                                                              const std::vector<double>& tau)
{
    cdouble n = 0, anom = 0, cross = 0;
    for (int j = 0; j < 2; ++j) {
        n += std::norm(basis[j].y);
        anom -= std::conj(basis[j].w) * basis[j].y;
        cross += std::conj(basis[j].z) * basis[j].y;
    }
    GroundReservoirCorrelation out;
    out.tau = tau;
    for (double t : tau) {
        const cdouble gc = kernel_time(k.photonic, t);
        out.number.push_back(gc * n);
        // F_c commutes with itself at unequal times, so the anomalous part is even in tau.
        out.anomalous.push_back(kernel_time(k.photonic, std::abs(t)) * anom);
        out.cross.push_back(kernel_time(k.excitonic, t) * cross);
    }
    return out;
}

} // namespace polariton
