#include "polariton/kernels.hpp"

#include <cmath>
#include <numbers>

namespace polariton {

namespace {

constexpr double kPi = std::numbers::pi;
const cdouble kI(0.0, 1.0);

// Straight-segment integral of dz/z from z0 to z1 (never winds past pi).
cdouble log_ratio(cdouble z1, cdouble z0) { return std::log(z1 / z0); }

// int_lo^hi dnu / (w - nu + i0)
cdouble resolvent_integral(const Band& b, double w)
{
    const double pv = std::log(std::abs((w - b.lo) / (w - b.hi)));
    const double inside = (w > b.lo && w < b.hi) ? 1.0 : 0.0;
    return {pv, -kPi * inside};
}

void check_regular(const KernelSpec& k, double w)
{
    const double eps = 1e-9 * k.cutoff;
    const Band b = band_of(k);
    if (std::abs(w - b.lo) < eps || std::abs(w - b.hi) < eps)
        throw SingularFrequency("kernel transform evaluated at a band edge");
}

} // namespace

void validate(const KernelSpec& k)
{
    if (!std::isfinite(k.gamma) || k.gamma < 0) throw InvalidParams("kernel gamma must be >= 0");
    if (!std::isfinite(k.cutoff) || k.cutoff <= 0) throw InvalidParams("kernel cutoff must be > 0");
}

cdouble band_time(const Band& b, double tau)
{
    const double scale = b.gamma / (2 * kPi);
    const double width = b.hi - b.lo;
    const double x = width * tau;
    // exp(-i lo tau) (1 - exp(-i x)) / (i tau), written without cancellation
    cdouble core;
    if (std::abs(x) < 1e-8) {
        core = width * cdouble(1.0, -x / 2);
    } else {
        const double h = std::sin(x / 2);
        core = cdouble(std::sin(x), -2 * h * h) / tau;
    }
    return scale * std::exp(-kI * (b.lo * tau)) * core;
}

cdouble band_halfline(const Band& b, double w)
{
    return kI * (b.gamma / (2 * kPi)) * resolvent_integral(b, w);
}

cdouble band_laplace(const Band& b, cdouble lambda)
{
    return -kI * (b.gamma / (2 * kPi)) * log_ratio(kI * b.hi - lambda, kI * b.lo - lambda);
}

cdouble band_double_transform(const Band& b, double w, cdouble lambda)
{
    const cdouble bracket = resolvent_integral(b, w) + log_ratio(b.hi + kI * lambda, b.lo + kI * lambda);
    return (b.gamma / (2 * kPi)) * bracket / (w + kI * lambda);
}

cdouble kernel_time(const KernelSpec& k, double tau) { return band_time(band_of(k), tau); }

cdouble kernel_halfline_fourier(const KernelSpec& k, double w)
{
    check_regular(k, w);
    return band_halfline(band_of(k), w);
}

double kernel_fullline_fourier(const KernelSpec& k, double w)
{
    const Band b = band_of(k);
    return (w > b.lo && w < b.hi) ? k.gamma : 0.0;
}

cdouble kernel_laplace(const KernelSpec& k, cdouble lambda) { return band_laplace(band_of(k), lambda); }

cdouble kernel_double_transform(const KernelSpec& k, double w, cdouble lambda)
{
    check_regular(k, w);
    return band_double_transform(band_of(k), w, lambda);
}

cdouble KernelSeries::operator()(const KernelPair& k, double s) const
{
    cdouble acc = 0;
    for (const auto& t : terms) {
        const cdouble g = kernel_time(k[t.channel], s);
        acc += t.coef * (t.conjugate ? std::conj(g) : g);
    }
    return acc;
}

cdouble KernelSeries::transform(const KernelPair& k, double w) const
{
    cdouble acc = 0;
    for (const auto& t : terms) {
        if (t.coef == 0.0) continue;
        const cdouble g = t.conjugate ? std::conj(kernel_halfline_fourier(k[t.channel], -w))
                                      : kernel_halfline_fourier(k[t.channel], w);
        acc += t.coef * g;
    }
    return acc;
}

KernelSeries KernelSeries::conjugated() const
{
    KernelSeries out = *this;
    for (auto& t : out.terms) {
        t.coef = std::conj(t.coef);
        t.conjugate = !t.conjugate;
    }
    return out;
}

void KernelSeries::add(const KernelSeries& o, cdouble scale)
{
    for (auto t : o.terms) {
        t.coef *= scale;
        bool merged = false;
        for (auto& u : terms) {
            if (u.channel == t.channel && u.conjugate == t.conjugate) {
                u.coef += t.coef;
                merged = true;
                break;
            }
        }
        if (!merged) terms.push_back(t);
    }
}

KernelSeries ReservoirCorrelations::elementary(int alpha, int beta, int sign) const
{
    const bool cr_a = alpha >= 2, cr_b = beta >= 2;
    const cdouble m = moments.product(alpha, beta);
    Channel ch;
    bool conj;
    if (sign > 0) {
        ch = Channel(alpha & 1);
        conj = cr_a;
    } else if (cr_a != cr_b) {
        ch = Channel(alpha & 1);
        conj = !cr_a;
    } else {
        ch = Channel(beta & 1);
        conj = cr_a;
    }
    return KernelSeries{{{m, ch, conj}}};
}

KernelSeries ReservoirCorrelations::correlation(const Vector4c<double>& u, const Vector4c<double>& v,
                                                int sign) const
{
    KernelSeries out;
    for (int a = 0; a < 4; ++a) {
        if (u(a) == 0.0) continue;
        for (int b = 0; b < 4; ++b) {
            if (v(b) == 0.0) continue;
            out.add(elementary(a, b, sign), u(a) * v(b));
        }
    }
    return out;
}

cdouble ReservoirCorrelations::value(const Vector4c<double>& u, const Vector4c<double>& v, double tau) const
{
    return tau >= 0 ? correlation(u, v, +1)(kernels, tau) : correlation(u, v, -1)(kernels, -tau);
}

ReservoirCorrelations vacuum_correlations(const KernelPair& k)
{
    validate(k.photonic);
    validate(k.excitonic);
    return {ReservoirMode::vacuum, bare_vacuum_moments(), k};
}

ReservoirCorrelations squeezed_ground_correlations(const PolaritonBasis& basis, const KernelPair& k)
{
    validate(k.photonic);
    validate(k.excitonic);
    return {ReservoirMode::squeezed_ground, ground_state_moments(basis), k};
}

Vector4c<double> field_unit(int alpha)
{
    Vector4c<double> e = Vector4c<double>::Zero();
    e(alpha) = 1.0;
    return e;
}

PolaritonCorrelations polariton_basis_correlations(const ReservoirCorrelations& corr, const PolaritonBasis& basis)
{
    return {corr, basis};
}

} // namespace polariton
