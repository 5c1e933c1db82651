#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "polariton/fano.hpp"

using namespace polariton;
using cd = std::complex<double>;
constexpr double pi = oracle::pi;

namespace {

KernelSpec flat(double gamma, double cutoff = 1e3) { return {Channel::photonic, KernelShape::flat, gamma, cutoff}; }

// Principal value of int_0^cutoff dv / (v - w) by symmetric excision around w
// and adaptive quadrature of the regular remainder.
double pv_oracle(double w, double cutoff)
{
    const double r = std::min(w, cutoff - w);
    // int_{w-r}^{w+r} dv/(v-w) vanishes by symmetry; the pieces outside are regular.
    const double left = oracle::integrate([&](double v) { return cd(1.0 / (v - w)); }, 0.0, w - r).real();
    const double right = oracle::integrate([&](double v) { return cd(1.0 / (v - w)); }, w + r, cutoff).real();
    return left + right;
}

} // namespace

TEST_CASE("zeta: no coupling gives 1")
{
    for (double w : {0.3, 1.0, 7.0}) CHECK(compute_zeta(flat(0.0), 1.0, w) == cd(1.0, 0.0));
}

TEST_CASE("zeta: imaginary part on the band is the delta-function term")
{
    // Sign follows the displayed zeta with w' - w + i0 in the denominator.
    for (double g : {1e-3, 1e-2, 1e-1})
        for (double w : {0.01, 1.0, 500.0}) CHECK(compute_zeta(flat(g), 1.0, w).imag() == doctest::Approx(pi * (g / (2 * pi))).epsilon(1e-14));
    CHECK(compute_zeta(flat(1e-2), 1.0, -0.5).imag() == 0.0);
    CHECK(compute_zeta(flat(1e-2), 1.0, 1500.0).imag() == 0.0);
}

TEST_CASE("zeta: real part against a principal-value quadrature oracle")
{
    const double g = 1e-2, cutoff = 1e3;
    for (double w : {1.0, 0.4, 2.4}) {
        const double want = 1.0 - g / (2 * pi) * pv_oracle(w, cutoff);
        CHECK(std::abs(compute_zeta(flat(g, cutoff), 1.0, w).real() - want) < 1e-8);
    }
}

TEST_CASE("zeta: band edges are singular")
{
    CHECK_THROWS_AS(compute_zeta(flat(1e-2), 1.0, 0.0), SingularFrequency);
    CHECK_THROWS_AS(compute_zeta(flat(1e-2), 1.0, 1e3), SingularFrequency);
}

TEST_CASE("weight: normalization across three coupling strengths")
{
    for (double g : {1e-3, 1e-2, 1e-1}) {
        const KernelSpec k = flat(g);
        const FanoCoefficients f = spectral_weight(k, 1.0, fano_grid(k, 1.0));
        CHECK(std::abs(f.normalization - 1) < 1e-3);
        CHECK(*std::min_element(f.weight.begin(), f.weight.end()) >= 0.0);
    }
}

TEST_CASE("weight: normalization against adaptive quadrature of the same closed form")
{
    const double g = 1e-2;
    const KernelSpec k = flat(g);
    const double kappa2 = g / (2 * pi);
    auto w2 = [&](double w) {
        const double re = w - 1.0 - kappa2 * std::log(std::abs(w / (1e3 - w)));
        return cd(kappa2 / (re * re + std::pow(pi * kappa2, 2)));
    };
    const double c = 1.0 * compute_zeta(k, 1.0, 1.0).real();
    double total = 0;
    for (auto [a, b] : {std::pair{1e-12, c - 0.5}, {c - 0.5, c - 0.05}, {c - 0.05, c}, {c, c + 0.05},
                        {c + 0.05, c + 0.5}, {c + 0.5, 10.0}, {10.0, 1e3 - 1e-9}})
        total += oracle::integrate(w2, a, b, 1e-12).real();
    const FanoCoefficients f = spectral_weight(k, 1.0, fano_grid(k, 1.0, 16000));
    CHECK(std::abs(f.normalization - total) < 1e-5);
    CHECK(std::abs(total - 1) < 1e-6);
}

TEST_CASE("weight: small coupling gives a Lorentzian of half-width Gamma/2")
{
    const double g = 1e-3;
    const KernelSpec k = flat(g);
    const FanoCoefficients f = spectral_weight(k, 1.0, fano_grid(k, 1.0));
    const auto peak = std::max_element(f.weight.begin(), f.weight.end());
    const double top = *peak;
    // Half-maximum crossings on both sides, linearly interpolated.
    const size_t ip = size_t(peak - f.weight.begin());
    size_t lo = ip, hi = ip;
    while (f.weight[lo] > top / 2) --lo;
    while (f.weight[hi] > top / 2) ++hi;
    auto cross = [&](size_t i, size_t j) {
        return f.omega[i] + (top / 2 - f.weight[i]) * (f.omega[j] - f.omega[i]) / (f.weight[j] - f.weight[i]);
    };
    const double fwhm = cross(hi, hi - 1) - cross(lo, lo + 1);
    CHECK(std::abs(fwhm / 2 - g / 2) < 0.05 * g / 2);
}

TEST_CASE("weight: first moment tends to the cavity frequency")
{
    for (double g : {1e-3, 1e-2}) {
        const KernelSpec k = flat(g);
        const FanoCoefficients f = spectral_weight(k, 1.0, fano_grid(k, 1.0));
        CHECK(std::abs(f.first_moment - 1.0) < 5 * g);
    }
}

TEST_CASE("weight: degenerate and under-resolved inputs")
{
    CHECK_THROWS_AS(spectral_weight(flat(0.0), 1.0, {0.5, 1.0, 1.5}), InvalidParams);
    std::vector<double> coarse;
    for (int i = 1; i < 200; ++i) coarse.push_back(0.01 * i);
    CHECK_THROWS_AS(spectral_weight(flat(1e-2), 1.0, coarse), GridTooCoarse);
}

TEST_CASE("ground reservoir correlation: phase-independent part at zero delay")
{
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    const PolaritonBasis b = diagonalize_polaritons(resonant_params());
    const auto c = ground_state_reservoir_correlation(b, k, {0.0});
    const cd g0 = kernel_time(k.photonic, 0.0);
    CHECK(std::abs(c.number[0] - g0 * 0.207) < 2e-3 * std::abs(g0));
}

TEST_CASE("ground reservoir correlation: uncoupled system gives zero")
{
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    const PolaritonBasis b = diagonalize_polaritons(SystemParams{1, 1.3, 0, 0});
    const auto c = ground_state_reservoir_correlation(b, k, {0.0, 0.3, 2.0});
    for (size_t i = 0; i < 3; ++i) {
        CHECK(c.number[i] == cd(0));
        CHECK(c.anomalous[i] == cd(0));
    }
}

TEST_CASE("ground reservoir correlation matches the squeezed reservoir correlations")
{
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    const PolaritonBasis b = diagonalize_polaritons(resonant_params(0.7));
    const ReservoirCorrelations sq = squeezed_ground_correlations(b, k);
    const std::vector<double> tau{-3.1, -0.2, 0.0, 0.05, 0.7, 4.0};
    const auto c = ground_state_reservoir_correlation(b, k, tau);
    for (size_t i = 0; i < tau.size(); ++i) {
        // <X(0) Y(tau)> = <X(-tau) Y(0)>
        CHECK(std::abs(c.number[i] - sq.value(field_unit(2), field_unit(0), -tau[i])) < 1e-12);
        CHECK(std::abs(c.anomalous[i] - sq.value(field_unit(0), field_unit(0), -tau[i])) < 1e-12);
        CHECK(std::abs(c.cross[i] - sq.value(field_unit(3), field_unit(0), -tau[i])) < 1e-12);
    }
}
