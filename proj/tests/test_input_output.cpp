#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "polariton/input_output.hpp"
#include "polariton/master.hpp"

using namespace polariton;
using cd = std::complex<double>;
constexpr double pi = oracle::pi;

namespace {

const cd I(0, 1);

Eigen::Matrix4cd as_dense(const Matrix4cd& m) { return m; }

// det(M(z) - z) continued into the complex plane. Above the real axis the
// half-line transforms are Laplace transforms; below it the photonic and
// excitonic insertions move to the second sheet across the band (+Gamma).
cd response_det(const SystemParams& p, const KernelPair& k, cd z)
{
    auto plus = [&](const KernelSpec& s) {
        cd g = kernel_laplace(s, I * z);
        if (z.imag() < 0 && z.real() > 0 && z.real() < s.cutoff) g += s.gamma;
        return g;
    };
    auto mirror = [&](const KernelSpec& s) { return std::conj(kernel_laplace(s, -I * std::conj(z))); };
    const Matrix4cd m = coefficient_matrix(p, plus(k.photonic), plus(k.excitonic), mirror(k.photonic),
                                           mirror(k.excitonic));
    return (m - z * Matrix4cd::Identity()).determinant();
}

// Winding number of det(M(z) - z) around the rectangle [x0, x1] x [y0, y1].
int zero_count(const SystemParams& p, const KernelPair& k, double x0, double x1, double y0, double y1)
{
    const std::array<cd, 5> corner{cd(x0, y0), cd(x1, y0), cd(x1, y1), cd(x0, y1), cd(x0, y0)};
    double phase = 0;
    cd prev = response_det(p, k, corner[0]);
    for (int side = 0; side < 4; ++side)
        for (int i = 1; i <= 4000; ++i) {
            const cd z = corner[side] + (corner[side + 1] - corner[side]) * (i / 4000.0);
            const cd f = response_det(p, k, z);
            phase += std::arg(f / prev);
            prev = f;
        }
    return int(std::lround(phase / (2 * pi)));
}

double max_abs(const std::vector<double>& v)
{
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

TEST_CASE("M: closed-system limit is the commutator matrix")
{
    for (const SystemParams p : {resonant_params(), resonant_params(0.3), SystemParams{1, 1.4, 0.6, 0.5}}) {
        const KernelPair k = KernelPair::flat(0, 0, 1e3);
        const Eigen::Matrix4cd want = oracle::bogoliubov_by_commutators(p.omega_c, p.omega_x, p.rabi, p.diamag);
        CHECK((as_dense(build_M(p, k, 0.7)) - want.transpose()).norm() < 1e-14);
    }
}

TEST_CASE("M: photonic diagonal entry at w = 1")
{
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    const Matrix4cd m = build_M(resonant_params(), k, 1.0);
    const cd g = kernel_halfline_fourier(k.photonic, 1.0);
    CHECK(std::abs(m(0, 0) - (3.0 - I * g)) < 1e-15);
    CHECK(g.real() == doctest::Approx(0.5e-2).epsilon(1e-12));
    CHECK_THROWS_AS(build_M(resonant_params(), k, 0.0), SingularFrequency);
}

TEST_CASE("response: eigen-decomposition, inverse identity and closed-system limit")
{
    const SystemParams p = resonant_params();
    const PolaritonBasis b = diagonalize_polaritons(p);
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    for (double w : {0.05, 0.414, 1.0, 2.414, 4.0, -0.7}) {
        const FrequencyResponse r = frequency_response(p, k, w);
        CHECK((r.M * r.V - r.V * r.eigvals.asDiagonal()).norm() < 1e-10);
        CHECK((r.V.inverse() * r.V - Matrix4cd::Identity()).norm() < 1e-10);
        CHECK(r.L.allFinite());
        // Decaying branches for the annihilator pair on the band.
        if (w > 0) {
            CHECK(r.eigvals(0).imag() < 0);
            CHECK(r.eigvals(1).imag() < 0);
        }
    }
    const KernelPair tiny = KernelPair::flat(1e-9, 1e-9, 1e3);
    const FrequencyResponse r = frequency_response(p, tiny, 1.3);
    const Vector4cd want(b[0].omega, b[1].omega, -b[0].omega, -b[1].omega);
    CHECK((r.eigvals - want).norm() < 1e-6);
}

TEST_CASE("response: output coefficients reduce to V without photonic loss")
{
    const KernelPair k = KernelPair::flat(0, 1e-2, 1e3);
    for (double w : {0.3, 1.2, 3.0}) {
        const FrequencyResponse r = frequency_response(resonant_params(), k, w);
        for (int j = 0; j < 2; ++j) {
            CHECK(r.T[j] == r.V(0, j));
            CHECK(r.S[j] == r.V(0, j + 2));
        }
    }
}

TEST_CASE("response: lower-polariton channel dominates the scattered part at wL")
{
    // The full T_j stay O(1) (the channel is close to unitary); the cavity-mediated
    // part G_c L_1j is where the resonance shows.
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    const FrequencyResponse r = frequency_response(resonant_params(), k, 0.414);
    const cd g = kernel_fullline_fourier(k.photonic, 0.414);
    CHECK(std::abs(g * r.L(0, 0)) > 10 * std::abs(g * r.L(0, 1)));
}

TEST_CASE("response: mirrored response is the direct one at -w")
{
    const SystemParams p = resonant_params();
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    const FrequencyResponse r = frequency_response(p, k, 0.8);
    const FrequencyResponse m = mirrored(r, k);
    CHECK((m.M - build_M(p, k, -0.8)).norm() < 1e-14);
    CHECK((m.M * m.V - m.V * m.eigvals.asDiagonal()).norm() < 1e-10);
}

TEST_CASE("response: branch continuity over a dense grid")
{
    const SystemParams p = resonant_params();
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    std::vector<double> grid;
    for (int i = 0; i < 2000; ++i) grid.push_back(0.01 + i * (5.0 - 0.01) / 1999);
    const auto rs = track_branches(p, k, grid);
    REQUIRE(rs.size() == grid.size());
    const double h = grid[1] - grid[0];
    for (size_t i = 2; i < rs.size(); ++i)
        for (int j = 0; j < 4; ++j) {
            const double jump = std::abs(rs[i].eigvals(j) - rs[i - 1].eigvals(j));
            const double slope = std::abs(rs[i - 1].eigvals(j) - rs[i - 2].eigvals(j)) / h;
            CHECK(jump <= 10 * h * std::max(slope, 1e-3));
        }
}

TEST_CASE("response: no poles above the real axis; closed-system count is two")
{
    const SystemParams p = resonant_params();
    CHECK(zero_count(p, KernelPair::flat(0, 0, 1e3), 0.05, 4.0, -0.5, 0.5) == 2);
    CHECK(zero_count(p, KernelPair::flat(1e-2, 1e-2, 1e3), 0.05, 4.0, 1e-3, 1.0) == 0);
    CHECK(zero_count(p, KernelPair::flat(1e-1, 1e-1, 1e3), 0.05, 4.0, 1e-3, 1.0) == 0);
}

TEST_CASE("response: pole near wL against the rotating-wave decay rate")
{
    const SystemParams p = resonant_params();
    const PolaritonBasis b = diagonalize_polaritons(p);
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    // Second-sheet continuation agrees with the real-axis transform from below.
    const cd on_axis = kernel_halfline_fourier(k.photonic, 0.5);
    CHECK(std::abs(kernel_laplace(k.photonic, I * cd(0.5, -1e-9)) + k.photonic.gamma - on_axis) < 1e-7);

    cd z = b[0].omega;
    for (int it = 0; it < 50; ++it) {
        const double h = 1e-7;
        const cd f = response_det(p, k, z);
        const cd df = (response_det(p, k, z + h) - response_det(p, k, z - h)) / (2 * h);
        z -= f / df;
        if (std::abs(f / df) < 1e-14) break;
    }
    CHECK(std::abs(response_det(p, k, z)) < 1e-10);
    const double rate = (0.01 * std::norm(b[0].w) + 0.01 * std::norm(b[0].x)) / 2;
    CHECK(z.imag() < 0);
    CHECK(std::abs(-z.imag() - rate) < 0.2 * rate);
    CHECK(std::abs(z.real() - b[0].omega) < 0.05);
}

TEST_CASE("input correlations: replaced moments tend to the closed ground state")
{
    const SystemParams p = resonant_params();
    const PolaritonBasis b = diagonalize_polaritons(p);
    const KernelPair k = KernelPair::flat(1e-9, 1e-9, 1e3);
    const ReservoirCorrelations sq = squeezed_ground_correlations(b, k);
    for (double w : {0.3, 1.7}) {
        const FrequencyResponse r = frequency_response(p, k, w);
        CHECK((input_moments(sq, r, true) - ground_state_moments(b).k).norm() < 1e-6);
    }
}

TEST_CASE("input correlations: replacement changes the moments at order Gamma")
{
    const SystemParams p = resonant_params();
    const PolaritonBasis b = diagonalize_polaritons(p);
    std::vector<double> diff;
    for (double g : {4e-3, 2e-3, 1e-3}) {
        const KernelPair k = KernelPair::flat(g, g, 1e3);
        const ReservoirCorrelations sq = squeezed_ground_correlations(b, k);
        const FrequencyResponse r = frequency_response(p, k, 1.0);
        diff.push_back((input_moments(sq, r, true) - input_moments(sq, r, false)).norm());
    }
    CHECK(diff[0] / diff[1] == doctest::Approx(2).epsilon(0.1));
    CHECK(diff[1] / diff[2] == doctest::Approx(2).epsilon(0.1));
    CHECK(diff[0] < 4e-3 * 10);
}

TEST_CASE("input correlations: vacuum reservoirs fill only the annihilator block")
{
    const SystemParams p = resonant_params();
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    const FrequencyResponse r = frequency_response(p, k, 0.9);
    const InputCorrelationMatrix c = build_input_correlations(vacuum_correlations(k), r);
    const Matrix4cd t = c.total();
    CHECK(t.topLeftCorner<2, 2>().norm() > 1e-3);
    CHECK(t.topRightCorner<2, 2>().norm() == 0);
    CHECK(t.bottomRows<2>().norm() == 0);
}

TEST_CASE("output spectrum: squeezed ground input is not detected")
{
    const SystemParams p = resonant_params();
    const PolaritonBasis b = diagonalize_polaritons(p);
    for (double g : {1e-3, 1e-2, 5e-2}) {
        const KernelPair k = KernelPair::flat(g, g, 1e3);
        const auto grid = spectrum_grid(p, k, 0.01, 5, 1024);
        const SpectralResult s = ordered_output_spectrum(p, squeezed_ground_correlations(b, k), grid);
        CHECK(s.max_abs() <= 1e-10 * g);
    }
}

TEST_CASE("output spectrum: no photonic loss means no output")
{
    const SystemParams p = resonant_params();
    const KernelPair k = KernelPair::flat(0, 1e-2, 1e3);
    const auto grid = spectrum_grid(p, KernelPair::flat(1e-2, 1e-2, 1e3), 0.01, 5, 256);
    CHECK(max_abs(unordered_output_spectrum(p, vacuum_correlations(k), grid)) == 0);
    const ReservoirCorrelations sq = squeezed_ground_correlations(diagonalize_polaritons(p), k);
    CHECK(ordered_output_spectrum(p, sq, grid).max_abs() < 1e-15);
}

TEST_CASE("output spectrum: vacuum input gives vacuum output, yet the cavity is excited")
{
    const SystemParams p = resonant_params();
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    const ReservoirCorrelations vc = vacuum_correlations(k);
    const auto grid = spectrum_grid(p, k, 0.01, 5, 1024);
    CHECK(max_abs(unordered_output_spectrum(p, vc, grid)) <= 1e-12);
    const IntracavityOccupations o = intracavity_occupations(p, vc, occupation_grid(p, k));
    CHECK(o.number(0, 0).real() > 1e-4);
    CHECK(o.number(1, 1).real() > 0);
}

TEST_CASE("output spectrum: uncoupled cavity is a unitary channel")
{
    const SystemParams p{1, 1.3, 0, 0};
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    for (double w : {0.5, 0.99, 1.01, 3.0}) {
        const FrequencyResponse r = frequency_response(p, k, w);
        double total = 0;
        for (int j = 0; j < 2; ++j) total += std::norm(r.T[j]) - std::norm(r.S[j]);
        CHECK(total == doctest::Approx(1).epsilon(1e-10));
    }
}

TEST_CASE("occupations: squeezed ground input leaves the polaritons empty")
{
    const SystemParams p = resonant_params();
    const PolaritonBasis b = diagonalize_polaritons(p);
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    const IntracavityOccupations o = intracavity_occupations(p, squeezed_ground_correlations(b, k), occupation_grid(p, k));
    CHECK(o.dressed_number.norm() < 1e-8);
    CHECK(o.dressed_pair.norm() < 1e-8);
    const MomentMatrix g = ground_state_moments(b);
    CHECK(std::abs(o.moments.photon_number() - g.photon_number()) < 5e-3);
    CHECK(std::abs(o.moments.excitation_number() - g.excitation_number()) < 5e-3);
}

TEST_CASE("occupations: uncoupled system with vacuum input stays empty")
{
    const SystemParams p{1, 1.3, 0, 0};
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    const IntracavityOccupations o = intracavity_occupations(p, vacuum_correlations(k), occupation_grid(p, k));
    CHECK(std::abs(o.moments.photon_number()) < 1e-12);
    CHECK(std::abs(o.moments.excitation_number()) < 1e-12);
    CHECK(o.number.norm() < 1e-12);
}

TEST_CASE("occupations: under-resolved grid is rejected")
{
    const SystemParams p = resonant_params();
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    std::vector<double> coarse;
    for (int i = -40; i <= 40; ++i)
        if (i != 0) coarse.push_back(0.1 * i + 0.013);
    CHECK_THROWS_AS(intracavity_occupations(p, vacuum_correlations(k), coarse), GridTooCoarse);
}

TEST_CASE("occupations: cross-formalism agreement with the master equation")
{
    const SystemParams p = resonant_params();
    const KernelPair k = KernelPair::flat(1e-2, 1e-2, 1e3);
    const FockModel m = build_fock_model(p, {8, 8, FockBasis::polariton});
    const auto grid = occupation_grid(p, k);

    SUBCASE("squeezed ground reservoirs, every moment")
    {
        const ReservoirCorrelations sq = squeezed_ground_correlations(m.basis, k);
        const Observables ob = observe(m, steady_state(build_filtered_dissipator(m, sq)));
        const IntracavityOccupations o = intracavity_occupations(p, sq, grid);
        CHECK(std::abs(o.moments.photon_number() - ob.n_photon) < 5e-3);
        CHECK(std::abs(o.moments.excitation_number() - ob.n_excitation) < 5e-3);
        CHECK(std::abs(o.dressed_number(0, 0).real() - ob.n_lower) < 5e-3);
        CHECK(std::abs(o.dressed_number(1, 1).real() - ob.n_upper) < 5e-3);
    }
    SUBCASE("vacuum reservoirs, photon number")
    {
        const ReservoirCorrelations vc = vacuum_correlations(k);
        const Observables ob = observe(m, steady_state(build_filtered_dissipator(m, vc)));
        const IntracavityOccupations o = intracavity_occupations(p, vc, grid);
        CHECK(std::abs(o.moments.photon_number() - ob.n_photon) < 5e-3);
    }
}
