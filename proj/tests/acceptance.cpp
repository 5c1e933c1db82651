// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <unsupported/Eigen/FFT>

#include "oracles.hpp"
#include "polariton/fano.hpp"
#include "polariton/input_output.hpp"
#include "polariton/master.hpp"
#include "polariton/detection.hpp"
#include "polariton/scenario.hpp"

using namespace polariton;
using cd = std::complex<double>;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    // Records one check; the message is kept either way.
    void check(bool ok, const std::string& what)
    {
        pass = pass && ok;
        detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
    }
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

Scenario figure(const char* name) { return load_scenario(std::string(SCENARIO_DIR) + "/" + name + ".scenario"); }

const KernelPair kFigure = KernelPair::flat(1e-2, 1e-2, 1e3);

// Frequency (units of wc) of the largest spectral peak above `floor` of a
// uniformly sampled signal, Hann-windowed and zero-padded eightfold.
double dominant_frequency(std::vector<double> x, double dt, double floor)
{
    const size_t n = x.size();
    for (size_t i = 0; i < n; ++i) x[i] *= 0.5 - 0.5 * std::cos(2 * oracle::pi * double(i) / double(n - 1));
    x.resize(8 * n, 0.0);
    Eigen::FFT<double> fft;
    std::vector<cd> spec;
    fft.fwd(spec, x);
    const double df = 1.0 / (double(x.size()) * dt);
    size_t best = 0;
    for (size_t k = 1; k < x.size() / 2; ++k)
        if (k * df > floor && (best == 0 || std::abs(spec[k]) > std::abs(spec[best]))) best = k;
    return best * df;
}

Outcome eigenfrequencies()
{
    Outcome o;
    const PolaritonBasis b = diagonalize_polaritons(resonant_params());
    o.check(std::abs(b[kLower].omega - 0.414) < 1e-3, "wL " + num(b[kLower].omega));
    o.check(std::abs(b[kUpper].omega - 2.414) < 1e-3, "wU " + num(b[kUpper].omega));
    return o;
}

Outcome virtual_photons()
{
    Outcome o;
    const MomentMatrix g = ground_state_moments(diagonalize_polaritons(resonant_params()));
    o.check(std::abs(g.photon_number() - 0.207) < 2e-3, "<a'a> " + num(g.photon_number()));
    o.check(std::abs(g.excitation_number() - 0.207) < 2e-3, "<b'b> " + num(g.excitation_number()));
    return o;
}

Outcome figure2()
{
    Outcome o;
    const Scenario s = figure("fig2");
    const FockModel m = build_fock_model(s.params, s.fock);
    const Generator g = build_filtered_dissipator(m, squeezed_ground_correlations(m.basis, s.kernels));
    const Trajectory tr = propagate(m, g, m.bare_vacuum(), s.time);
    const Observables& end = tr.obs.back();
    o.check(tr.t.back() >= 500 - 1e-9, "t " + num(tr.t.back()));
    o.check(end.n_lower + end.n_upper < 1e-2, "nL+nU " + num(end.n_lower + end.n_upper));
    o.check(std::abs(end.n_photon - 0.207) < 2e-2, "<a'a> " + num(end.n_photon));
    return o;
}

Outcome figure1()
{
    Outcome o;
    Scenario s = figure("fig1");
    const double dt = s.time.dt;
    std::vector<double> plateau;
    for (double gamma : {0.5e-2, 1e-2, 2e-2}) {
        s.kernels = KernelPair::flat(gamma, gamma, s.kernels.photonic.cutoff);
        const FockModel m = build_fock_model(s.params, s.fock);
        const Generator g = build_filtered_dissipator(m, vacuum_correlations(s.kernels));
        const Trajectory tr = propagate(m, g, m.ground_state(), {120, dt, 1, false});
        const Observables ss = observe(m, steady_state(g));
        plateau.push_back(ss.n_lower + ss.n_upper);
        const std::string tag = "G=" + num(gamma) + " ";

        // Upper and lower envelopes over consecutive 5-period windows never decrease.
        const size_t win = size_t(std::lround(5 / dt));
        for (int j = 0; j < 2; ++j) {
            auto n = [&](size_t i) { return j == 0 ? tr.obs[i].n_lower : tr.obs[i].n_upper; };
            const double top = j == 0 ? ss.n_lower : ss.n_upper;
            double prev_hi = -1, prev_lo = -1, worst = 0;
            for (size_t i = 0; i + win <= tr.t.size(); i += win) {
                double hi = -1e300, lo = 1e300;
                for (size_t q = i; q < i + win; ++q) {
                    hi = std::max(hi, n(q));
                    lo = std::min(lo, n(q));
                }
                if (prev_hi >= 0) worst = std::max({worst, prev_hi - hi, prev_lo - lo});
                prev_hi = hi;
                prev_lo = lo;
            }
            o.check(top > 0 && worst <= 1e-3 * top,
                    tag + (j == 0 ? "nL" : "nU") + " plateau " + num(top) + " envelope dip " + num(worst));
        }

        // Oscillation frequencies over the first 64 periods of the cavity.
        if (gamma == 1e-2) {
            const size_t n = size_t(std::lround(64 / dt));
            std::vector<double> lo, up;
            for (size_t i = 0; i < n; ++i) {
                lo.push_back(tr.obs[i].n_lower - ss.n_lower);
                up.push_back(tr.obs[i].n_upper - ss.n_upper);
            }
            const double fl = dominant_frequency(lo, dt, 0.3), fu = dominant_frequency(up, dt, 0.3);
            o.check(std::abs(fl / (2 * m.basis[kLower].omega) - 1) < 0.05,
                    tag + "nL peak " + num(fl) + " vs " + num(2 * m.basis[kLower].omega));
            o.check(std::abs(fu / (2 * m.basis[kUpper].omega) - 1) < 0.05,
                    tag + "nU peak " + num(fu) + " vs " + num(2 * m.basis[kUpper].omega));
        }
    }
    o.check(plateau[0] < plateau[1] && plateau[1] < plateau[2], "plateau grows with G");
    return o;
}

Outcome zero_detection_io()
{
    Outcome o;
    const SystemParams p = resonant_params();
    const PolaritonBasis b = diagonalize_polaritons(p);
    const auto grid = spectrum_grid(p, kFigure, 0.01, 5, 4096);
    const auto t0 = std::chrono::steady_clock::now();
    const SpectralResult r = ordered_output_spectrum(p, squeezed_ground_correlations(b, kFigure), grid);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double scale = ground_state_moments(b).k.cwiseAbs().maxCoeff();
    const double bound = 1e-10 * kFigure.photonic.gamma * scale;
    o.check(r.omega.size() == 4096, "points " + std::to_string(r.omega.size()));
    o.check(r.max_abs() <= bound, "max " + num(r.max_abs()) + " bound " + num(bound));
    o.check(secs < 60, "wall " + num(secs) + " s");
    return o;
}

Outcome zero_detection_master()
{
    Outcome o;
    const FockModel m = build_fock_model(resonant_params(), figure("fig2").fock);
    const ReservoirCorrelations sq = squeezed_ground_correlations(m.basis, kFigure);
    const Generator g = build_filtered_dissipator(m, sq);
    std::vector<double> omega;
    for (int i = 1; i <= 200; ++i) omega.push_back(0.025 * i);
    const SpectralResult r = output_detection_spectrum(m, g, steady_state(g), sq, omega);
    o.check(r.max_abs() <= 1e-3 * kFigure.photonic.gamma, "max " + num(r.max_abs()));
    return o;
}

Outcome vacuum_paradox()
{
    Outcome o;
    const SystemParams p = resonant_params();
    const ReservoirCorrelations vc = vacuum_correlations(kFigure);
    const auto out = unordered_output_spectrum(p, vc, spectrum_grid(p, kFigure, 0.01, 5, 2048));
    double worst = 0;
    for (double v : out) worst = std::max(worst, std::abs(v));
    o.check(worst <= 1e-12, "output " + num(worst));
    const IntracavityOccupations occ = intracavity_occupations(p, vc, occupation_grid(p, kFigure));
    for (int j = 0; j < 2; ++j) {
        const double n = occ.number(j, j).real();
        o.check(n > 1e-4, std::string(j == 0 ? "nL " : "nU ") + num(n));
    }
    return o;
}

Outcome cross_formalism()
{
    Outcome o;
    const SystemParams p = resonant_params();
    const FockModel m = build_fock_model(p, figure("fig2").fock);
    const ReservoirCorrelations sq = squeezed_ground_correlations(m.basis, kFigure);
    const BlockOp rho = steady_state(build_filtered_dissipator(m, sq));
    const Observables ob = observe(m, rho);
    const IntracavityOccupations io = intracavity_occupations(p, sq, occupation_grid(p, kFigure));
    const std::pair<const char*, double> diffs[] = {
        {"<a'a>", io.moments.photon_number() - ob.n_photon},
        {"<b'b>", io.moments.excitation_number() - ob.n_excitation},
        {"nL", io.number(0, 0).real() - ob.n_lower},
        {"nU", io.number(1, 1).real() - ob.n_upper},
    };
    for (const auto& [name, d] : diffs) o.check(std::abs(d) < 5e-3, std::string(name) + " " + num(d));
    // Full moment matrix for reference; its antinormal entries carry the
    // commutator defect of the replaced input moments.
    o.detail << "; (all K entries " << num((moments_of(m, rho).k - io.moments.k).cwiseAbs().maxCoeff()) << ")";
    return o;
}

Outcome oracles()
{
    Outcome o;
    // (a) Gaussian moments against Fock propagation, both figure scenarios.
    for (const char* name : {"fig1", "fig2"}) {
        const Scenario s = figure(name);
        const FockModel m = build_fock_model(s.params, s.fock);
        const bool sq = s.solver == Solver::master_squeezed;
        const ReservoirCorrelations corr =
            sq ? squeezed_ground_correlations(m.basis, s.kernels) : vacuum_correlations(s.kernels);
        const BlockOp rho0 = s.initial.kind == InitialState::bare_vacuum ? m.bare_vacuum() : m.ground_state();
        const Trajectory tr = propagate(m, build_filtered_dissipator(m, corr), rho0, {40, s.time.dt, 10, true});
        const MomentTrajectory gm = gaussian_moment_propagate(
            moments_of(m, rho0), s.params, m.basis, markov_coefficients(m.basis, corr, MarkovForm::nonlindblad), tr.t);
        double worst = 0;
        for (size_t i = 0; i < tr.t.size(); ++i)
            worst = std::max(worst, (moments_of(m, tr.states[i]).k - gm.moments[i].k).cwiseAbs().maxCoeff());
        o.check(worst < 1e-3, std::string("(a) ") + name + " " + num(worst));
    }
    // (b) Discretized total system, 60 modes per reservoir on a band of 10.
    {
        const double cutoff = 10;
        const KernelPair k = KernelPair::flat(1e-2, 1e-2, cutoff);
        const FockModel m = build_fock_model(resonant_params(), figure("fig1").fock);
        const Trajectory tr = propagate(m, build_filtered_dissipator(m, vacuum_correlations(k)), m.ground_state(),
                                        {5, 0.05, 1, false});
        const auto exact = oracle::total_system_photon_number(1, 1, 1, 1, 1e-2, 1e-2, cutoff, 60,
                                                              ground_state_moments(m.basis).k, 0.05, 100);
        double worst = 0;
        for (size_t i = 0; i < tr.t.size() && i < exact.size(); ++i)
            worst = std::max(worst, std::abs(tr.obs[i].n_photon - exact[i]));
        o.check(exact.size() == tr.t.size() && worst < 2e-3, "(b) " + num(worst));
    }
    // (c) Fano weight normalization.
    for (double gamma : {1e-3, 1e-2, 1e-1}) {
        const KernelSpec k{Channel::photonic, KernelShape::flat, gamma, 1e3};
        const FanoCoefficients f = spectral_weight(k, 1.0, fano_grid(k, 1.0));
        o.check(std::abs(f.normalization - 1) < 1e-3, "(c) G=" + num(gamma) + " norm-1 " + num(f.normalization - 1));
    }
    return o;
}

Outcome invariants()
{
    Outcome o;
    double symp = 0, trip = 0, pair = 0;
    for (int io = 0; io <= 8; ++io)
        for (int ix = 0; ix <= 6; ++ix) {
            const double om = 2.0 * io / 8, wx = 0.5 * std::pow(4.0, ix / 6.0);
            if (io == 0 && std::abs(wx - 1.0) < 1e-12) continue;
            const SystemParams p{1, wx, om, om * om / wx};
            const PolaritonBasis b = diagonalize_polaritons(p);
            for (int j = 0; j < 2; ++j)
                symp = std::max(symp, std::abs(std::norm(b[j].w) + std::norm(b[j].x) - std::norm(b[j].y) -
                                               std::norm(b[j].z) - 1));
            trip = std::max(trip, (b.forward() * b.inverse() - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff());
            Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(bogoliubov_matrix(p), false);
            std::vector<double> ev;
            for (int k = 0; k < 4; ++k) ev.push_back(es.eigenvalues()(k).real());
            std::sort(ev.begin(), ev.end());
            pair = std::max({pair, std::abs(ev[0] + ev[3]), std::abs(ev[1] + ev[2])});
        }
    o.check(symp < 1e-12, "symplectic " + num(symp));
    o.check(trip < 1e-12, "round trip " + num(trip));
    o.check(pair < 1e-12, "+/- pairs " + num(pair));

    // Generator: trace-free and Hermiticity-preserving on random Hermitian input.
    const FockModel m = build_fock_model(resonant_params(), {5, 5, FockBasis::bare});
    const ReservoirCorrelations sq = squeezed_ground_correlations(m.basis, kFigure);
    const Generator g = build_filtered_dissipator(m, sq);
    std::mt19937 rng(7);
    std::normal_distribution<double> nd;
    BlockOp x = BlockOp::zero(m.dim, 0);
    for (auto& b : x.blk) b = b.unaryExpr([&](cd) { return cd(nd(rng), nd(rng)); });
    x = 0.5 * (x + adjoint(x));
    const BlockOp y = g(x);
    o.check(std::abs(trace(y)) < 1e-12, "generator trace " + num(std::abs(trace(y))));
    o.check((y - adjoint(y)).max_abs() < 1e-12, "generator hermiticity " + num((y - adjoint(y)).max_abs()));
    const Trajectory tr = propagate(m, g, m.bare_vacuum(), {20, 0.05, 10, true});
    double tr_err = 0, herm = 0;
    for (const BlockOp& r : tr.states) {
        tr_err = std::max(tr_err, std::abs(trace(r) - 1.0));
        herm = std::max(herm, (r - adjoint(r)).max_abs());
    }
    o.check(tr_err <= 1e-8, "trajectory trace " + num(tr_err));
    o.check(herm <= 1e-10, "trajectory hermiticity " + num(herm));

    // Commutators of the squeezed reservoir fields reproduce the kernels.
    double comm = 0;
    for (double tau : {-1.1, -0.01, 0.02, 0.5, 3.0})
        for (int mu = 0; mu < 2; ++mu) {
            const cd lhs = sq.value(field_unit(mu), field_unit(mu + 2), tau) -
                           sq.value(field_unit(mu + 2), field_unit(mu), -tau);
            comm = std::max(comm, std::abs(lhs - kernel_time(mu == 0 ? kFigure.photonic : kFigure.excitonic, tau)));
        }
    o.check(comm < 1e-12, "commutator " + num(comm));
    return o;
}

} // namespace

int main()
{
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"1 eigenfrequencies", eigenfrequencies},
        {"2 ground-state virtual photons", virtual_photons},
        {"3 squeezed reservoirs from bare vacuum", figure2},
        {"4 vacuum reservoirs from dressed ground", figure1},
        {"5 zero detection, input-output", zero_detection_io},
        {"6 zero detection, master equation", zero_detection_master},
        {"7 vacuum in, vacuum out, excited cavity", vacuum_paradox},
        {"8 master vs input-output moments", cross_formalism},
        {"9 oracle suite", oracles},
        {"10 invariant suite", invariants},
    };
    int failed = 0;
    for (const auto& [label, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.check(false, std::string("threw ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  criterion %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", label, secs, o.detail.str().c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
