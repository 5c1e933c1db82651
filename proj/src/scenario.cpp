#include "polariton/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "polariton/csv.hpp"
#include "polariton/detection.hpp"
#include "polariton/fano.hpp"
#include "polariton/input_output.hpp"

namespace polariton {

namespace {

constexpr const char* kVersion = "0.1.0";

const std::set<std::string> kKeys = {
    "name", "solver", "initial_state", "reservoir",
    "params.omega_c", "params.omega_x", "params.rabi", "params.diamag",
    "kernels.photonic.gamma", "kernels.photonic.cutoff", "kernels.excitonic.gamma", "kernels.excitonic.cutoff",
    "fock.n_a", "fock.n_b", "fock.basis",
    "time.t_end", "time.dt", "time.output_stride",
    "omega_grid.min", "omega_grid.max", "omega_grid.points"};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

class Entries {
public:
    explicit Entries(std::map<std::string, std::string> m) : m_(std::move(m)) {}

    bool has(const std::string& key) const { return m_.count(key) != 0; }
    const std::string& text(const std::string& key) const
    {
        auto it = m_.find(key);
        if (it == m_.end()) throw ConfigError(key, "required key missing");
        return it->second;
    }
    double number(const std::string& key) const
    {
        const std::string& v = text(key);
        try {
            size_t used = 0;
            const double x = std::stod(v, &used);
            if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ConfigError(key, "not a finite number: '" + v + "'");
        }
    }
    double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }
    int integer(const std::string& key) const
    {
        const double x = number(key);
        if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigError(key, "not an integer");
        return int(x);
    }
    int integer(const std::string& key, int fallback) const { return has(key) ? integer(key) : fallback; }

private:
    std::map<std::string, std::string> m_;
};

Solver parse_solver(const std::string& v)
{
    static const std::map<std::string, Solver> names = {
        {"master_vacuum", Solver::master_vacuum},           {"master_squeezed", Solver::master_squeezed},
        {"markov_nonlindblad", Solver::markov_nonlindblad}, {"markov_rwa_lindblad", Solver::markov_rwa_lindblad},
        {"input_output", Solver::input_output},             {"fano", Solver::fano}};
    auto it = names.find(v);
    if (it == names.end()) throw ConfigError("solver", "unknown solver '" + v + "'");
    return it->second;
}

InitialState parse_initial(const std::string& v)
{
    if (v == "dressed_ground") return {InitialState::dressed_ground};
    if (v == "bare_vacuum") return {InitialState::bare_vacuum};
    InitialState s{InitialState::fock};
    char close = 0;
    std::istringstream in(v);
    std::string head;
    if (std::getline(in, head, '(') && trim(head) == "fock") {
        char comma = 0;
        if (in >> s.n_a >> comma >> s.n_b >> close && comma == ',' && close == ')') {
            std::string rest;
            std::getline(in, rest);
            if (trim(rest).empty() && s.n_a >= 0 && s.n_b >= 0) return s;
        }
    }
    throw ConfigError("initial_state", "expected dressed_ground, bare_vacuum or fock(n_a, n_b), got '" + v + "'");
}

bool is_master(Solver s) { return s != Solver::input_output && s != Solver::fano; }

std::string initial_name(const InitialState& s)
{
    switch (s.kind) {
    case InitialState::dressed_ground: return "dressed_ground";
    case InitialState::bare_vacuum: return "bare_vacuum";
    case InitialState::fock: return "fock(" + std::to_string(s.n_a) + "," + std::to_string(s.n_b) + ")";
    }
    return "";
}

ReservoirCorrelations reservoir_for(const Scenario& s, const PolaritonBasis& basis)
{
    switch (s.solver) {
    case Solver::master_vacuum:
    case Solver::markov_rwa_lindblad: return vacuum_correlations(s.kernels);
    case Solver::master_squeezed:
    case Solver::markov_nonlindblad: return squeezed_ground_correlations(basis, s.kernels);
    case Solver::input_output:
        return s.reservoir == ReservoirMode::vacuum ? vacuum_correlations(s.kernels)
                                                    : squeezed_ground_correlations(basis, s.kernels);
    case Solver::fano: break;
    }
    return vacuum_correlations(s.kernels);
}

// Ordered output spectrum with the grid split into contiguous chunks, one per thread.
SpectralResult parallel_output_spectrum(const Scenario& s, const ReservoirCorrelations& corr,
                                        const std::vector<double>& grid, int threads)
{
    const size_t n = grid.size();
    const size_t chunks = std::max<size_t>(1, std::min<size_t>(threads, n / 64 + 1));
    std::vector<SpectralResult> parts(chunks);
    std::vector<std::exception_ptr> errors(chunks);
    auto work = [&](size_t c) {
        try {
            const std::vector<double> sub(grid.begin() + c * n / chunks, grid.begin() + (c + 1) * n / chunks);
            parts[c] = ordered_output_spectrum(s.params, corr, sub);
        } catch (...) {
            errors[c] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (size_t c = 1; c < chunks; ++c) pool.emplace_back(work, c);
    work(0);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    SpectralResult out;
    for (const auto& p : parts) {
        out.omega.insert(out.omega.end(), p.omega.begin(), p.omega.end());
        out.normal.insert(out.normal.end(), p.normal.begin(), p.normal.end());
        out.anomalous.insert(out.anomalous.end(), p.anomalous.begin(), p.anomalous.end());
    }
    return out;
}

nlohmann::ordered_json manifest(const Scenario& s, const RunReport& r, int threads)
{
    using J = nlohmann::ordered_json;
    auto kernel = [](const KernelSpec& k) { return J{{"gamma", k.gamma}, {"cutoff", k.cutoff}}; };
    J grid = nullptr;
    if (s.omega_grid) grid = J{{"min", s.omega_grid->min}, {"max", s.omega_grid->max}, {"points", s.omega_grid->points}};
    return J{{"name", s.name},
             {"solver", solver_name(s.solver)},
             {"params",
              {{"omega_c", s.params.omega_c}, {"omega_x", s.params.omega_x}, {"rabi", s.params.rabi},
               {"diamag", s.params.diamag}}},
             {"kernels", {{"photonic", kernel(s.kernels.photonic)}, {"excitonic", kernel(s.kernels.excitonic)}}},
             {"fock",
              {{"n_a", s.fock.n_a}, {"n_b", s.fock.n_b},
               {"basis", s.fock.basis == FockBasis::bare ? "bare" : "polariton"}}},
             {"time", {{"t_end", s.time.t_end}, {"dt", s.time.dt}, {"output_stride", s.time.output_stride}}},
             {"omega_grid", grid},
             {"initial_state", initial_name(s.initial)},
             {"reservoir", s.reservoir == ReservoirMode::vacuum ? "vacuum" : "squeezed_ground"},
             {"units", {{"frequency", "omega_c"}, {"time", "2pi/omega_c"}}},
             {"outputs", r.outputs},
             {"version", kVersion},
             {"eigen_version", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)},
             {"threads", threads},
             {"wall_time_s", r.wall_time}};
}

const std::map<std::string, std::string> kQuantityFiles = {
    {"trajectory", "trajectory.csv"}, {"moments", "moments.csv"}, {"spectrum", "spectrum.csv"}, {"weight", "weight.csv"}};

} // namespace

std::string solver_name(Solver s)
{
    switch (s) {
    case Solver::master_vacuum: return "master_vacuum";
    case Solver::master_squeezed: return "master_squeezed";
    case Solver::markov_nonlindblad: return "markov_nonlindblad";
    case Solver::markov_rwa_lindblad: return "markov_rwa_lindblad";
    case Solver::input_output: return "input_output";
    case Solver::fano: return "fano";
    }
    return "";
}

Scenario parse_scenario(const std::string& text)
{
    std::map<std::string, std::string> m;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (!kKeys.count(key)) throw ConfigError(key, "unknown key");
        if (value.empty()) throw ConfigError(key, "empty value");
        if (!m.emplace(key, value).second) throw ConfigError(key, "duplicate key");
    }
    const Entries e(std::move(m));

    Scenario s;
    s.name = e.text("name");
    s.solver = parse_solver(e.text("solver"));
    s.params = {e.number("params.omega_c"), e.number("params.omega_x"), e.number("params.rabi"),
                e.number("params.diamag")};
    try {
        validate(s.params);
    } catch (const InvalidParams& err) {
        throw ConfigError("params", err.what());
    }
    s.kernels = KernelPair::flat(e.number("kernels.photonic.gamma"), e.number("kernels.excitonic.gamma"), 1e3);
    s.kernels.photonic.cutoff = e.number("kernels.photonic.cutoff", 1e3);
    s.kernels.excitonic.cutoff = e.number("kernels.excitonic.cutoff", 1e3);
    for (const auto* k : {&s.kernels.photonic, &s.kernels.excitonic}) {
        const std::string prefix = k == &s.kernels.photonic ? "kernels.photonic" : "kernels.excitonic";
        try {
            validate(*k);
        } catch (const InvalidParams& err) {
            throw ConfigError(prefix, err.what());
        }
    }

    s.fock.n_a = e.integer("fock.n_a", 8);
    s.fock.n_b = e.integer("fock.n_b", 8);
    if (e.has("fock.basis")) {
        const std::string& b = e.text("fock.basis");
        if (b == "bare") s.fock.basis = FockBasis::bare;
        else if (b == "polariton") s.fock.basis = FockBasis::polariton;
        else throw ConfigError("fock.basis", "expected bare or polariton");
    }
    try {
        validate(s.fock);
    } catch (const InvalidParams& err) {
        throw ConfigError("fock", err.what());
    }

    if (e.has("reservoir")) {
        const std::string& r = e.text("reservoir");
        if (r == "vacuum") s.reservoir = ReservoirMode::vacuum;
        else if (r == "squeezed_ground") s.reservoir = ReservoirMode::squeezed_ground;
        else throw ConfigError("reservoir", "expected vacuum or squeezed_ground");
        if (s.solver != Solver::input_output) throw ConfigError("reservoir", "only used by the input_output solver");
    }

    if (is_master(s.solver)) {
        s.time.t_end = e.number("time.t_end");
        s.time.dt = e.number("time.dt", 0.05);
        s.time.output_stride = e.integer("time.output_stride", 1);
        if (!(s.time.t_end > 0)) throw ConfigError("time.t_end", "must be > 0");
        if (!(s.time.dt > 0) || s.time.dt > s.time.t_end) throw ConfigError("time.dt", "must be in (0, t_end]");
        if (s.time.output_stride < 1) throw ConfigError("time.output_stride", "must be >= 1");
        s.initial = parse_initial(e.text("initial_state"));
        if (s.initial.kind == InitialState::fock && (s.initial.n_a >= s.fock.n_a || s.initial.n_b >= s.fock.n_b))
            throw ConfigError("initial_state", "Fock levels exceed the truncation");
    } else {
        for (const char* k : {"time.t_end", "time.dt", "time.output_stride", "initial_state"})
            if (e.has(k)) throw ConfigError(k, "not used by solver " + solver_name(s.solver));
    }

    const bool needs_grid = s.solver == Solver::input_output || s.solver == Solver::fano;
    if (needs_grid || e.has("omega_grid.points")) {
        OmegaGrid g;
        g.points = e.integer("omega_grid.points");
        g.min = e.number("omega_grid.min", g.min);
        g.max = e.number("omega_grid.max", g.max);
        if (s.solver == Solver::fano) {
            if (g.points < 64) throw ConfigError("omega_grid.points", "fano needs at least 64 points");
        } else {
            if (g.points < 8) throw ConfigError("omega_grid.points", "must be >= 8");
            if (!(g.min > 0) || !(g.max > g.min)) throw ConfigError("omega_grid", "need 0 < min < max");
            if (g.max >= std::min(s.kernels.photonic.cutoff, s.kernels.excitonic.cutoff))
                throw ConfigError("omega_grid.max", "must stay below the kernel cutoff");
        }
        s.omega_grid = g;
    } else if (e.has("omega_grid.min") || e.has("omega_grid.max")) {
        throw ConfigError("omega_grid.points", "required when omega_grid is given");
    }
    if (s.solver == Solver::fano && s.kernels.photonic.gamma == 0)
        throw ConfigError("kernels.photonic.gamma", "fano needs Gamma > 0");
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw IoFailure("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

int thread_count()
{
    const char* v = std::getenv("POLARITON_THREADS");
    if (!v || !*v) return 1;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1 || n > 256) throw ConfigError("POLARITON_THREADS", "expected an integer in [1, 256]");
    return int(n);
}

RunReport run_scenario(const Scenario& s, const std::string& out_dir)
{
    const int threads = thread_count();
    const auto start = std::chrono::steady_clock::now();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoFailure("cannot create " + out_dir + ": " + ec.message());
    const std::filesystem::path dir(out_dir);

    RunReport report;
    auto emit = [&](const std::string& file, const Table& t) {
        write_table((dir / file).string(), t);
        report.outputs.push_back(file);
    };

    const PolaritonBasis basis = diagonalize_polaritons(s.params);
    if (is_master(s.solver)) {
        const FockModel model = build_fock_model(s.params, s.fock);
        const ReservoirCorrelations corr = reservoir_for(s, basis);
        Generator gen;
        switch (s.solver) {
        case Solver::markov_nonlindblad: gen = markov_generator(model, corr, MarkovForm::nonlindblad); break;
        case Solver::markov_rwa_lindblad: gen = markov_generator(model, corr, MarkovForm::rwa_lindblad); break;
        default: gen = build_filtered_dissipator(model, corr); break;
        }
        BlockOp rho0;
        switch (s.initial.kind) {
        case InitialState::dressed_ground: rho0 = model.ground_state(); break;
        case InitialState::bare_vacuum: rho0 = model.bare_vacuum(); break;
        case InitialState::fock: rho0 = model.product_state(s.initial.n_a, s.initial.n_b); break;
        }
        emit("trajectory.csv", trajectory_table(propagate(model, gen, rho0, s.time)));
        const BlockOp ss = steady_state(gen);
        const Observables o = observe(model, ss);
        emit("moments.csv", occupation_table(o.n_photon, o.n_excitation, o.n_lower, o.n_upper));
        if (s.omega_grid && (s.solver == Solver::master_vacuum || s.solver == Solver::master_squeezed)) {
            const auto grid = spectrum_grid(s.params, s.kernels, s.omega_grid->min, s.omega_grid->max,
                                            s.omega_grid->points);
            emit("spectrum.csv", spectrum_table(output_detection_spectrum(model, gen, ss, corr, grid)));
        }
    } else if (s.solver == Solver::input_output) {
        const ReservoirCorrelations corr = reservoir_for(s, basis);
        const auto grid =
            spectrum_grid(s.params, s.kernels, s.omega_grid->min, s.omega_grid->max, s.omega_grid->points);
        emit("spectrum.csv", spectrum_table(parallel_output_spectrum(s, corr, grid, threads)));
        const IntracavityOccupations o =
            intracavity_occupations(s.params, corr, occupation_grid(s.params, s.kernels));
        emit("moments.csv", occupation_table(o.moments.photon_number(), o.moments.excitation_number(),
                                             o.number(0, 0).real(), o.number(1, 1).real()));
    } else {
        const auto grid = fano_grid(s.kernels.photonic, s.params.omega_c, s.omega_grid->points);
        emit("weight.csv", weight_table(spectral_weight(s.kernels.photonic, s.params.omega_c, grid)));
    }

    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream f(dir / "manifest.json");
    if (!f) throw IoFailure("cannot write manifest.json in " + out_dir);
    f << manifest(s, report, threads).dump(2) << '\n';
    if (!f) throw IoFailure("write to manifest.json failed");
    return report;
}

int run_command(const std::string& config_path, const std::string& out_dir, std::ostream& log)
{
    Scenario s;
    try {
        s = load_scenario(config_path);
        thread_count();
    } catch (const ConfigError& e) {
        log << "config invalid: " << e.what() << '\n';
        return 2;
    } catch (const IoFailure& e) {
        log << e.what() << '\n';
        return 4;
    }
    try {
        const RunReport r = run_scenario(s, out_dir);
        log << s.name << ": wrote";
        for (const auto& f : r.outputs) log << ' ' << f;
        log << " manifest.json (" << std::fixed << std::setprecision(2) << r.wall_time << " s)\n";
        return 0;
    } catch (const IoFailure& e) {
        log << e.what() << '\n';
        return 4;
    } catch (const Error& e) {
        log << "solver failure " << e.name() << ": " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        log << "solver failure: " << e.what() << '\n';
        return 3;
    }
}

int compare_command(const std::string& dir_a, const std::string& dir_b, const std::string& quantity, double tol,
                    std::ostream& log)
{
    auto it = kQuantityFiles.find(quantity);
    if (it == kQuantityFiles.end()) {
        log << "unknown quantity '" << quantity << "'\n";
        return 2;
    }
    Table a, b;
    try {
        a = read_table((std::filesystem::path(dir_a) / it->second).string());
        b = read_table((std::filesystem::path(dir_b) / it->second).string());
    } catch (const IoFailure& e) {
        log << e.what() << '\n';
        return 2;
    }
    if (a.header != b.header || a.rows.size() != b.rows.size() || a.rows.empty()) {
        log << "schema mismatch: headers or row counts differ\n";
        return 2;
    }
    // Tables with a leading grid column must share that grid.
    const bool gridded = quantity != "moments";
    if (gridded)
        for (size_t r = 0; r < a.rows.size(); ++r) {
            const double x = a.rows[r][0], y = b.rows[r][0];
            if (std::abs(x - y) > 1e-9 * std::max(1.0, std::abs(x))) {
                log << "schema mismatch: " << a.header[0] << " grids differ at row " << r << '\n';
                return 2;
            }
        }

    bool ok = true;
    log << std::left << std::setw(12) << "column" << std::setw(16) << "max_abs" << "rms\n";
    for (size_t c = gridded ? 1 : 0; c < a.header.size(); ++c) {
        double worst = 0, sq = 0;
        for (size_t r = 0; r < a.rows.size(); ++r) {
            const double d = std::abs(a.rows[r][c] - b.rows[r][c]);
            worst = std::max(worst, d);
            sq += d * d;
        }
        const double rms = std::sqrt(sq / a.rows.size());
        log << std::setw(12) << a.header[c] << std::setw(16) << std::setprecision(6) << worst << rms << '\n';
        if (!(worst <= tol)) ok = false;
    }
    log << (ok ? "within" : "outside") << " tolerance " << tol << '\n';
    return ok ? 0 : 1;
}

} // namespace polariton
