#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polariton/fock.hpp"
#include "polariton/kernels.hpp"
#include "polariton/master.hpp"

namespace polariton {

enum class Solver { master_vacuum, master_squeezed, markov_nonlindblad, markov_rwa_lindblad, input_output, fano };

struct InitialState {
    enum Kind { dressed_ground, bare_vacuum, fock } kind = dressed_ground;
    int n_a = 0, n_b = 0;  // levels of the truncated product basis for `fock`
};

struct OmegaGrid {
    double min = 0.01, max = 5;
    int points = 0;
};

// One declarative run. Frequencies in units of wc, times in units of 2 pi / wc.
struct Scenario {
    std::string name;
    Solver solver = Solver::master_vacuum;
    SystemParams params;
    KernelPair kernels;
    FockConfig fock;
    PropagationOptions time;
    std::optional<OmegaGrid> omega_grid;
    InitialState initial;
    ReservoirMode reservoir = ReservoirMode::squeezed_ground;  // input_output only
};

// Invalid configuration; key() names the offending entry.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what) : Error("ConfigError", key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// Flat `section.key = value` lines, '#' starts a comment. Unknown keys,
// duplicates and missing required keys throw ConfigError.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

std::string solver_name(Solver s);

// Thread count from POLARITON_THREADS (default 1); ConfigError when malformed.
int thread_count();

struct RunReport {
    std::vector<std::string> outputs;  // file names inside the output directory
    double wall_time = 0;              // seconds
};

// Runs the solver and writes its CSVs plus manifest.json into `out_dir`.
RunReport run_scenario(const Scenario& s, const std::string& out_dir);

// CLI entry points. run: 0 ok, 2 config invalid, 3 solver failure, 4 I/O failure.
// compare: 0 within tolerance, 1 outside, 2 schema mismatch or unreadable input.
int run_command(const std::string& config_path, const std::string& out_dir, std::ostream& log);
int compare_command(const std::string& dir_a, const std::string& dir_b, const std::string& quantity, double tol,
                    std::ostream& log);

} // namespace polariton
