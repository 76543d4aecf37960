#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ikern/bounds.hpp"

namespace ikern {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2, kExitNumerical = 3 };

/// One grid axis, "name=start:stop:step" or "name=value".
struct Axis {
    std::string name;
    double start = 0.0, stop = 0.0, step = 1.0;

    std::vector<double> points() const;
};

Axis parse_axis(const std::string& spec);

using GridPoint = std::map<std::string, double>;
/// Cartesian product, first axis outermost.
std::vector<GridPoint> expand_grid(const std::vector<Axis>& axes);

struct RunOptions {
    std::string kernel = "kl";
    std::string route = "series";
    double x = 1.0, tau = 1.0;
    std::optional<double> mu, nu, rho;
    int n = 1;
    int N = 2;
    int theorem = 1;
    std::string bound = "1.1";
    double tau0 = 5.0, x0 = 0.5, X = 1.0;
    double T = 1.0;
    int points = 50;
    double tol = 1e-2;
    std::optional<double> slack;
    std::string out;
    std::vector<Axis> grid;
    int threads = 1;
    std::string thm3_phase = "printed";
    std::string thm4_phase = "printed";
    /// Scalars set explicitly; a default grid axis never overrides one of these.
    std::set<std::string> fixed;
};

using ConfigMap = std::vector<std::pair<std::string, std::string>>;

/// key=value lines; blank lines and lines starting with '#' are skipped.
ConfigMap parse_config(std::istream& in);
ConfigMap load_config_file(const std::string& path);
/// Sets one option from its long flag name (without dashes).
void apply_setting(RunOptions& o, const std::string& key, const std::string& value);
/// Applies every key not listed in given; grid entries replace the grid as a whole.
/// Applied keys join o.fixed.
void apply_config(RunOptions& o, const ConfigMap& cfg, const std::set<std::string>& given);

struct Summary {
    int total = 0;
    int passed = 0;
    int numerical_failures = 0;
    double worst_margin = 0.0;
    std::string worst_point;
};

struct CommandResult {
    int exit_code = kExitOk;
    Summary summary;
    std::string message;
};

std::string format_double(double v);

/// Calls fn(i) for i in [0, n), contiguous blocks per worker.
void run_static_partition(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

CommandResult cmd_eval(const RunOptions& o, std::ostream& csv);
CommandResult cmd_sweep(const RunOptions& o, std::ostream& csv);
CommandResult cmd_verify(const RunOptions& o, std::ostream& csv);
CommandResult cmd_expand(const RunOptions& o, std::ostream& csv);
CommandResult cmd_fit_constants(const RunOptions& o, std::ostream& csv);

struct CrossoverResult {
    CommandResult result;
    bool found = false;
    double tau_star = 0.0;          // smallest grid tau passing for every tested tau above it
    double tau_star_refined = 0.0;  // bisection between tau_star and its grid predecessor
    double ceiling_tau = 0.0;       // last tau the direct route resolved to tol/10
    int tested = 0;
    double direct_us = 0.0, asymptotic_us = 0.0;
};

/// Discrepancy |asymptotic - direct| / max(|direct|, envelope) over a tau grid.
CrossoverResult cmd_crossover(const RunOptions& o, std::ostream& csv);

/// Runs a command by name with the stream chosen by o.out; returns the exit code.
int run_command(const std::string& name, const RunOptions& o, std::ostream& log);

}  // namespace ikern
