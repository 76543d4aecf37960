// Command-line front end for the index-kernel library.
#include <cstdlib>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ikern/harness.hpp"

namespace {

using ikern::RunOptions;

struct Flags {
    RunOptions o;
    std::vector<std::string> grid;
    double mu = 0.0, nu = 0.0, rho = 0.0, slack = 0.0;
};

// Registers the flags a subcommand accepts; names double as config keys.
void add_flags(CLI::App* c, Flags& f, const std::vector<std::string>& names) {
    for (const std::string& n : names) {
        std::string flag = "--" + n;
        if (n == "kernel") c->add_option(flag, f.o.kernel, "kl, lebedev-square, lebedev-product, whittaker, mehler-fock, olevskii");
        else if (n == "route") c->add_option(flag, f.o.route, "series, quadrature or asymptotic");
        else if (n == "x") c->add_option(flag, f.o.x, "kernel argument");
        else if (n == "tau") c->add_option(flag, f.o.tau, "index");
        else if (n == "mu") c->add_option(flag, f.mu, "parameter mu");
        else if (n == "nu") c->add_option(flag, f.nu, "parameter nu");
        else if (n == "rho") c->add_option(flag, f.rho, "Whittaker parameter rho");
        else if (n == "n") c->add_option(flag, f.o.n, "bound family member n >= 1");
        else if (n == "N") c->add_option(flag, f.o.N, "Theorem 1 truncation order");
        else if (n == "theorem") c->add_option(flag, f.o.theorem, "expansion theorem 1-4");
        else if (n == "bound") c->add_option(flag, f.o.bound, "1.1, 1.7, 1.9, 1.11, 1.13, 2.19 or 2.22");
        else if (n == "tau0") c->add_option(flag, f.o.tau0, "lower index limit tau0");
        else if (n == "x0") c->add_option(flag, f.o.x0, "Theorem 4 argument cap x0 < 1");
        else if (n == "X") c->add_option(flag, f.o.X, "argument cap X");
        else if (n == "T") c->add_option(flag, f.o.T, "split point T of the Lebedev constants");
        else if (n == "points") c->add_option(flag, f.o.points, "default grid points per axis");
        else if (n == "tol") c->add_option(flag, f.o.tol, "relative tolerance");
        else if (n == "slack") c->add_option(flag, f.slack, "multiplicative slack of the comparison");
        else if (n == "out") c->add_option(flag, f.o.out, "CSV output path (default stdout)");
        else if (n == "grid") c->add_option(flag, f.grid, "axis=start:stop:step, repeatable");
        else if (n == "threads") c->add_option(flag, f.o.threads, "worker threads");
        else if (n == "thm3-phase") c->add_option(flag, f.o.thm3_phase, "printed or corrected");
        else if (n == "thm4-phase") c->add_option(flag, f.o.thm4_phase, "printed or squared");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Index-transform kernels: evaluation, bound verification and expansions"};
    app.require_subcommand(1);
    Flags f;

    struct Cmd {
        const char* name;
        const char* help;
        std::vector<std::string> flags;
    };
    const std::vector<std::string> common = {"threads", "out", "thm3-phase", "thm4-phase"};
    std::vector<Cmd> cmds = {
        {"eval", "evaluate one kernel point", {"kernel", "route", "x", "tau", "mu", "nu", "rho"}},
        {"sweep", "evaluate a kernel over a grid", {"kernel", "route", "x", "tau", "mu", "nu", "rho", "grid"}},
        {"verify", "check a uniform bound over a grid",
         {"bound", "n", "x", "tau", "mu", "nu", "rho", "grid", "slack"}},
        {"expand", "check an expansion remainder bound over a grid",
         {"theorem", "N", "tau0", "x0", "X", "x", "tau", "rho", "grid", "slack"}},
        {"crossover", "find where the asymptotic route reaches a tolerance",
         {"kernel", "route", "x", "mu", "nu", "rho", "tol", "grid"}},
        {"fit-constants", "fit the Lebedev-type constants A and B", {"T", "points", "grid"}},
    };
    std::vector<CLI::App*> subs;
    for (const Cmd& c : cmds) {
        CLI::App* s = app.add_subcommand(c.name, c.help);
        add_flags(s, f, c.flags);
        add_flags(s, f, common);
        subs.push_back(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : ikern::kExitUsage;
    }

    CLI::App* sub = nullptr;
    for (CLI::App* s : subs) {
        if (s->parsed()) sub = s;
    }
    std::set<std::string> given;
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->count() > 0 && !opt->get_lnames().empty()) given.insert(opt->get_lnames().front());
    }
    RunOptions& o = f.o;
    o.fixed = given;
    try {
        if (given.count("mu")) o.mu = f.mu;
        if (given.count("nu")) o.nu = f.nu;
        if (given.count("rho")) o.rho = f.rho;
        if (given.count("slack")) o.slack = f.slack;
        for (const std::string& g : f.grid) o.grid.push_back(ikern::parse_axis(g));
        if (const char* cfg = std::getenv("INDEX_KERNELS_CFG"); cfg && *cfg) {
            ikern::apply_config(o, ikern::load_config_file(cfg), given);
        }
    } catch (const ikern::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ikern::kExitUsage;
    }
    return ikern::run_command(sub->get_name(), o, std::cerr);
}
