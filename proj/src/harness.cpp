#include "ikern/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

namespace ikern {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double parse_number(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("bad number for " + what + ": '" + s + "'");
    }
    if (used != s.size()) throw UsageError("bad number for " + what + ": '" + s + "'");
    return v;
}

int parse_int(const std::string& s, const std::string& what) {
    double v = parse_number(s, what);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw UsageError(what + " must be an integer");
    return static_cast<int>(v);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

enum class Outcome { ok, usage, numerical };

struct Guarded {
    Outcome outcome = Outcome::ok;
    std::string status = "ok";
    std::string message;
};

// Domain and usage problems abort a command; numerical failures are recorded per point.
template <class F>
Guarded guarded(F&& f) {
    Guarded g;
    try {
        f();
    } catch (const DomainError& e) {
        g = {Outcome::usage, "domain-error", e.what()};
    } catch (const UsageError& e) {
        g = {Outcome::usage, "usage-error", e.what()};
    } catch (const UnsupportedRoute& e) {
        g = {Outcome::usage, "unsupported-route", e.what()};
    } catch (const PrecisionLossError& e) {
        g = {Outcome::numerical, "precision-loss", e.what()};
    } catch (const NonConvergenceError& e) {
        g = {Outcome::numerical, "nonconvergence", e.what()};
    } catch (const Error& e) {
        g = {Outcome::numerical, "numerical-failure", e.what()};
    }
    return g;
}

std::string join(const std::vector<std::string>& f) {
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += ',';
        s += f[i];
    }
    return s;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

KernelId kernel_of(const RunOptions& o) {
    auto k = parse_kernel(o.kernel);
    if (!k) throw UsageError("unknown kernel '" + o.kernel + "'");
    return *k;
}

Route route_of(const std::string& s) {
    auto r = parse_route(s);
    if (!r) throw UsageError("unknown route '" + s + "'");
    return *r;
}

KernelOptions kernel_options(const RunOptions& o) {
    KernelOptions ko;
    if (o.thm3_phase == "printed") ko.thm3_phase = Thm3Phase::printed;
    else if (o.thm3_phase == "corrected") ko.thm3_phase = Thm3Phase::corrected;
    else throw UsageError("thm3-phase must be printed or corrected");
    if (o.thm4_phase == "printed") ko.thm4_phase = Thm4Phase::printed;
    else if (o.thm4_phase == "squared") ko.thm4_phase = Thm4Phase::squared;
    else throw UsageError("thm4-phase must be printed or squared");
    if (o.slack) ko.remainder_slack = *o.slack;
    return ko;
}

void check_axes(const std::vector<Axis>& axes, std::initializer_list<const char*> allowed) {
    std::set<std::string> seen;
    for (const Axis& a : axes) {
        bool ok = false;
        for (const char* n : allowed) ok = ok || a.name == n;
        if (!ok) throw UsageError("axis '" + a.name + "' not valid for this command");
        if (!seen.insert(a.name).second) throw UsageError("axis '" + a.name + "' given twice");
    }
}

double get(const GridPoint& g, const std::string& name, double fallback) {
    auto it = g.find(name);
    return it == g.end() ? fallback : it->second;
}

std::optional<double> get_opt(const GridPoint& g, const std::string& name,
                              const std::optional<double>& fallback) {
    auto it = g.find(name);
    if (it == g.end()) return fallback;
    return it->second;
}

double need(const std::optional<double>& v, const char* name) {
    if (!v) throw UsageError(std::string("--") + name + " is required");
    return *v;
}

std::string describe(const GridPoint& g) {
    std::string s;
    for (const auto& [k, v] : g) {
        if (!s.empty()) s += ' ';
        s += k + "=" + format_double(v);
    }
    return s.empty() ? "single point" : s;
}

// Evaluates fn over the grid in parallel, then emits rows in grid order.
struct RowOutcome {
    std::string row;
    Guarded g;
    bool pass = true;
    double margin = kNaN;
};

CommandResult finish(const std::vector<GridPoint>& grid, const std::vector<RowOutcome>& rows,
                     const std::string& header, std::ostream& csv) {
    CommandResult res;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].g.outcome == Outcome::usage) {
            res.exit_code = kExitUsage;
            res.message = rows[i].g.message + " at " + describe(grid[i]);
            return res;
        }
    }
    csv << header << '\n';
    Summary& s = res.summary;
    s.worst_margin = std::numeric_limits<double>::infinity();
    bool violation = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const RowOutcome& r = rows[i];
        csv << r.row << '\n';
        ++s.total;
        if (r.g.outcome == Outcome::numerical) {
            ++s.numerical_failures;
            if (res.message.empty()) res.message = r.g.message + " at " + describe(grid[i]);
            continue;
        }
        if (r.pass) ++s.passed;
        else violation = true;
        if (!std::isnan(r.margin) && r.margin < s.worst_margin) {
            s.worst_margin = r.margin;
            s.worst_point = describe(grid[i]);
        }
    }
    if (s.numerical_failures > 0) res.exit_code = kExitNumerical;
    else if (violation) res.exit_code = kExitViolation;
    return res;
}

CommandResult usage_result(const std::string& msg) {
    CommandResult r;
    r.exit_code = kExitUsage;
    r.message = msg;
    return r;
}

template <class F>
CommandResult with_usage_guard(F&& f) {
    try {
        return f();
    } catch (const UsageError& e) {
        return usage_result(e.what());
    } catch (const DomainError& e) {
        return usage_result(e.what());
    } catch (const UnsupportedRoute& e) {
        return usage_result(e.what());
    }
}

const char* kSweepHeader =
    "kernel,route,x,tau,mu,nu,rho,value_re,value_im,rel_err_est,cancellation,status";

std::string eval_row(const KernelPoint& p, Route route, const EvalResult* r, const Guarded& g) {
    std::vector<std::string> f = {to_string(p.kernel), to_string(route), format_double(p.x),
                                  format_double(p.tau), fmt_opt(p.mu), fmt_opt(p.nu), fmt_opt(p.rho)};
    if (r) {
        f.push_back(format_double(r->value.re.to_double()));
        f.push_back(format_double(r->value.im.to_double()));
        f.push_back(format_double(r->rel_error_estimate));
        f.push_back(r->cancellation_flag ? "1" : "0");
    } else {
        f.insert(f.end(), {"nan", "nan", "nan", ""});
    }
    f.push_back(g.status);
    return join(f);
}

KernelPoint make_point(KernelId k, const RunOptions& o, const GridPoint& g) {
    KernelPoint p;
    p.kernel = k;
    p.x = get(g, "x", o.x);
    p.tau = get(g, "tau", o.tau);
    p.mu = get_opt(g, "mu", o.mu);
    p.nu = get_opt(g, "nu", o.nu);
    p.rho = get_opt(g, "rho", o.rho);
    return p;
}

// Default axes fill in for whatever neither the grid nor an explicit scalar covers.
std::vector<Axis> axes_or(const RunOptions& o, const std::vector<Axis>& given,
                          const std::vector<Axis>& fallback) {
    std::vector<Axis> out = given;
    for (const Axis& d : fallback) {
        bool have = std::any_of(given.begin(), given.end(), [&](const Axis& a) { return a.name == d.name; });
        if (!have && !o.fixed.count(d.name)) out.push_back(d);
    }
    return out;
}

double time_us(const std::function<void()>& f) {
    using clock = std::chrono::steady_clock;
    int reps = 0;
    auto t0 = clock::now();
    double elapsed = 0.0;
    do {
        f();
        ++reps;
        elapsed = std::chrono::duration<double, std::micro>(clock::now() - t0).count();
    } while (elapsed < 2e4 && reps < 1000);
    return elapsed / reps;
}

}  // namespace

// ---- grids

std::vector<double> Axis::points() const {
    std::vector<double> v;
    if (start == stop) return {start};
    double span = (stop - start) / step;
    long count = static_cast<long>(std::floor(span + 1e-9)) + 1;
    v.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        double p = start + i * step;
        if (i + 1 == count && std::abs(p - stop) < 1e-9 * step) p = stop;
        v.push_back(p);
    }
    return v;
}

Axis parse_axis(const std::string& spec) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("grid axis must look like name=start:stop:step");
    Axis a;
    a.name = trim(spec.substr(0, eq));
    std::string rest = trim(spec.substr(eq + 1));
    std::vector<std::string> parts;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(trim(item));
    if (parts.size() == 1) {
        a.start = a.stop = parse_number(parts[0], a.name);
        a.step = 1.0;
        return a;
    }
    if (parts.size() != 3) throw UsageError("grid axis '" + spec + "' needs start:stop:step");
    a.start = parse_number(parts[0], a.name);
    a.stop = parse_number(parts[1], a.name);
    a.step = parse_number(parts[2], a.name);
    if (!std::isfinite(a.start) || !std::isfinite(a.stop) || !(a.step > 0.0) || !std::isfinite(a.step))
        throw UsageError("grid axis '" + spec + "': need finite bounds and step > 0");
    if (!(a.start <= a.stop)) throw UsageError("grid axis '" + spec + "': start exceeds stop");
    if ((a.stop - a.start) / a.step > 1e7) throw UsageError("grid axis '" + spec + "' is too large");
    return a;
}

std::vector<GridPoint> expand_grid(const std::vector<Axis>& axes) {
    std::vector<GridPoint> out = {GridPoint{}};
    for (const Axis& a : axes) {
        std::vector<GridPoint> next;
        std::vector<double> pts = a.points();
        for (const GridPoint& g : out) {
            for (double v : pts) {
                GridPoint h = g;
                h[a.name] = v;
                next.push_back(std::move(h));
            }
        }
        out = std::move(next);
    }
    return out;
}

// ---- configuration

ConfigMap parse_config(std::istream& in) {
    ConfigMap cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        while (!key.empty() && key[0] == '-') key.erase(0, 1);
        cfg.emplace_back(key, trim(t.substr(eq + 1)));
    }
    return cfg;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file '" + path + "'");
    return parse_config(f);
}

void apply_setting(RunOptions& o, const std::string& key, const std::string& v) {
    if (key == "kernel") o.kernel = v;
    else if (key == "route") o.route = v;
    else if (key == "x") o.x = parse_number(v, key);
    else if (key == "tau") o.tau = parse_number(v, key);
    else if (key == "mu") o.mu = parse_number(v, key);
    else if (key == "nu") o.nu = parse_number(v, key);
    else if (key == "rho") o.rho = parse_number(v, key);
    else if (key == "n") o.n = parse_int(v, key);
    else if (key == "N") o.N = parse_int(v, key);
    else if (key == "theorem") o.theorem = parse_int(v, key);
    else if (key == "bound") o.bound = v;
    else if (key == "tau0") o.tau0 = parse_number(v, key);
    else if (key == "x0") o.x0 = parse_number(v, key);
    else if (key == "X") o.X = parse_number(v, key);
    else if (key == "T") o.T = parse_number(v, key);
    else if (key == "points") o.points = parse_int(v, key);
    else if (key == "tol") o.tol = parse_number(v, key);
    else if (key == "slack") o.slack = parse_number(v, key);
    else if (key == "out") o.out = v;
    else if (key == "grid") o.grid.push_back(parse_axis(v));
    else if (key == "threads") o.threads = parse_int(v, key);
    else if (key == "thm3-phase") o.thm3_phase = v;
    else if (key == "thm4-phase") o.thm4_phase = v;
    else throw UsageError("unknown setting '" + key + "'");
}

void apply_config(RunOptions& o, const ConfigMap& cfg, const std::set<std::string>& given) {
    bool grid_given = given.count("grid") > 0;
    bool grid_reset = false;
    for (const auto& [k, v] : cfg) {
        if (given.count(k)) continue;
        if (k == "grid") {
            if (grid_given) continue;
            if (!grid_reset) o.grid.clear(), grid_reset = true;
        }
        apply_setting(o, k, v);
        o.fixed.insert(k);
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void run_static_partition(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    std::size_t w = static_cast<std::size_t>(std::max(1, threads));
    w = std::min(w, std::max<std::size_t>(1, n));
    if (w == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t block = (n + w - 1) / w;
    for (std::size_t k = 0; k < w; ++k) {
        std::size_t lo = k * block, hi = std::min(n, lo + block);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

// ---- commands

CommandResult cmd_eval(const RunOptions& o, std::ostream& csv) {
    return with_usage_guard([&] {
        KernelId k = kernel_of(o);
        Route route = route_of(o.route);
        KernelOptions ko = kernel_options(o);
        KernelPoint p = make_point(k, o, {});
        EvalResult r;
        Guarded g = guarded([&] { r = eval(p, route, ko); });
        CommandResult res;
        res.summary.total = 1;
        if (g.outcome == Outcome::usage) return usage_result(g.message);
        if (g.outcome == Outcome::numerical) {
            res.exit_code = kExitNumerical;
            res.message = g.message;
            res.summary.numerical_failures = 1;
            return res;
        }
        res.summary.passed = 1;
        csv << kSweepHeader << '\n' << eval_row(p, route, &r, g) << '\n';
        return res;
    });
}

CommandResult cmd_sweep(const RunOptions& o, std::ostream& csv) {
    return with_usage_guard([&] {
        KernelId k = kernel_of(o);
        Route route = route_of(o.route);
        KernelOptions ko = kernel_options(o);
        check_axes(o.grid, {"x", "tau", "mu", "nu", "rho"});
        std::vector<GridPoint> grid = expand_grid(o.grid);
        std::vector<RowOutcome> rows(grid.size());
        run_static_partition(grid.size(), o.threads, [&](std::size_t i) {
            KernelPoint p = make_point(k, o, grid[i]);
            EvalResult r;
            rows[i].g = guarded([&] { r = eval(p, route, ko); });
            bool ok = rows[i].g.outcome == Outcome::ok;
            rows[i].row = eval_row(p, route, ok ? &r : nullptr, rows[i].g);
        });
        return finish(grid, rows, kSweepHeader, csv);
    });
}

CommandResult cmd_verify(const RunOptions& o, std::ostream& csv) {
    return with_usage_guard([&] {
        const std::string& id = o.bound;
        double slack = o.slack.value_or(kBoundSlack);
        std::vector<Axis> grid_axes = o.grid;
        std::vector<Axis> defaults;
        if (id == "1.1" || id == "1.7" || id == "1.9" || id == "1.11" || id == "1.13") {
            check_axes(grid_axes, {"x", "tau", "mu", "nu"});
            defaults = {parse_axis("x=0.1:2:0.1"), parse_axis("tau=0.5:10:0.5")};
        } else if (id == "2.19") {
            check_axes(grid_axes, {"x", "tau", "rho"});
            defaults = {parse_axis("rho=-0.3:0.3:0.3"), parse_axis("tau=1:10:1"),
                        parse_axis("x=0.1:0.9:0.4")};
        } else if (id == "2.22") {
            for (Axis& a : grid_axes) {
                if (a.name == "mod") a.name = "x";
                else if (a.name == "arg") a.name = "tau";
            }
            check_axes(grid_axes, {"x", "tau"});
            defaults = {parse_axis("x=0.25:50:0.25"),
                        parse_axis("tau=0:1.5707963267948966:0.78539816339744828")};
        } else {
            throw UsageError("unknown bound '" + id + "'; expected 1.1, 1.7, 1.9, 1.11, 1.13, 2.19 or 2.22");
        }
        if ((id == "1.1" || id == "1.7" || id == "1.11") && o.n < 1) throw UsageError("--n must be >= 1");
        std::vector<GridPoint> grid = expand_grid(axes_or(o, grid_axes, defaults));
        std::vector<RowOutcome> rows(grid.size());
        run_static_partition(grid.size(), o.threads, [&](std::size_t i) {
            const GridPoint& g = grid[i];
            double x = get(g, "x", o.x), tau = get(g, "tau", o.tau);
            std::optional<double> mu = get_opt(g, "mu", o.mu), nu = get_opt(g, "nu", o.nu),
                                  rho = get_opt(g, "rho", o.rho);
            BoundReport r;
            int n = (id == "1.1" || id == "1.7" || id == "1.11") ? o.n : 0;
            rows[i].g = guarded([&] {
                if (id == "1.1") r = check_kl(n, tau, x, slack);
                else if (id == "1.7") r = check_mehler_fock(n, need(mu, "mu"), tau, x, slack);
                else if (id == "1.9") r = check_product(tau, x, slack);
                else if (id == "1.11") r = check_whittaker(n, need(mu, "mu"), tau, x, slack);
                else if (id == "1.13") r = check_olevskii(need(mu, "mu"), need(nu, "nu"), tau, x, slack);
                else if (id == "2.19") r = check_f11_estimate(need(rho, "rho"), tau, x, slack);
                else r = check_binet(x, tau, slack);
            });
            bool ok = rows[i].g.outcome == Outcome::ok;
            std::vector<std::string> f = {id, std::to_string(n), format_double(x), format_double(tau),
                                          fmt_opt(mu), fmt_opt(nu), fmt_opt(rho)};
            if (ok) {
                f.insert(f.end(), {format_double(r.lhs), format_double(r.rhs), format_double(r.margin),
                                   r.holds ? "1" : "0"});
                rows[i].pass = r.holds;
                rows[i].margin = r.margin;
            } else {
                f.insert(f.end(), {"nan", "nan", "nan", ""});
            }
            f.push_back(rows[i].g.status);
            rows[i].row = join(f);
        });
        return finish(grid, rows, "bound_id,n,x,tau,mu,nu,rho,lhs,rhs,margin,holds,status", csv);
    });
}

CommandResult cmd_expand(const RunOptions& o, std::ostream& csv) {
    return with_usage_guard([&] {
        int th = o.theorem;
        if (th < 1 || th > 4) throw UsageError("--theorem must be 1, 2, 3 or 4");
        if (th == 1 && o.N < 0) throw UsageError("--N must be >= 0");
        KernelOptions ko = kernel_options(o);
        std::vector<Axis> defaults;
        if (th == 4) {
            check_axes(o.grid, {"x", "tau", "rho"});
            defaults = {parse_axis("rho=-0.3:0.3:0.3"), parse_axis("tau=5:12:0.5"), parse_axis("x=0.1:0.5:0.4")};
        } else {
            check_axes(o.grid, {"x", "tau"});
            defaults = {parse_axis("tau=5:12:0.5"), parse_axis("x=0.25:1:0.75")};
        }
        std::vector<GridPoint> grid = expand_grid(axes_or(o, o.grid, defaults));
        std::vector<RowOutcome> rows(grid.size());
        run_static_partition(grid.size(), o.threads, [&](std::size_t i) {
            const GridPoint& g = grid[i];
            double x = get(g, "x", o.x), tau = get(g, "tau", o.tau);
            std::optional<double> rho = th == 4 ? get_opt(g, "rho", o.rho) : std::nullopt;
            ExpansionReport r;
            rows[i].g = guarded([&] {
                if (tau < o.tau0) throw DomainError("expansion requires tau >= tau0");
                switch (th) {
                    case 1: r = thm1_report(o.N, tau, x, o.tau0, o.X, ko); break;
                    case 2: r = thm2_main_and_bound(tau, x, o.tau0, o.X, ko); break;
                    case 3: r = thm3_main_and_bound(tau, x, o.tau0, o.X, ko); break;
                    default: r = thm4_main_and_bound(need(rho, "rho"), tau, x, o.tau0, o.x0, ko); break;
                }
            });
            std::vector<std::string> f = {std::to_string(th), th == 1 ? std::to_string(o.N) : "",
                                          fmt_opt(rho), format_double(tau), format_double(x)};
            if (rows[i].g.outcome == Outcome::ok) {
                double margin = r.remainder_bound - std::abs(r.empirical_remainder);
                f.insert(f.end(), {format_double(r.scale_factor), format_double(r.log_scale),
                                   format_double(r.main_term), format_double(r.empirical_remainder),
                                   format_double(r.remainder_bound), format_double(margin),
                                   r.bound_holds ? "1" : "0"});
                rows[i].pass = r.bound_holds;
                rows[i].margin = margin;
            } else {
                f.insert(f.end(), {"nan", "nan", "nan", "nan", "nan", "nan", ""});
            }
            f.push_back(rows[i].g.status);
            rows[i].row = join(f);
        });
        return finish(grid, rows,
                      "theorem,N,rho,tau,x,scale_factor,log_scale,main_term,empirical_remainder,"
                      "remainder_bound,margin,holds,status",
                      csv);
    });
}

CommandResult cmd_fit_constants(const RunOptions& o, std::ostream& csv) {
    return with_usage_guard([&] {
        check_axes(o.grid, {"tau", "xa", "xb"});
        LebedevGrid g = lebedev_grid(o.T, o.points);
        for (const Axis& a : o.grid) {
            std::vector<double> pts = a.points();
            if (a.name == "tau") g.taus = pts;
            else if (a.name == "xa") g.xa = pts;
            else g.xb = pts;
        }
        std::erase_if(g.taus, [](double t) { return !(t > 0.0); });
        std::erase_if(g.xa, [&](double x) { return !(x > 0.0 && x <= o.T); });
        std::erase_if(g.xb, [&](double x) { return !(x >= o.T); });
        if (g.taus.empty() || (g.xa.empty() && g.xb.empty()))
            throw UsageError("fit-constants: grid has no points inside tau > 0, x in (0, T] or [T, inf)");
        LebedevFit fit;
        Guarded gd = guarded([&] { fit = fit_lebedev_constants(o.T, g.taus, g.xa, g.xb); });
        CommandResult res;
        if (gd.outcome == Outcome::numerical) {
            res.exit_code = kExitNumerical;
            res.message = gd.message;
            return res;
        }
        if (gd.outcome == Outcome::usage) return usage_result(gd.message);
        csv << "constant,value,argmax_tau,argmax_x,T,tau_min,tau_max,x_min,x_max,points\n";
        auto row = [&](const char* name, double v, double at, double ax, double lo, double hi,
                       std::size_t count) {
            csv << join({name, format_double(v), format_double(at), format_double(ax),
                         format_double(o.T), format_double(fit.tau_min), format_double(fit.tau_max),
                         format_double(lo), format_double(hi), std::to_string(count)})
                << '\n';
        };
        if (!g.xa.empty()) row("A", fit.A, fit.A_tau, fit.A_x, fit.xa_min, fit.xa_max, g.taus.size() * g.xa.size());
        if (!g.xb.empty()) row("B", fit.B, fit.B_tau, fit.B_x, fit.xb_min, fit.xb_max, g.taus.size() * g.xb.size());
        res.summary.total = res.summary.passed = fit.points;
        return res;
    });
}

CrossoverResult cmd_crossover(const RunOptions& o, std::ostream& csv) {
    CrossoverResult out;
    out.result = with_usage_guard([&] {
        KernelId k = kernel_of(o);
        if (k == KernelId::mehler_fock) throw UsageError("crossover needs a kernel with an asymptotic route");
        Route direct = route_of(o.route);
        if (direct == Route::asymptotic) direct = Route::series;
        if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
        KernelOptions ko = kernel_options(o);
        check_axes(o.grid, {"tau"});
        std::vector<double> taus = (o.grid.empty() ? parse_axis("tau=0.5:100:0.5") : o.grid[0]).points();

        struct Sample {
            bool ok = false;
            double d = kNaN, a = kNaN, env = kNaN, diff = kNaN;
        };
        auto sample = [&](double tau, Guarded& g) {
            Sample s;
            KernelPoint p = make_point(k, o, {{"tau", tau}});
            g = guarded([&] {
                EvalResult d = eval(p, direct, ko);
                if (d.rel_error_estimate > 0.1 * o.tol)
                    throw PrecisionLossError("direct route cannot resolve the tolerance", d.rel_error_estimate);
                EvalResult a = eval(p, Route::asymptotic, ko);
                s.d = d.value.re.to_double();
                s.a = a.value.re.to_double();
                s.env = asymptotic_envelope(p, ko);
                s.diff = std::abs(s.a - s.d) / std::max(std::abs(s.d), s.env);
                s.ok = true;
            });
            return s;
        };

        std::vector<Sample> samples;
        csv << "tau,direct,asymptotic,envelope,rel_diff\n";
        for (double tau : taus) {
            Guarded g;
            Sample s = sample(tau, g);
            if (g.outcome == Outcome::usage) throw UsageError(g.message);
            if (!s.ok) break;  // precision ceiling of the direct route
            samples.push_back(s);
            out.ceiling_tau = tau;
            csv << join({format_double(tau), format_double(s.d), format_double(s.a), format_double(s.env),
                         format_double(s.diff)})
                << '\n';
        }
        out.tested = static_cast<int>(samples.size());
        CommandResult res;
        std::size_t first = samples.size();
        while (first > 0 && samples[first - 1].diff < o.tol) --first;
        if (samples.empty() || first == samples.size()) {
            res.exit_code = kExitViolation;
            res.message = samples.empty()
                              ? "direct route cannot resolve tol at the first grid point"
                              : "tolerance not reached before tau = " + format_double(out.ceiling_tau);
            return res;
        }
        out.found = true;
        out.tau_star = taus[first];
        out.tau_star_refined = out.tau_star;
        if (first > 0) {
            double lo = taus[first - 1], hi = taus[first];
            for (int it = 0; it < 40 && hi - lo > 1e-10 * hi; ++it) {
                double mid = 0.5 * (lo + hi);
                Guarded g;
                Sample s = sample(mid, g);
                (s.ok && s.diff < o.tol ? hi : lo) = mid;
            }
            out.tau_star_refined = hi;
        }
        KernelPoint p = make_point(k, o, {{"tau", out.tau_star}});
        out.direct_us = time_us([&] { (void)eval(p, direct, ko); });
        out.asymptotic_us = time_us([&] { (void)eval(p, Route::asymptotic, ko); });
        res.summary.total = out.tested;
        res.summary.passed = out.tested - static_cast<int>(first);
        return res;
    });
    return out;
}

int run_command(const std::string& name, const RunOptions& o, std::ostream& log) {
    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out, std::ios::binary);
        if (!file) {
            log << "error: cannot open " << o.out << " for writing\n";
            return kExitUsage;
        }
    }
    std::ostream& csv = o.out.empty() ? std::cout : static_cast<std::ostream&>(file);
    CommandResult res;
    if (name == "crossover") {
        CrossoverResult c = cmd_crossover(o, csv);
        res = c.result;
        if (c.found) {
            log << "tau_star=" << format_double(c.tau_star)
                << " tau_star_refined=" << format_double(c.tau_star_refined)
                << " tested=" << c.tested << " ceiling_tau=" << format_double(c.ceiling_tau)
                << " direct_us=" << format_double(c.direct_us)
                << " asymptotic_us=" << format_double(c.asymptotic_us) << '\n';
        }
    } else if (name == "eval") {
        res = cmd_eval(o, csv);
    } else if (name == "sweep") {
        res = cmd_sweep(o, csv);
    } else if (name == "verify") {
        res = cmd_verify(o, csv);
    } else if (name == "expand") {
        res = cmd_expand(o, csv);
    } else if (name == "fit-constants") {
        res = cmd_fit_constants(o, csv);
    } else {
        log << "error: unknown command " << name << '\n';
        return kExitUsage;
    }
    const Summary& s = res.summary;
    if (name != "eval" && name != "crossover" && res.exit_code != kExitUsage) {
        log << "total=" << s.total << " passed=" << s.passed << " numerical_failures=" << s.numerical_failures;
        if (!s.worst_point.empty())
            log << " worst_margin=" << format_double(s.worst_margin) << " worst_point=\"" << s.worst_point << '"';
        log << '\n';
    }
    if (!res.message.empty()) log << (res.exit_code == kExitOk ? "note: " : "error: ") << res.message << '\n';
    return res.exit_code;
}

}  // namespace ikern
