// Python bindings for the index-kernel library.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <optional>
#include <sstream>
#include <string>

#include "ikern/bounds.hpp"
#include "ikern/harness.hpp"

namespace py = pybind11;
using namespace ikern;

namespace {

KernelId kernel_arg(const std::string& s) {
    auto k = parse_kernel(s);
    if (!k) throw UsageError("unknown kernel '" + s + "'");
    return *k;
}

Route route_arg(const std::string& s) {
    auto r = parse_route(s);
    if (!r) throw UsageError("unknown route '" + s + "'");
    return *r;
}

py::dict eval_kernel(const std::string& kernel, double x, double tau, std::optional<double> mu,
                     std::optional<double> nu, std::optional<double> rho, const std::string& route) {
    KernelPoint p;
    p.kernel = kernel_arg(kernel);
    p.x = x;
    p.tau = tau;
    p.mu = mu;
    p.nu = nu;
    p.rho = rho;
    EvalResult r;
    {
        py::gil_scoped_release nogil;
        r = eval(p, route_arg(route));
    }
    py::dict d;
    d["value"] = r.value.to_std();
    d["route"] = to_string(r.route);
    d["rel_error_estimate"] = r.rel_error_estimate;
    d["cancellation"] = r.cancellation_flag;
    return d;
}

py::dict report_dict(const BoundReport& b) {
    py::dict d;
    d["bound_id"] = b.bound_id;
    d["n"] = b.n;
    d["lhs"] = b.lhs;
    d["rhs"] = b.rhs;
    d["margin"] = b.margin;
    d["holds"] = b.holds;
    return d;
}

// Runs a command with settings given by their long flag names; returns (exit code, csv).
py::tuple run(const std::string& command, const py::dict& settings) {
    RunOptions o;
    for (auto item : settings) {
        std::string key = py::str(item.first);
        if (key == "grid") {
            for (auto g : item.second) o.grid.push_back(parse_axis(py::str(g)));
        } else {
            apply_setting(o, key, py::str(item.second));
        }
        o.fixed.insert(key);
    }
    o.out.clear();
    std::ostringstream csv;
    CommandResult r;
    {
        py::gil_scoped_release nogil;
        if (command == "eval") r = cmd_eval(o, csv);
        else if (command == "sweep") r = cmd_sweep(o, csv);
        else if (command == "verify") r = cmd_verify(o, csv);
        else if (command == "expand") r = cmd_expand(o, csv);
        else if (command == "fit-constants") r = cmd_fit_constants(o, csv);
        else if (command == "crossover") r = cmd_crossover(o, csv).result;
        else throw UsageError("unknown command '" + command + "'");
    }
    return py::make_tuple(r.exit_code, csv.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Index-transform kernels: evaluation, bound verification and expansions";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<UsageError>(m, "UsageError", base.ptr());
    py::register_exception<UnsupportedRoute>(m, "UnsupportedRoute", base.ptr());
    py::register_exception<PrecisionLossError>(m, "PrecisionLossError", base.ptr());
    py::register_exception<NonConvergenceError>(m, "NonConvergenceError", base.ptr());

    m.def("ln_gamma", [](std::complex<double> z) { return ln_gamma(Complex(z.real(), z.imag())).to_std(); });
    m.def("gamma", [](std::complex<double> z) { return gamma(Complex(z.real(), z.imag())).to_std(); });
    m.def("binet_r", [](std::complex<double> z) { return binet_r(Complex(z.real(), z.imag())).to_std(); },
          "Binet remainder r(z) with Gamma(z) = sqrt(2 pi) exp((z-1/2) log z - z)(1 + r(z)).");
    m.def("k_itau", [](double tau, double x) { return ImaginaryOrderK(tau)(x).value.to_double(); },
          py::arg("tau"), py::arg("x"), "K_{i tau}(x).");
    m.def("bessel_j", [](double nu, double x) { return bessel_j(nu, x).value.to_double(); },
          py::arg("nu"), py::arg("x"));

    m.def("eval_kernel", &eval_kernel, py::arg("kernel"), py::arg("x"), py::arg("tau"),
          py::arg("mu") = py::none(), py::arg("nu") = py::none(), py::arg("rho") = py::none(),
          py::arg("route") = "series");

    m.def("check_kl", [](int n, double tau, double x) { return report_dict(check_kl(n, tau, x)); },
          py::arg("n"), py::arg("tau"), py::arg("x"));
    m.def("check_mehler_fock",
          [](int n, double mu, double tau, double x) { return report_dict(check_mehler_fock(n, mu, tau, x)); },
          py::arg("n"), py::arg("mu"), py::arg("tau"), py::arg("x"));
    m.def("check_product", [](double tau, double x) { return report_dict(check_product(tau, x)); },
          py::arg("tau"), py::arg("x"));
    m.def("check_whittaker",
          [](int n, double mu, double tau, double x) { return report_dict(check_whittaker(n, mu, tau, x)); },
          py::arg("n"), py::arg("mu"), py::arg("tau"), py::arg("x"));
    m.def("check_olevskii",
          [](double mu, double nu, double tau, double x) { return report_dict(check_olevskii(mu, nu, tau, x)); },
          py::arg("mu"), py::arg("nu"), py::arg("tau"), py::arg("x"));
    m.def("check_binet", [](double modulus, double arg) { return report_dict(check_binet(modulus, arg)); },
          py::arg("modulus"), py::arg("arg"));

    m.def("fit_lebedev_constants",
          [](double T, int points) {
              LebedevGrid g = lebedev_grid(T, points);
              LebedevFit f = fit_lebedev_constants(T, g.taus, g.xa, g.xb);
              py::dict d;
              d["A"] = f.A;
              d["B"] = f.B;
              d["A_argmax"] = py::make_tuple(f.A_tau, f.A_x);
              d["B_argmax"] = py::make_tuple(f.B_tau, f.B_x);
              d["points"] = f.points;
              return d;
          },
          py::arg("T") = 1.0, py::arg("points") = 50);

    m.def("run", &run, py::arg("command"), py::arg("settings") = py::dict(),
          "Runs a command; settings use the long flag names. Returns (exit_code, csv_text).");
}
