#pragma once

#include <functional>

#include "ikern/bessel.hpp"

namespace ikern {

struct QuadResult {
    Complex value;
    double abs_error_estimate = 0.0;
    int nodes_used = 0;

    double real() const { return value.re.to_double(); }
    double rel_error() const;
};

struct Decay {
    enum Kind { exponential, algebraic } kind = exponential;
    double power = 2.0;  // f ~ t^-power for the algebraic kind

    static Decay exp() { return {}; }
    static Decay alg(double p) { return {algebraic, p}; }
};

/// Integral of f over (0, inf). Exponential decay uses exp-sinh; algebraic
/// decay splits at 1 and maps the tail to (0, 1] by t = 1/u.
QuadResult integrate_semi_infinite(const std::function<Complex(const DoubleDouble&)>& f,
                                   Decay decay, double tol = 1e-20);

struct KernelQuadOptions {
    double rel_tol = 1e-13;
    int max_level = 9;
    double product_tau_cap = 2.0;
    double olevskii_x_cap = 10.0;
};

/// 2 * integral of J_mu(xy)^2 K_{2 i tau}(y) dy.
QuadResult mehler_fock_sq(double mu, double tau, double x, const KernelQuadOptions& opt = {});

/// 2 * integral of J_0(2x sinh t) cos(2 tau t) dt, summed over the zero
/// intervals of J_0 in u = sinh t and extrapolated with the mW transform.
QuadResult product_kernel_quad(double tau, double x, const KernelQuadOptions& opt = {});

/// W_{-mu, i tau}(2x) from its K_{i tau} integral.
QuadResult whittaker_quad(double mu, double tau, double x, const KernelQuadOptions& opt = {});

/// The Olevskii kernel from its J_nu K_{2 i tau} integral.
QuadResult olevskii_quad(double mu, double nu, double tau, double x,
                         const KernelQuadOptions& opt = {});

}  // namespace ikern
