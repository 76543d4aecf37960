#pragma once

#include "ikern/special.hpp"

namespace ikern {

/// A real value with its estimated relative error.
struct RealResult {
    DoubleDouble value;
    double rel_error = 0.0;
    bool cancellation = false;  // imaginary residual or interior cancellation exceeded limits
    int work = 0;               // series terms or quadrature nodes
};

enum class KRoute { series, quadrature };

/// Modified Bessel function of the first kind, complex order, by its power series.
SeriesResult bessel_i(const Complex& nu, double x, const SeriesControl& ctl = {});

/// Bessel function of the first kind: power series for x <= 20 + nu^2/2,
/// large-argument expansion beyond.
RealResult bessel_j(double nu, double x, const SeriesControl& ctl = {});
RealResult bessel_j_series(double nu, double x, const SeriesControl& ctl = {});
RealResult bessel_j_asymptotic(double nu, double x);
/// a_n(nu) of the large-argument expansion.
DoubleDouble bessel_j_coefficient(int n, double nu);
double bessel_j_switch_radius(double nu);

/// K_nu(x), nu >= 0 real, from the integral of exp(-x cosh t) cosh(nu t).
RealResult bessel_k_real(double nu, double x);

/// K_{i tau}(x) from the integral of exp(-x cosh t) cos(tau t).
RealResult k_itau_quad(double tau, double x, double loss_threshold = 1e-6);
/// K_{i tau}(x) assembled from I_{-i tau} and I_{i tau}.
RealResult k_itau_series(double tau, double x, const SeriesControl& ctl = {},
                         double loss_threshold = 1e-6);

/// K_{i tau} at fixed tau, reusing the gamma factors across arguments. The
/// automatic route takes the series while it keeps its digits and falls back
/// to quadrature for larger arguments.
class ImaginaryOrderK {
public:
    explicit ImaginaryOrderK(double tau, SeriesControl ctl = {});

    double tau() const { return tau_; }
    RealResult series(double x) const;
    RealResult quad(double x) const;
    RealResult operator()(double x) const;
    /// I_{i tau}(x); the series of its conjugate is I_{-i tau}.
    SeriesResult i_plus(double x) const;
    SeriesResult i_minus(double x) const;

private:
    SeriesResult i_order(double x, int sign) const;

    double tau_;
    SeriesControl ctl_;
    Complex lg_plus_;   // ln Gamma(1 + i tau)
    Complex lg_minus_;  // ln Gamma(1 - i tau)
    DoubleDouble pi_over_sinh_;
};

}  // namespace ikern
