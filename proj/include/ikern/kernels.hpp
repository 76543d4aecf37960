#pragma once

#include <optional>
#include <string>

#include "ikern/quadrature.hpp"

namespace ikern {

enum class KernelId { kl, lebedev_square, lebedev_product, index_whittaker, mehler_fock, olevskii };
enum class Route { series, quadrature, asymptotic };

std::string to_string(KernelId k);
std::string to_string(Route r);
std::optional<KernelId> parse_kernel(const std::string& s);
std::optional<Route> parse_route(const std::string& s);

/// For IndexWhittaker, x is the argument of W_{rho, i tau}(x) itself.
struct KernelPoint {
    KernelId kernel = KernelId::kl;
    double x = 1.0;
    double tau = 1.0;
    std::optional<double> mu, nu, rho;
};

struct EvalResult {
    Complex value;
    Route route = Route::series;
    double rel_error_estimate = 0.0;
    bool cancellation_flag = false;
};

// Theorem 3: the printed main term cos(2 tau log(x tau / 2e)) or the reading
// cos(2 tau log(2 tau / e x)) that tracks the kernel.
enum class Thm3Phase { printed, corrected };
// Theorem 4: (1 + (1+2 rho)/(4 tau^2)) inside the log as printed, or squared.
enum class Thm4Phase { printed, squared };

struct KernelOptions {
    SeriesControl ctl;
    KernelQuadOptions quad;
    double remainder_slack = 1e-6;
    Thm3Phase thm3_phase = Thm3Phase::printed;
    Thm4Phase thm4_phase = Thm4Phase::printed;
};

EvalResult eval(const KernelPoint& p, Route route, const KernelOptions& opt = {});

struct ExpansionReport {
    double tau = 0.0, x = 0.0;
    double scale_factor = 0.0;  // may underflow; log_scale does not
    double log_scale = 0.0;
    double main_term = 0.0;
    double empirical_remainder = 0.0;
    double remainder_bound = 0.0;
    bool bound_holds = false;
    double kernel_value = 0.0;
    double kernel_rel_error = 0.0;
};

struct MainTerm {
    double main = 0.0;
    double scale = 0.0;
    double log_scale = 0.0;
};

// Theorem 1: K_{i tau}(x) = sqrt(2 pi/tau) e^{-pi tau/2} [cos(tau log(2 tau/(e x)) - pi/4) + R_N].
MainTerm thm1_main(double tau, double x);
double thm1_remainder_explicit(int N, double tau, double x, const SeriesControl& ctl = {});
double thm1_remainder_bound(int N, double tau, double tau0, double X);
ExpansionReport thm1_report(int N, double tau, double x, double tau0, double X,
                            const KernelOptions& opt = {});

/// K_{i tau}(x)^2 from the two 1F2 functions.
RealResult k_squared_direct(double tau, double x, const SeriesControl& ctl = {});
ExpansionReport thm2_main_and_bound(double tau, double x, double tau0, double X,
                                    const KernelOptions& opt = {});
double thm2_remainder_bound(double tau, double tau0, double X);

/// [I_{i tau}(x) + I_{-i tau}(x)] K_{i tau}(x) from the 1F2 representation.
RealResult product_kernel_direct(double tau, double x, const SeriesControl& ctl = {});
ExpansionReport thm3_main_and_bound(double tau, double x, double tau0, double X,
                                    const KernelOptions& opt = {});
double thm3_main(double tau, double x, Thm3Phase phase);
double thm3_remainder_bound(double tau, double tau0, double X);

enum class WhittakerRoute { f11, series218 };
/// e^{-x/2} W_{rho, i tau}(x).
RealResult whittaker_direct(double rho, double tau, double x,
                            WhittakerRoute route = WhittakerRoute::f11,
                            const SeriesControl& ctl = {});
/// The 1F1(1/2 + rho + i tau; 1 + 2 i tau; -x) of the Whittaker kernel.
SeriesResult whittaker_f11(double rho, double tau, double x, const SeriesControl& ctl = {});
MainTerm thm4_main(double rho, double tau, double x, Thm4Phase phase);
double thm4_remainder_explicit(double rho, double tau, double x, Thm4Phase phase,
                               const SeriesControl& ctl = {});
double thm4_remainder_bound(double rho, double tau, double tau0, double x0);
ExpansionReport thm4_main_and_bound(double rho, double tau, double x, double tau0, double x0,
                                    const KernelOptions& opt = {});

/// P^{-mu}_{-1/2 + i tau}(sqrt(1 + 4x^2)) from its 2F1 form.
RealResult mehler_fock_direct(double mu, double tau, double x, const SeriesControl& ctl = {});

/// 2F1((mu+nu)/2 + i tau, (mu+nu)/2 - i tau; nu + 1; -x^2).
EvalResult olevskii_direct(double mu, double nu, double tau, double x,
                           const SeriesControl& ctl = {});
/// Leading term of the large-tau expansion of the Olevskii kernel; value is
/// the real part, the imaginary residual is reported through rel_error.
EvalResult olevskii_main(double mu, double nu, double tau, double x);

/// Amplitude of the asymptotic route at p, the scale its main term multiplies.
double asymptotic_envelope(const KernelPoint& p, const KernelOptions& opt = {});

}  // namespace ikern
