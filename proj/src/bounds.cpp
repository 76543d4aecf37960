#include "ikern/bounds.hpp"

#include <cmath>

#include "ikern/de_rules.hpp"

namespace ikern {

namespace {

double lgamma_real(double a) { return ln_gamma(Complex(a)).re.to_double(); }

double log_sinh_d(double a) { return log_sinh(DoubleDouble(a)).to_double(); }

double log_abs_gamma(double re, double im) { return ln_gamma(Complex(re, im)).re.to_double(); }

void require_pos(double tau, double x, const char* who) {
    if (!(tau > 0.0) || !(x > 0.0)) throw DomainError(std::string(who) + ": requires tau, x > 0");
}

void require_n(int n, const char* who) {
    if (n < 1) throw DomainError(std::string(who) + ": requires n >= 1");
}

KernelPoint point(KernelId k, double tau, double x) {
    KernelPoint p;
    p.kernel = k;
    p.tau = tau;
    p.x = x;
    return p;
}

}  // namespace

BoundReport make_report(std::string id, const KernelPoint& p, int n, double lhs, double rhs,
                        double slack) {
    BoundReport r;
    r.bound_id = std::move(id);
    r.point = p;
    r.n = n;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.holds = lhs <= rhs * (1.0 + slack);
    return r;
}

double bound_kl_rhs(int n, double tau, double x) {
    require_n(n, "bound_kl_rhs");
    require_pos(tau, x, "bound_kl_rhs");
    double a = std::ldexp(1.0, -n);  // 2^{-n}
    double lr = lgamma_real(0.5 * a) - (1.0 - a) * M_LN2 -
                a * (0.5 * std::log(x) + log_sinh_d(std::ldexp(M_PI * tau, n - 1)));
    return std::exp(lr);
}

double bound_mehler_fock_rhs(int n, double mu, double tau, double x) {
    require_n(n, "bound_mehler_fock_rhs");
    require_pos(tau, x, "bound_mehler_fock_rhs");
    double a = std::ldexp(1.0, -n - 1);
    if (!(0.5 + mu - a > 0.0)) throw DomainError("bound_mehler_fock_rhs: requires mu > 2^{-n-1} - 1/2");
    double lr = a * M_LN2 - 0.25 * std::log(M_PI) + lgamma_real(a) +
                0.5 * (lgamma_real(0.5 + mu - a) - lgamma_real(0.5 + a) - lgamma_real(0.5 + mu + a)) -
                a * log_sinh_d(std::ldexp(M_PI * tau, n)) + 0.5 * (2.0 * a - 1.0) * std::log(x) -
                log_abs_gamma(mu + 0.5, tau);
    return std::exp(lr);
}

double bound_product_rhs(double x) {
    if (!(x > 0.0)) throw DomainError("bound_product_rhs: requires x > 0");
    double g = std::tgamma(0.25);
    return g * g / (M_PI * std::sqrt(x));
}

double bound_whittaker_rhs(int n, double mu, double tau, double x) {
    require_n(n, "bound_whittaker_rhs");
    require_pos(tau, x, "bound_whittaker_rhs");
    if (!(mu > 0.0)) throw DomainError("bound_whittaker_rhs: requires mu > 0");
    double a = std::ldexp(1.0, -n);
    double lr = lgamma_real(0.5 * a) - 0.5 * std::log(M_PI) - 0.5 * (1.0 - 2.0 * a) * M_LN2 -
                a * log_sinh_d(std::ldexp(M_PI * tau, n - 1)) +
                (0.5 * (1.0 - a) - mu) * std::log(x);
    return std::exp(lr);
}

double bound_olevskii_rhs(double mu, double nu, double tau, double x) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("bound_olevskii_rhs: requires 0 < mu < 1");
    if (!(nu > -0.5 * mu)) throw DomainError("bound_olevskii_rhs: requires nu > -mu/2");
    require_pos(tau, x, "bound_olevskii_rhs");
    double lr = (0.5 - mu) * M_LN2 + lgamma_real(0.5 * mu) + lgamma_real(nu + 1.0) -
                lgamma_real(0.5 * (1.0 + mu)) +
                0.5 * (std::log(std::tan(0.5 * M_PI * mu)) + lgamma_real(0.5 * mu + nu) -
                       lgamma_real(1.0 - 0.5 * mu + nu)) +
                log_abs_gamma(0.5 * mu, 2.0 * tau) - 2.0 * log_abs_gamma(0.5 * (mu + nu), tau) -
                (nu + 0.5 * mu) * std::log(x);
    return std::exp(lr);
}

BoundReport check_kl(int n, double tau, double x, double slack) {
    double rhs = bound_kl_rhs(n, tau, x);
    double lhs = std::abs(ImaginaryOrderK(tau)(x).value.to_double());
    return make_report("1.1", point(KernelId::kl, tau, x), n, lhs, rhs, slack);
}

BoundReport check_mehler_fock(int n, double mu, double tau, double x, double slack) {
    double rhs = bound_mehler_fock_rhs(n, mu, tau, x);
    double lhs = std::abs(mehler_fock_direct(mu, tau, x).value.to_double());
    KernelPoint p = point(KernelId::mehler_fock, tau, x);
    p.mu = mu;
    return make_report("1.7", p, n, lhs, rhs, slack);
}

BoundReport check_product(double tau, double x, double slack) {
    double rhs = bound_product_rhs(x);
    double lhs = std::abs(product_kernel_direct(tau, x).value.to_double());
    return make_report("1.9", point(KernelId::lebedev_product, tau, x), 0, lhs, rhs, slack);
}

BoundReport check_whittaker(int n, double mu, double tau, double x, double slack) {
    double rhs = bound_whittaker_rhs(n, mu, tau, x);
    // W_{-mu, i tau}(2x) = e^{x} [e^{-x} W_{-mu, i tau}(2x)]
    RealResult w = whittaker_direct(-mu, tau, 2.0 * x);
    double lhs = std::abs((w.value * exp(DoubleDouble(x))).to_double());
    KernelPoint p = point(KernelId::index_whittaker, tau, 2.0 * x);
    p.rho = -mu;
    return make_report("1.11", p, n, lhs, rhs, slack);
}

BoundReport check_olevskii(double mu, double nu, double tau, double x, double slack) {
    double rhs = bound_olevskii_rhs(mu, nu, tau, x);
    double lhs = std::abs(olevskii_direct(mu, nu, tau, x).value.re.to_double());
    KernelPoint p = point(KernelId::olevskii, tau, x);
    p.mu = mu;
    p.nu = nu;
    return make_report("1.13", p, 0, lhs, rhs, slack);
}

BoundReport check_binet(double modulus, double arg, double slack) {
    if (!(modulus > 0.0) || std::abs(arg) > 0.5 * M_PI)
        throw DomainError("check_binet: requires |z| > 0 and Re z >= 0");
    Complex z = polar(DoubleDouble(modulus), DoubleDouble(arg));
    double lhs = de::mag(binet_r(z));
    double rhs = std::expm1(1.0 / (6.0 * modulus));
    KernelPoint p;
    p.x = modulus;
    p.tau = arg;
    return make_report("2.22", p, 0, lhs, rhs, slack);
}

double f11_estimate_rhs(double rho, double tau, double x) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("f11_estimate_rhs: requires 0 < x < 1");
    if (!(tau > 0.0)) throw DomainError("f11_estimate_rhs: requires tau > 0");
    return std::exp(-0.5 * x) *
           (1.0 + (std::pow(1.0 - x, -2.0 * (1.0 + std::abs(rho))) - std::exp(x)) / (2.0 * tau));
}

BoundReport check_f11_estimate(double rho, double tau, double x, double slack) {
    double rhs = f11_estimate_rhs(rho, tau, x);
    double lhs = de::mag(whittaker_f11(rho, tau, x).value);
    KernelPoint p = point(KernelId::index_whittaker, tau, x);
    p.rho = rho;
    return make_report("2.19", p, 0, lhs, rhs, slack);
}

double lebedev_weight_a(double tau, double x) {
    double k = std::abs(ImaginaryOrderK(tau)(x).value.to_double());
    return k * std::pow(tau * x, 0.25) * std::exp(0.5 * log_sinh_d(M_PI * tau));
}

double lebedev_weight_b(double tau, double x) {
    double k = std::abs(ImaginaryOrderK(tau)(x).value.to_double());
    return k * std::pow(tau / x, 0.25) * std::exp(0.5 * log_sinh_d(M_PI * tau));
}

LebedevFit fit_lebedev_constants(double T, const std::vector<double>& taus,
                                 const std::vector<double>& xa, const std::vector<double>& xb) {
    if (!(T > 0.0)) throw DomainError("fit_lebedev_constants: requires T > 0");
    if (taus.empty() || (xa.empty() && xb.empty()))
        throw DomainError("fit_lebedev_constants: empty grid");
    LebedevFit f;
    f.T = T;
    f.tau_min = f.tau_max = taus.front();
    for (double t : taus) {
        f.tau_min = std::min(f.tau_min, t);
        f.tau_max = std::max(f.tau_max, t);
    }
    auto range = [](const std::vector<double>& v, double& lo, double& hi) {
        if (v.empty()) return;
        lo = hi = v.front();
        for (double x : v) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    };
    range(xa, f.xa_min, f.xa_max);
    range(xb, f.xb_min, f.xb_max);
    for (double tau : taus) {
        ImaginaryOrderK k(tau);
        double w = std::exp(0.5 * log_sinh_d(M_PI * tau));
        for (double x : xa) {
            if (!(x > 0.0 && x <= T)) throw DomainError("fit_lebedev_constants: A grid leaves (0, T]");
            double v = std::abs(k(x).value.to_double()) * std::pow(tau * x, 0.25) * w;
            if (v > f.A) f.A = v, f.A_tau = tau, f.A_x = x;
            ++f.points;
        }
        for (double x : xb) {
            if (!(x >= T)) throw DomainError("fit_lebedev_constants: B grid leaves [T, inf)");
            double v = std::abs(k(x).value.to_double()) * std::pow(tau / x, 0.25) * w;
            if (v > f.B) f.B = v, f.B_tau = tau, f.B_x = x;
            ++f.points;
        }
    }
    return f;
}

LebedevGrid lebedev_grid(double T, int n, double offset) {
    if (n < 2) throw DomainError("lebedev_grid: requires n >= 2");
    if (!(T > 1e-3 && T < 20.0)) throw DomainError("lebedev_grid: requires 1e-3 < T < 20");
    LebedevGrid g;
    int m = offset > 0.0 ? n - 1 : n;  // shifted grids keep to the open cells
    for (int i = 0; i < m; ++i) {
        double s = (i + offset) / (n - 1);
        g.taus.push_back(0.25 + (12.0 - 0.25) * s);
        g.xa.push_back(std::exp(std::log(1e-3) + (std::log(T) - std::log(1e-3)) * s));
        g.xb.push_back(T + (20.0 - T) * s);
    }
    return g;
}

}  // namespace ikern
