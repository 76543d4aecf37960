#include "ikern/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ikern/de_rules.hpp"

namespace ikern {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = DoubleDouble::epsilon();

double rel_of(double abs_err, double value) {
    double m = std::abs(value);
    return m > 0.0 ? abs_err / m : kInf;
}

double require(const std::optional<double>& v, const char* what) {
    if (!v) throw UsageError(std::string("kernel point requires ") + what);
    return *v;
}

void require_positive(double tau, double x, const char* who) {
    if (!(tau > 0.0) || !(x > 0.0)) throw DomainError(std::string(who) + ": requires tau, x > 0");
}

// tau log(2 tau/(e x)), exact to double-double.
DoubleDouble kl_phase(double tau, double x) {
    DoubleDouble t = tau;
    return t * (log(2.0 * t) - 1.0 - log(DoubleDouble(x)));
}

double cos_reduced(const DoubleDouble& a) { return cos(reduce_angle(a)).to_double(); }
double sin_reduced(const DoubleDouble& a) { return sin(reduce_angle(a)).to_double(); }

Complex expi(const DoubleDouble& phase) {
    DoubleDouble s, c;
    sincos(reduce_angle(phase), s, c);
    return {c, s};
}

double bessel_i_real(int n, double x) { return bessel_i(Complex(n), x).value.re.to_double(); }

RealResult k_oracle(double tau, double x) { return ImaginaryOrderK(tau)(x); }

EvalResult from_real(const RealResult& r, Route route) {
    EvalResult e;
    e.value = Complex(r.value);
    e.route = route;
    e.rel_error_estimate = r.rel_error;
    e.cancellation_flag = r.cancellation;
    return e;
}

EvalResult from_quad(const QuadResult& q) {
    EvalResult e;
    e.value = q.value;
    e.route = Route::quadrature;
    e.rel_error_estimate = q.rel_error();
    return e;
}

}  // namespace

std::string to_string(KernelId k) {
    switch (k) {
        case KernelId::kl: return "kl";
        case KernelId::lebedev_square: return "lebedev-square";
        case KernelId::lebedev_product: return "lebedev-product";
        case KernelId::index_whittaker: return "whittaker";
        case KernelId::mehler_fock: return "mehler-fock";
        case KernelId::olevskii: return "olevskii";
    }
    return "?";
}

std::string to_string(Route r) {
    switch (r) {
        case Route::series: return "series";
        case Route::quadrature: return "quadrature";
        case Route::asymptotic: return "asymptotic";
    }
    return "?";
}

std::optional<KernelId> parse_kernel(const std::string& s) {
    for (KernelId k : {KernelId::kl, KernelId::lebedev_square, KernelId::lebedev_product,
                       KernelId::index_whittaker, KernelId::mehler_fock, KernelId::olevskii}) {
        if (s == to_string(k)) return k;
    }
    if (s == "square") return KernelId::lebedev_square;
    if (s == "product") return KernelId::lebedev_product;
    return std::nullopt;
}

std::optional<Route> parse_route(const std::string& s) {
    if (s == "series" || s == "direct") return Route::series;
    if (s == "quadrature" || s == "quad") return Route::quadrature;
    if (s == "asymptotic") return Route::asymptotic;
    return std::nullopt;
}

// ---- Theorem 1

MainTerm thm1_main(double tau, double x) {
    require_positive(tau, x, "thm1_main");
    MainTerm m;
    m.main = cos_reduced(kl_phase(tau, x) - ldexp(dd_const::half_pi, -1));
    m.log_scale = 0.5 * std::log(2.0 * M_PI / tau) - 0.5 * M_PI * tau;
    m.scale = std::exp(m.log_scale);
    return m;
}

double thm1_remainder_explicit(int N, double tau, double x, const SeriesControl& ctl) {
    if (N < 0) throw DomainError("thm1_remainder_explicit: requires N >= 0");
    require_positive(tau, x, "thm1_remainder_explicit");
    Complex r = binet_r(Complex(0.0, tau));
    Complex a(1.0, -tau);
    DoubleDouble q = sqr(ldexp(DoubleDouble(x), -1));
    // term_m = (x/2)^{2m} / (m! (1 - i tau)_m)
    Complex term(1.0), sum;
    for (int m = 1; m <= N + 1; ++m) {
        term = term * q / (Complex(a.re + (m - 1.0), a.im) * static_cast<double>(m));
        if (m <= N) sum += term;
    }
    SeriesResult f = hyp1f2(Complex(1.0), Complex(N + 2.0, -tau), Complex(N + 2.0), Complex(q), ctl);
    Complex inner = r + (1.0 + r) * (sum + term * f.value);
    Complex e = expi(kl_phase(tau, x) - ldexp(dd_const::half_pi, -1));
    return (e * inner).re.to_double();
}

double thm1_remainder_bound(int N, double tau, double tau0, double X) {
    if (!(tau >= tau0 && tau0 > 0.0 && X > 0.0))
        throw DomainError("thm1_remainder_bound: requires tau >= tau0 > 0, X > 0");
    double e = std::exp(1.0 / (6.0 * tau0));
    // I_N(X)/X^N - 1/(2^N N!) in extended precision; the leading series term cancels
    DoubleDouble in = bessel_i(Complex(N), X).value.re / pow(DoubleDouble(X), N);
    DoubleDouble lead = 1.0;
    for (int k = 1; k <= N; ++k) lead = lead / (2.0 * k);
    double tail = (in - lead).to_double() * std::pow(X * X / (2.0 * tau0), N);
    return (e / 6.0 + (tau0 + e / 6.0) * (std::exp(X * X / (4.0 * tau0)) + tail)) / tau;
}

ExpansionReport thm1_report(int N, double tau, double x, double tau0, double X,
                            const KernelOptions& opt) {
    if (!(x > 0.0 && x <= X)) throw DomainError("theorem 1: requires 0 < x <= X");
    ExpansionReport rep;
    rep.tau = tau;
    rep.x = x;
    MainTerm m = thm1_main(tau, x);
    rep.scale_factor = m.scale;
    rep.log_scale = m.log_scale;
    rep.main_term = m.main;
    RealResult k = k_oracle(tau, x);
    rep.kernel_value = k.value.to_double();
    rep.kernel_rel_error = k.rel_error;
    rep.empirical_remainder = (k.value * exp(DoubleDouble(-m.log_scale))).to_double() - m.main;
    rep.remainder_bound = thm1_remainder_bound(N, tau, tau0, X);
    rep.bound_holds =
        std::abs(rep.empirical_remainder) <= rep.remainder_bound * (1.0 + opt.remainder_slack);
    return rep;
}

// ---- Theorem 2

RealResult k_squared_direct(double tau, double x, const SeriesControl& ctl) {
    require_positive(tau, x, "k_squared_direct");
    DoubleDouble t = tau;
    DoubleDouble c1 = dd_const::pi / (2.0 * t * sinh(dd_const::pi * t));
    Complex x2(sqr(DoubleDouble(x)));
    SeriesResult f1 = hyp1f2(Complex(0.5), Complex(1.0, tau), Complex(1.0, -tau), x2, ctl);
    SeriesResult f2 = hyp1f2(Complex(0.5, -tau), Complex(1.0, -tau), Complex(1.0, -2.0 * tau), x2, ctl);
    Complex g = exp(Complex(0.0, -2.0 * tau) * log(Complex(ldexp(DoubleDouble(x), -1))) +
                    2.0 * ln_gamma(Complex(0.0, tau)));
    DoubleDouble a = c1 * f1.value.re;
    Complex b = g * f2.value;
    RealResult out;
    out.value = a + ldexp(b.re, -1);
    double sa = std::abs(a.hi()), sb = 0.5 * de::mag(b);
    double abs_err = sa * (f1.rel_error + 4.0 * kEps) + sb * (f2.rel_error + 4.0 * kEps);
    out.rel_error = rel_of(abs_err, out.value.to_double());
    out.cancellation = (sa + sb) > 1e6 * std::abs(out.value.hi());
    out.work = f1.terms + f2.terms;
    return out;
}

double thm2_remainder_bound(double tau, double tau0, double X) {
    if (!(tau >= tau0 && tau0 > 0.0 && X > 0.0))
        throw DomainError("thm2_remainder_bound: requires tau >= tau0 > 0, X > 0");
    double c = std::sqrt(1.0 / std::tanh(M_PI * tau0));
    double i1 = bessel_i_real(1, 2.0 * X);
    return 4.0 * X * c / std::sqrt(M_PI * tau) * i1 +
           (8.0 * X * c / std::sqrt(M_PI * tau0) * i1 + std::exp(1.0 / (6.0 * tau0)) +
            2.0 * X * X + std::exp(1.0 / (3.0 * tau0)) / (12.0 * tau0)) /
               tau;
}

ExpansionReport thm2_main_and_bound(double tau, double x, double tau0, double X,
                                    const KernelOptions& opt) {
    require_positive(tau, x, "theorem 2");
    if (!(x <= X)) throw DomainError("theorem 2: requires 0 < x <= X");
    ExpansionReport rep;
    rep.tau = tau;
    rep.x = x;
    DoubleDouble t = tau;
    DoubleDouble log_scale = log(dd_const::pi / (2.0 * t)) - log_sinh(dd_const::pi * t);
    rep.log_scale = log_scale.to_double();
    rep.scale_factor = std::exp(rep.log_scale);
    rep.main_term = 1.0 + sin_reduced(2.0 * kl_phase(tau, x));
    RealResult k = k_oracle(tau, x);
    DoubleDouble k2 = sqr(k.value);
    rep.kernel_value = k2.to_double();
    rep.kernel_rel_error = 2.0 * k.rel_error;
    rep.empirical_remainder = (k2 * exp(-log_scale)).to_double() - rep.main_term;
    rep.remainder_bound = thm2_remainder_bound(tau, tau0, X);
    rep.bound_holds =
        std::abs(rep.empirical_remainder) <= rep.remainder_bound * (1.0 + opt.remainder_slack);
    return rep;
}

// ---- Theorem 3

RealResult product_kernel_direct(double tau, double x, const SeriesControl& ctl) {
    require_positive(tau, x, "product_kernel_direct");
    Complex g = exp(Complex(0.0, 2.0 * tau) * log(Complex(ldexp(DoubleDouble(x), -1))) +
                    ln_gamma(Complex(0.0, -tau)) - ln_gamma(Complex(1.0, tau)));
    SeriesResult f = hyp1f2(Complex(0.5, tau), Complex(1.0, tau), Complex(1.0, 2.0 * tau),
                            Complex(sqr(DoubleDouble(x))), ctl);
    Complex v = g * f.value;
    RealResult out;
    out.value = v.re;
    double mag = de::mag(v);
    out.rel_error = rel_of(mag * (f.rel_error + 8.0 * kEps), out.value.to_double());
    out.cancellation = de::mag(g) * f.max_term > 1e6 * std::abs(out.value.hi());
    out.work = f.terms;
    return out;
}

double thm3_main(double tau, double x, Thm3Phase phase) {
    require_positive(tau, x, "thm3_main");
    if (phase == Thm3Phase::corrected) return cos_reduced(2.0 * kl_phase(tau, x));
    DoubleDouble t = tau;
    return cos_reduced(2.0 * t * (log(DoubleDouble(x) * t / 2.0) - 1.0));
}

double thm3_remainder_bound(double tau, double tau0, double X) {
    if (!(tau >= tau0 && tau0 > 0.0 && X > 0.0))
        throw DomainError("thm3_remainder_bound: requires tau >= tau0 > 0, X > 0");
    double st = std::sqrt(tau);
    double i1 = bessel_i_real(1, 2.0 * X);
    double inner = X * std::sqrt(M_PI) / std::sqrt(std::tanh(M_PI * tau0)) * i1 +
                   (1.0 - std::exp(-2.0 * M_PI * tau0)) / (6.0 * st) * std::exp(1.0 / (3.0 * tau0)) *
                       (1.0 + X * X / tau0 * (1.0 + 1.0 / tau0)) +
                   X * X / st * (1.0 + 1.0 / tau0) + st * std::exp(-2.0 * M_PI * tau);
    return inner / st;
}

ExpansionReport thm3_main_and_bound(double tau, double x, double tau0, double X,
                                    const KernelOptions& opt) {
    require_positive(tau, x, "theorem 3");
    if (!(x <= X)) throw DomainError("theorem 3: requires 0 < x <= X");
    ExpansionReport rep;
    rep.tau = tau;
    rep.x = x;
    rep.scale_factor = 1.0 / tau;
    rep.log_scale = -std::log(tau);
    rep.main_term = thm3_main(tau, x, opt.thm3_phase);
    RealResult p = product_kernel_direct(tau, x, opt.ctl);
    rep.kernel_value = p.value.to_double();
    rep.kernel_rel_error = p.rel_error;
    rep.empirical_remainder = (p.value * tau).to_double() - rep.main_term;
    rep.remainder_bound = thm3_remainder_bound(tau, tau0, X);
    rep.bound_holds =
        std::abs(rep.empirical_remainder) <= rep.remainder_bound * (1.0 + opt.remainder_slack);
    return rep;
}

// ---- Whittaker kernel and Theorem 4

SeriesResult whittaker_f11(double rho, double tau, double x, const SeriesControl& ctl) {
    require_positive(tau, x, "whittaker_f11");
    return hyp1f1(Complex(0.5 + rho, tau), Complex(1.0, 2.0 * tau), Complex(-x), ctl);
}

RealResult whittaker_direct(double rho, double tau, double x, WhittakerRoute route,
                            const SeriesControl& ctl) {
    require_positive(tau, x, "whittaker_direct");
    Complex pref = exp(ln_gamma(Complex(0.0, -2.0 * tau)) - ln_gamma(Complex(0.5 - rho, -tau)) +
                       Complex(0.5, tau) * log(DoubleDouble(x)));
    Complex f;
    double rel = 0.0;
    if (route == WhittakerRoute::f11) {
        SeriesResult s = whittaker_f11(rho, tau, x, ctl);
        f = s.value;
        rel = s.rel_error;
    } else {
        if (!(std::abs(rho) < 0.5)) throw DomainError("whittaker_direct: series route needs |rho| < 1/2");
        if (!(x < 1.0)) throw DomainError("whittaker_direct: series route needs x < 1");
        Complex sum(1.0);
        DoubleDouble w = 1.0, half = ldexp(DoubleDouble(x), -1);
        double max_term = 1.0, prev = kInf;
        int small = 0, k = 1;
        for (; k <= ctl.max_terms; ++k) {
            w = w * half / static_cast<double>(k);
            Complex term = hyp2f1_term2(k, rho, tau) * w;
            sum += term;
            double m = de::mag(term);
            max_term = std::max(max_term, m);
            if (m < ctl.rel_tol * de::mag(sum) && m < prev) {
                if (++small >= 3) break;
            } else {
                small = 0;
            }
            prev = m;
        }
        if (k > ctl.max_terms)
            throw NonConvergenceError("whittaker_direct: series did not converge", sum.to_std(), prev);
        f = exp(DoubleDouble(-0.5 * x)) * sum;
        // each terminating sum loses up to 3^k against its terms
        rel = (ctl.rel_tol + 8.0 * kEps * max_term * std::pow(3.0, std::min(k, 200))) /
              std::max(1e-300, de::mag(sum));
    }
    Complex v = pref * f;
    RealResult out;
    out.value = 2.0 * v.re;
    out.rel_error = rel_of(2.0 * de::mag(v) * (rel + 8.0 * kEps), out.value.to_double());
    out.cancellation = de::mag(v) > 1e6 * std::abs(v.re.hi());
    return out;
}

namespace {

struct Thm4Phases {
    DoubleDouble core;  // tau log[...] - rho arctan((1+2rho)/(2 tau))
    DoubleDouble log_scale;
};

Thm4Phases thm4_phases(double rho, double tau, double x, Thm4Phase phase) {
    DoubleDouble t = tau, r = rho;
    DoubleDouble a = (1.0 + 2.0 * r) / (2.0 * t);
    DoubleDouble at = atan(a);
    DoubleDouble q = phase == Thm4Phase::printed ? 1.0 + 2.0 * r : sqr(1.0 + 2.0 * r);
    Thm4Phases p;
    p.core = t * (1.0 + log(DoubleDouble(x) / (4.0 * t)) + ldexp(log1p(q / (4.0 * sqr(t))), -1)) -
             r * at;
    p.log_scale = ldexp(log(2.0 * DoubleDouble(x)), -1) - ldexp(dd_const::pi * t, -1) +
                  (r - 0.5) * log(t) + t * at - 0.5 - r +
                  ldexp(r * log1p(sqr(1.0 + 2.0 * r) / (4.0 * sqr(t))), -1);
    return p;
}

}  // namespace

MainTerm thm4_main(double rho, double tau, double x, Thm4Phase phase) {
    require_positive(tau, x, "thm4_main");
    Thm4Phases p = thm4_phases(rho, tau, x, phase);
    MainTerm m;
    m.main = cos_reduced(p.core - dd_const::half_pi * (rho - 0.5));
    m.log_scale = p.log_scale.to_double();
    m.scale = std::exp(m.log_scale);
    return m;
}

double thm4_remainder_explicit(double rho, double tau, double x, Thm4Phase phase,
                               const SeriesControl& ctl) {
    require_positive(tau, x, "thm4_remainder_explicit");
    Thm4Phases p = thm4_phases(rho, tau, x, phase);
    Complex r1 = binet_r(Complex(0.5 + rho, tau));
    Complex r2 = binet_r(Complex(0.0, -2.0 * tau));
    // 1 + sum (x/2)^k/k! 2F1(-k; ...; 2) = e^{x/2} 1F1(...; -x)
    Complex s = exp(DoubleDouble(0.5 * x)) * whittaker_f11(rho, tau, x, ctl).value;
    Complex g = (1.0 + r1) * (1.0 + r2) * s;
    Complex e1 = expi(p.core - dd_const::half_pi * (rho - 0.5));
    Complex e2 = expi(p.core + dd_const::half_pi * (3.0 * rho + 0.5));
    DoubleDouble damp = exp(DoubleDouble(-2.0 * M_PI * tau));
    return ((e1 * (g - 1.0)).re + damp * (e2 * g).re).to_double();
}

double thm4_remainder_bound(double rho, double tau, double tau0, double x0) {
    if (!(tau >= tau0 && tau0 > 0.0)) throw DomainError("thm4_remainder_bound: requires tau >= tau0 > 0");
    if (!(x0 > 0.0 && x0 < 1.0)) throw DomainError("thm4_remainder_bound: requires 0 < x0 < 1");
    double e = std::exp(1.0 / tau0);
    double q = std::pow(1.0 - x0, -2.0 * (1.0 + std::abs(rho))) - std::exp(x0);
    double f = 1.0 + e / tau;
    return (e * (2.0 + e) + f * f * (q + std::exp(-2.0 * M_PI * tau) * (tau + q))) / tau;
}

ExpansionReport thm4_main_and_bound(double rho, double tau, double x, double tau0, double x0,
                                    const KernelOptions& opt) {
    if (!(std::abs(rho) < 0.5)) throw DomainError("theorem 4: requires |rho| < 1/2");
    if (!(x > 0.0 && x <= x0)) throw DomainError("theorem 4: requires 0 < x <= x0");
    ExpansionReport rep;
    rep.tau = tau;
    rep.x = x;
    MainTerm m = thm4_main(rho, tau, x, opt.thm4_phase);
    rep.scale_factor = m.scale;
    rep.log_scale = m.log_scale;
    rep.main_term = m.main;
    RealResult w = whittaker_direct(rho, tau, x, WhittakerRoute::f11, opt.ctl);
    DoubleDouble wv = w.value * exp(DoubleDouble(0.5 * x));
    rep.kernel_value = wv.to_double();
    rep.kernel_rel_error = w.rel_error;
    rep.empirical_remainder = (wv * exp(DoubleDouble(-m.log_scale))).to_double() - m.main;
    rep.remainder_bound = thm4_remainder_bound(rho, tau, tau0, x0);
    rep.bound_holds =
        std::abs(rep.empirical_remainder) <= rep.remainder_bound * (1.0 + opt.remainder_slack);
    return rep;
}

// ---- Mehler-Fock and Olevskii

RealResult mehler_fock_direct(double mu, double tau, double x, const SeriesControl& ctl) {
    if (!(mu > -0.5)) throw DomainError("mehler_fock_direct: requires mu > -1/2");
    require_positive(tau, x, "mehler_fock_direct");
    DoubleDouble xx = x;
    DoubleDouble z = sqrt(1.0 + 4.0 * sqr(xx));
    DoubleDouble w = -2.0 * sqr(xx) / (1.0 + z);            // (1 - z)/2
    DoubleDouble ratio = 4.0 * sqr(xx) / sqr(z + 1.0);      // (z - 1)/(z + 1)
    SeriesResult f = hyp2f1(Complex(0.5, -tau), Complex(0.5, tau), Complex(1.0 + mu), w.to_double(), ctl);
    DoubleDouble pref = exp(DoubleDouble(0.5 * mu) * log(ratio) - ln_gamma(Complex(1.0 + mu)).re);
    RealResult out;
    out.value = pref * f.value.re;
    out.rel_error = f.rel_error + 8.0 * kEps;
    out.cancellation = std::abs(f.value.im.hi()) > 1e-15 * std::abs(f.value.re.hi()) + 1e-300 ||
                       f.max_term > 1e6 * de::mag(f.value);
    out.work = f.terms;
    return out;
}

EvalResult olevskii_direct(double mu, double nu, double tau, double x, const SeriesControl& ctl) {
    if (!(mu + nu > 0.0)) throw DomainError("olevskii_direct: requires mu + nu > 0");
    if (!(nu > -1.0)) throw DomainError("olevskii_direct: requires nu > -1");
    require_positive(tau, x, "olevskii_direct");
    double s = 0.5 * (mu + nu);
    SeriesResult f = hyp2f1(Complex(s, tau), Complex(s, -tau), Complex(nu + 1.0), -x * x, ctl);
    EvalResult e;
    e.value = f.value;
    e.route = Route::series;
    double re = std::abs(f.value.re.hi()), im = std::abs(f.value.im.hi());
    e.rel_error_estimate = f.rel_error;
    e.cancellation_flag = im > 1e-15 * re || f.max_term > 1e6 * de::mag(f.value);
    return e;
}

namespace {

struct OlevskiiMainParts {
    Complex pref;
    double bracket = 0.0;
    double osc = 0.0;
};

OlevskiiMainParts olevskii_main_parts(double mu, double nu, double tau, double x) {
    require_positive(tau, x, "olevskii_main");
    if (!(mu + nu > 0.0)) throw DomainError("olevskii_main: requires mu + nu > 0");
    DoubleDouble xx = x, t = tau;
    double a = 0.5 * (mu - 0.5);
    // log sin(pi(a - i tau)) = pi tau + i pi a - log(2i) + log(1 - e^{-2 pi tau - 2 i pi a})
    DoubleDouble pa = dd_const::pi * a;
    Complex tail = exp(Complex(-2.0 * dd_const::pi * t, -2.0 * pa));
    Complex log_sin = Complex(dd_const::pi * t, pa) - Complex(dd_const::ln2, dd_const::half_pi) +
                      log(1.0 - tail);
    Complex lg_s = ln_gamma(Complex(0.5 * (mu + nu), tau));
    Complex log_pref = Complex((1.5 - mu) * dd_const::ln2 + ldexp(log(dd_const::pi), -1) -
                               (nu + 0.5) * log(xx) + ((0.5 - mu) / 2.0) * log1p(sqr(xx)) +
                               ln_gamma(Complex(nu + 1.0)).re - 2.0 * lg_s.re) +
                       ln_gamma(Complex(mu - 0.5, 2.0 * tau)) - ln_gamma(Complex(1.0, 2.0 * tau)) -
                       log_sin;
    OlevskiiMainParts p;
    p.pref = exp(log_pref);
    double c = std::cos(0.5 * M_PI * (nu + 0.5)), sn = std::sin(0.5 * M_PI * (nu + 0.5));
    p.bracket = c + (1.0 - nu * nu) / (8.0 * x) * sn;
    p.osc = cos_reduced(2.0 * t * asinh(xx));
    return p;
}

}  // namespace

EvalResult olevskii_main(double mu, double nu, double tau, double x) {
    OlevskiiMainParts p = olevskii_main_parts(mu, nu, tau, x);
    Complex v = p.pref * (p.bracket * p.osc);
    EvalResult e;
    e.value = v;
    e.route = Route::asymptotic;
    double re = std::abs(v.re.hi()), im = std::abs(v.im.hi());
    e.rel_error_estimate = re > 0.0 ? im / re : kInf;
    return e;
}

double asymptotic_envelope(const KernelPoint& p, const KernelOptions& opt) {
    double x = p.x, tau = p.tau;
    switch (p.kernel) {
        case KernelId::kl: return thm1_main(tau, x).scale;
        case KernelId::lebedev_square: {
            DoubleDouble t = tau;
            return (dd_const::pi / (2.0 * t * sinh(dd_const::pi * t))).to_double();
        }
        case KernelId::lebedev_product: return 1.0 / tau;
        case KernelId::index_whittaker:
            return thm4_main(require(p.rho, "rho"), tau, x, opt.thm4_phase).scale;
        case KernelId::olevskii: {
            OlevskiiMainParts q =
                olevskii_main_parts(require(p.mu, "mu"), require(p.nu, "nu"), tau, x);
            return de::mag(q.pref) * std::abs(q.bracket);
        }
        case KernelId::mehler_fock: break;
    }
    throw UnsupportedRoute("no asymptotic route for " + to_string(p.kernel));
}

// ---- dispatch

EvalResult eval(const KernelPoint& p, Route route, const KernelOptions& opt) {
    double x = p.x, tau = p.tau;
    require_positive(tau, x, "eval");
    switch (p.kernel) {
        case KernelId::kl:
            switch (route) {
                case Route::series: return from_real(k_itau_series(tau, x, opt.ctl), route);
                case Route::quadrature: return from_real(k_itau_quad(tau, x), route);
                case Route::asymptotic: {
                    MainTerm m = thm1_main(tau, x);
                    EvalResult e;
                    e.value = Complex(m.scale * m.main);
                    e.route = route;
                    e.rel_error_estimate = 1.0 / tau;
                    return e;
                }
            }
            break;
        case KernelId::lebedev_square:
            switch (route) {
                case Route::series: return from_real(k_squared_direct(tau, x, opt.ctl), route);
                case Route::quadrature: {
                    RealResult k = k_itau_quad(tau, x);
                    k.value = sqr(k.value);
                    k.rel_error *= 2.0;
                    return from_real(k, route);
                }
                case Route::asymptotic: {
                    DoubleDouble t = tau;
                    double scale = (dd_const::pi / (2.0 * t * sinh(dd_const::pi * t))).to_double();
                    EvalResult e;
                    e.value = Complex(scale * (1.0 + sin_reduced(2.0 * kl_phase(tau, x))));
                    e.route = route;
                    e.rel_error_estimate = 1.0 / std::sqrt(tau);
                    return e;
                }
            }
            break;
        case KernelId::lebedev_product:
            switch (route) {
                case Route::series: return from_real(product_kernel_direct(tau, x, opt.ctl), route);
                case Route::quadrature: return from_quad(product_kernel_quad(tau, x, opt.quad));
                case Route::asymptotic: {
                    EvalResult e;
                    e.value = Complex(thm3_main(tau, x, opt.thm3_phase) / tau);
                    e.route = route;
                    e.rel_error_estimate = 1.0 / std::sqrt(tau);
                    return e;
                }
            }
            break;
        case KernelId::index_whittaker: {
            double rho = require(p.rho, "rho");
            switch (route) {
                case Route::series: {
                    RealResult w = whittaker_direct(rho, tau, x, WhittakerRoute::f11, opt.ctl);
                    w.value = w.value * exp(DoubleDouble(0.5 * x));
                    return from_real(w, route);
                }
                case Route::quadrature:
                    if (!(rho < 0.0))
                        throw UnsupportedRoute("whittaker quadrature covers W_{-mu, i tau} with mu > 0 only");
                    return from_quad(whittaker_quad(-rho, tau, 0.5 * x, opt.quad));
                case Route::asymptotic: {
                    MainTerm m = thm4_main(rho, tau, x, opt.thm4_phase);
                    EvalResult e;
                    e.value = Complex(m.scale * m.main);
                    e.route = route;
                    e.rel_error_estimate = 1.0 / tau;
                    return e;
                }
            }
            break;
        }
        case KernelId::mehler_fock: {
            double mu = require(p.mu, "mu");
            switch (route) {
                case Route::series: return from_real(mehler_fock_direct(mu, tau, x, opt.ctl), route);
                case Route::quadrature: {
                    // the representation gives the square; the sign is not recoverable
                    QuadResult q = mehler_fock_sq(mu, tau, x, opt.quad);
                    DoubleDouble g = exp(ln_gamma(Complex(mu + 0.5, tau)).re);
                    EvalResult e;
                    e.value = Complex(sqrt(abs(q.value.re)) / g);
                    e.route = route;
                    e.rel_error_estimate = 0.5 * q.rel_error();
                    return e;
                }
                case Route::asymptotic:
                    throw UnsupportedRoute("mehler-fock kernel has no asymptotic route");
            }
            break;
        }
        case KernelId::olevskii: {
            double mu = require(p.mu, "mu"), nu = require(p.nu, "nu");
            switch (route) {
                case Route::series: return olevskii_direct(mu, nu, tau, x, opt.ctl);
                case Route::quadrature: return from_quad(olevskii_quad(mu, nu, tau, x, opt.quad));
                case Route::asymptotic: return olevskii_main(mu, nu, tau, x);
            }
            break;
        }
    }
    throw UnsupportedRoute("unsupported route " + to_string(route) + " for " + to_string(p.kernel));
}

}  // namespace ikern
