#include "ikern/bessel.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <string>

#include "ikern/de_rules.hpp"

namespace ikern {

namespace {

constexpr double kEps = DoubleDouble::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_negative_integer(const Complex& nu) {
    return nu.im.hi() == 0.0 && nu.re.hi() < 0.0 && floor(nu.re) == nu.re;
}

// 1/Gamma(z), zero at the poles
Complex recip_gamma(const Complex& z) {
    if (z.im.hi() == 0.0 && z.re.hi() <= 0.0) {
        if (floor(z.re) == z.re) return 0.0;
        return 1.0 / gamma(z);
    }
    return exp(-ln_gamma(z));
}

// Upper limit where exp(-x (cosh t - 1) + nu t) has dropped below e^-margin.
double cosh_cutoff(double x, double nu, double margin) {
    double t = std::max(0.5, std::asinh(nu / x));
    while (x * (std::cosh(t) - 1.0) - nu * t < margin) t += 0.25;
    return t;
}

RealResult cosh_integral(double x, const DoubleDouble& tmax, double h0,
                         const std::function<DoubleDouble(const DoubleDouble&)>& weight) {
    if (!(x > 0.0)) throw DomainError("K integral: requires x > 0");
    if (x > 700.0) throw NumericalFailure("K integral: exp(-x) underflows for x > 700");
    DoubleDouble xx = x;
    auto f = [&](const DoubleDouble& t) { return exp(-(xx * cosh(t))) * weight(t); };
    de::Options opt;
    opt.rel_tol = 1e-28;
    opt.floor_rel = 4.0 * kEps;
    opt.min_level = 2;
    opt.max_level = 10;
    auto r = de::trapezoid<DoubleDouble>(f, DoubleDouble(0.0), tmax, h0, opt);
    RealResult out;
    out.value = r.value;
    out.work = r.nodes;
    double abs_err = r.abs_error + 4.0 * kEps * r.abs_sum;
    double m = std::abs(r.value.hi());
    out.rel_error = m > 0.0 ? abs_err / m : kInf;
    if (!r.converged) out.rel_error = std::max(out.rel_error, 1.0);
    return out;
}

RealResult k_itau_quad_raw(double tau, double x) {
    double margin = 75.0 + 0.5 * M_PI * std::abs(tau);
    double tmax = cosh_cutoff(x, 0.0, margin);
    double h0 = std::min(0.5, tmax / 4.0);
    DoubleDouble tt = tau;
    return cosh_integral(x, tmax, h0, [&](const DoubleDouble& t) { return cos(tt * t); });
}

}  // namespace

SeriesResult bessel_i(const Complex& nu, double x, const SeriesControl& ctl) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_i: requires finite x >= 0");
    if (is_negative_integer(nu)) return bessel_i(-nu, x, ctl);
    if (x == 0.0) {
        SeriesResult r;
        r.terms = 1;
        if (nu.re.hi() == 0.0 && nu.im.hi() == 0.0) {
            r.value = 1.0;
            return r;
        }
        if (nu.re.hi() > 0.0) return r;
        throw DomainError("bessel_i: x = 0 requires Re nu > 0 or nu = 0");
    }
    DoubleDouble half = ldexp(DoubleDouble(x), -1);
    SeriesResult s = hyp1f2(Complex(1.0), nu + 1.0, Complex(1.0), Complex(sqr(half)), ctl);
    Complex pref = exp(nu * log(half)) * recip_gamma(nu + 1.0);
    s.value = s.value * pref;
    s.max_term *= de::mag(pref);
    return s;
}

RealResult bessel_j_series(double nu, double x, const SeriesControl& ctl) {
    if (!(nu > -1.0)) throw DomainError("bessel_j: requires nu > -1");
    if (!(x >= 0.0)) throw DomainError("bessel_j: requires x >= 0");
    RealResult out;
    if (x == 0.0) {
        if (nu == 0.0) out.value = 1.0;
        else if (nu < 0.0) throw DomainError("bessel_j: J_nu(0) unbounded for nu < 0");
        out.work = 1;
        return out;
    }
    DoubleDouble half = ldexp(DoubleDouble(x), -1);
    SeriesResult s = hyp1f2(Complex(1.0), Complex(DoubleDouble(nu) + 1.0), Complex(1.0),
                            Complex(-sqr(half)), ctl);
    DoubleDouble pref = exp(DoubleDouble(nu) * log(half) - ln_gamma(Complex(nu + 1.0)).re);
    out.value = s.value.re * pref;
    out.rel_error = s.rel_error;
    out.work = s.terms;
    return out;
}

DoubleDouble bessel_j_coefficient(int n, double nu) {
    DoubleDouble a = 1.0;
    DoubleDouble four_nu2 = 4.0 * sqr(DoubleDouble(nu));
    for (int k = 1; k <= n; ++k) {
        double odd = 2.0 * k - 1.0;
        a = a * (four_nu2 - odd * odd) / (8.0 * k);
    }
    return a;
}

RealResult bessel_j_asymptotic(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_j: asymptotic form requires x > 0");
    DoubleDouble xx = x;
    DoubleDouble four_nu2 = 4.0 * sqr(DoubleDouble(nu));
    DoubleDouble p = 0.0, q = 0.0;
    DoubleDouble term = 1.0;  // a_n / x^n
    double omitted = 0.0;
    int n = 0;
    for (;; ++n) {
        int sign = ((n / 2) % 2 == 0) ? 1 : -1;
        if (n % 2 == 0) p += sign * term;
        else q += sign * term;
        double odd = 2.0 * n + 1.0;
        DoubleDouble next = term * (four_nu2 - odd * odd) / (8.0 * (n + 1) * xx);
        double mn = std::abs(next.hi()), mt = std::abs(term.hi());
        if (mn == 0.0) {
            omitted = 0.0;
            break;
        }
        if (mn >= mt || mn < 1e-34 * std::abs(p.hi()) || n > 200) {
            omitted = mn;
            break;
        }
        term = next;
    }
    DoubleDouble omega = reduce_angle(xx - dd_const::half_pi * nu - ldexp(dd_const::half_pi, -1));
    DoubleDouble s, c;
    sincos(omega, s, c);
    DoubleDouble amp = sqrt(2.0 / (dd_const::pi * xx));
    RealResult out;
    out.value = amp * (p * c - q * s);
    out.work = n + 1;
    double m = std::abs(out.value.hi());
    out.rel_error = m > 0.0 ? amp.hi() * omitted / m + 1e-30 : kInf;
    return out;
}

double bessel_j_switch_radius(double nu) { return 20.0 + 0.5 * nu * nu; }

RealResult bessel_j(double nu, double x, const SeriesControl& ctl) {
    if (x <= bessel_j_switch_radius(nu)) return bessel_j_series(nu, x, ctl);
    if (!(nu > -1.0)) throw DomainError("bessel_j: requires nu > -1");
    return bessel_j_asymptotic(nu, x);
}

RealResult bessel_k_real(double nu, double x) {
    if (!(nu >= 0.0)) throw DomainError("bessel_k_real: requires nu >= 0");
    if (!(x > 0.0)) throw DomainError("bessel_k_real: requires x > 0");
    if (x > 700.0) throw NumericalFailure("bessel_k_real: exp(-x) underflows for x > 700");
    double tmax = cosh_cutoff(x, nu, 80.0);
    double h0 = std::min(0.5, tmax / 4.0);
    DoubleDouble n = nu;
    return cosh_integral(x, tmax, h0, [&](const DoubleDouble& t) { return cosh(n * t); });
}

RealResult k_itau_quad(double tau, double x, double loss_threshold) {
    if (!(x > 0.0)) throw DomainError("k_itau_quad: requires x > 0");
    RealResult r = k_itau_quad_raw(tau, x);
    if (r.rel_error > loss_threshold) {
        throw PrecisionLossError("k_itau_quad: estimated relative error " +
                                     std::to_string(r.rel_error) + " exceeds threshold",
                                 r.rel_error);
    }
    return r;
}

RealResult k_itau_series(double tau, double x, const SeriesControl& ctl, double loss_threshold) {
    if (!(tau > 0.0)) throw DomainError("k_itau_series: requires tau > 0");
    if (!(x > 0.0)) throw DomainError("k_itau_series: requires x > 0");
    RealResult r = ImaginaryOrderK(tau, ctl).series(x);
    if (r.rel_error > loss_threshold) {
        throw PrecisionLossError("k_itau_series: estimated relative error " +
                                     std::to_string(r.rel_error) + " exceeds threshold",
                                 r.rel_error);
    }
    return r;
}

ImaginaryOrderK::ImaginaryOrderK(double tau, SeriesControl ctl) : tau_(tau), ctl_(ctl) {
    if (!(tau > 0.0)) throw DomainError("ImaginaryOrderK: requires tau > 0");
    lg_plus_ = ln_gamma(Complex(1.0, tau));
    lg_minus_ = conj(lg_plus_);
    DoubleDouble pt = dd_const::pi * tau;
    pi_over_sinh_ = dd_const::pi / sinh(pt);
}

SeriesResult ImaginaryOrderK::i_order(double x, int sign) const {
    if (!(x > 0.0)) throw DomainError("I_{i tau}: requires x > 0");
    Complex nu(0.0, sign * tau_);
    DoubleDouble half = ldexp(DoubleDouble(x), -1);
    SeriesResult s = hyp1f2(Complex(1.0), nu + 1.0, Complex(1.0), Complex(sqr(half)), ctl_);
    Complex pref = exp(nu * log(half) - (sign > 0 ? lg_plus_ : lg_minus_));
    s.value = s.value * pref;
    s.max_term *= de::mag(pref);
    // phase error of the prefactor
    double phase = de::mag(lg_plus_) + tau_ * std::abs(std::log(0.5 * x));
    s.rel_error += 1e-31 * (1.0 + phase);
    return s;
}

SeriesResult ImaginaryOrderK::i_plus(double x) const { return i_order(x, 1); }
SeriesResult ImaginaryOrderK::i_minus(double x) const { return i_order(x, -1); }

RealResult ImaginaryOrderK::series(double x) const {
    SeriesResult ip = i_order(x, 1);
    SeriesResult im = i_order(x, -1);
    Complex diff = im.value - ip.value;
    DoubleDouble scale = ldexp(pi_over_sinh_, -1);
    // pi (I_- - I_+) / (2 i sinh(pi tau)) = scale * (Im diff - i Re diff)
    RealResult out;
    out.value = diff.im * scale;
    DoubleDouble residual = diff.re * scale;
    double abs_err = de::mag(ip.value) * ip.rel_error + de::mag(im.value) * im.rel_error;
    double m = std::abs(diff.im.hi());
    out.rel_error = m > 0.0 ? abs_err / m : kInf;
    out.work = ip.terms + im.terms;
    double vm = std::abs(out.value.hi());
    out.cancellation = std::abs(residual.hi()) > 1e-15 * vm;
    return out;
}

RealResult ImaginaryOrderK::quad(double x) const { return k_itau_quad_raw(tau_, x); }

RealResult ImaginaryOrderK::operator()(double x) const {
    if (2.0 * x - M_PI * tau_ < 30.0) {
        RealResult s = series(x);
        if (s.rel_error <= 1e-20 || x > 700.0) return s;
        RealResult q = quad(x);
        return q.rel_error < s.rel_error ? q : s;
    }
    return quad(x);
}

}  // namespace ikern
