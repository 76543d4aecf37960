#include "ikern/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ikern/de_rules.hpp"

namespace ikern {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// y = log(1 + e^s): logarithmic near y = 0, linear for large y.
struct Softplus {
    DoubleDouble y;
    DoubleDouble dy;  // dy/ds
};

Softplus softplus(const DoubleDouble& s) {
    Softplus p;
    if (s.hi() > 0.0) {
        DoubleDouble e = exp(-s);
        p.y = s + log1p(e);
        p.dy = 1.0 / (1.0 + e);
    } else {
        DoubleDouble e = exp(s);
        p.y = log1p(e);
        p.dy = e / (1.0 + e);
    }
    return p;
}

// Inverse of softplus for y > 0.
double softplus_inv(double y) { return y > 30.0 ? y : std::log(std::expm1(y)); }

// Trapezoid on the softplus map. g(y, rel) returns the integrand and sets the
// relative error of that evaluation; the worst one bounds the propagated error.
struct MappedSum {
    de::Result<DoubleDouble> r;
    double eval_abs_err = 0.0;
};

template <class G>
MappedSum softplus_trapezoid(const G& g, double y_lo, double y_hi, double h0,
                             const KernelQuadOptions& opt) {
    double worst = 0.0;
    auto f = [&](const DoubleDouble& s) {
        Softplus p = softplus(s);
        double rel = 0.0;
        DoubleDouble v = g(p.y.to_double(), rel) * p.dy;
        if (v.hi() != 0.0) worst = std::max(worst, rel);
        return v;
    };
    de::Options o;
    o.rel_tol = opt.rel_tol;
    o.min_level = 2;
    o.max_level = opt.max_level;
    o.floor_rel = 1e-17;
    MappedSum out;
    out.r = de::trapezoid<DoubleDouble>(f, DoubleDouble(softplus_inv(y_lo)),
                                        DoubleDouble(softplus_inv(y_hi)), h0, o);
    out.eval_abs_err = worst * out.r.abs_sum;
    return out;
}

QuadResult finish(const DoubleDouble& value, double quad_err, double eval_err, int nodes,
                  double abs_sum) {
    QuadResult q;
    q.value = Complex(value);
    // node abscissae are rounded to double before the special-function calls
    q.abs_error_estimate = quad_err + eval_err + 1e-16 * abs_sum;
    q.nodes_used = std::max(1, nodes);
    return q;
}

void check_loss(const char* who, double eval_err, const DoubleDouble& value, double threshold) {
    double m = std::abs(value.hi());
    double rel = m > 0.0 ? eval_err / m : kInf;
    if (rel > threshold) {
        throw PrecisionLossError(std::string(who) + ": K evaluations carry relative error " +
                                     std::to_string(rel),
                                 rel);
    }
}

// Sidi's mW transform of partial integrals F(x_0), F(x_1), ... with
// psi(x_l) = F(x_{l+1}) - F(x_l).
class WTransform {
public:
    // Adds F(x_l) and psi(x_l); returns the newest extrapolation W_l^{(0)}.
    Complex add(double x, const Complex& f, const Complex& psi) {
        t_.push_back(1.0 / x);
        std::vector<Complex> m(1, f / psi), n(1, 1.0 / psi);
        std::size_t j = t_.size() - 1;
        // M_p^{(j-p)} from M_{p-1}^{(j-p+1)} (new column) and M_{p-1}^{(j-p)} (old)
        for (std::size_t p = 1; p <= j; ++p) {
            DoubleDouble dt = t_[j] - t_[j - p];
            m.push_back((m[p - 1] - mcol_[p - 1]) / dt);
            n.push_back((n[p - 1] - ncol_[p - 1]) / dt);
        }
        mcol_ = std::move(m);
        ncol_ = std::move(n);
        return mcol_.back() / ncol_.back();
    }

private:
    std::vector<DoubleDouble> t_;
    std::vector<Complex> mcol_, ncol_;
};

}  // namespace

double QuadResult::rel_error() const {
    double m = de::mag(value);
    return m > 0.0 ? abs_error_estimate / m : kInf;
}

QuadResult integrate_semi_infinite(const std::function<Complex(const DoubleDouble&)>& f,
                                   Decay decay, double tol) {
    de::Options o;
    o.rel_tol = tol;
    o.max_level = 10;
    o.floor_rel = 8.0 * DoubleDouble::epsilon();
    QuadResult q;
    if (decay.kind == Decay::exponential) {
        auto r = de::exp_sinh<Complex>(f, DoubleDouble(0.0), 1.0, o);
        if (!r.converged) {
            throw NonConvergenceError("integrate_semi_infinite: no convergence after doubling",
                                      r.value.to_std(), r.abs_error);
        }
        q.value = r.value;
        q.abs_error_estimate = r.abs_error + 8.0 * DoubleDouble::epsilon() * r.abs_sum;
        q.nodes_used = r.nodes;
        return q;
    }
    if (!(decay.power > 1.0)) throw DomainError("integrate_semi_infinite: algebraic decay needs p > 1");
    auto head = de::tanh_sinh<Complex>(f, DoubleDouble(0.0), DoubleDouble(1.0), o);
    // t = 1/u maps [1, inf) onto (0, 1]; the mapped integrand is O(u^{p-2})
    auto mapped = [&](const DoubleDouble& u) {
        DoubleDouble inv = 1.0 / u;
        return f(inv) * sqr(inv);
    };
    auto tail = de::tanh_sinh<Complex>(mapped, DoubleDouble(0.0), DoubleDouble(1.0), o);
    if (!head.converged || !tail.converged) {
        throw NonConvergenceError("integrate_semi_infinite: no convergence after doubling",
                                  (head.value + tail.value).to_std(),
                                  head.abs_error + tail.abs_error);
    }
    q.value = head.value + tail.value;
    q.abs_error_estimate = head.abs_error + tail.abs_error +
                           8.0 * DoubleDouble::epsilon() * (head.abs_sum + tail.abs_sum);
    q.nodes_used = head.nodes + tail.nodes;
    return q;
}

QuadResult mehler_fock_sq(double mu, double tau, double x, const KernelQuadOptions& opt) {
    if (!(mu > -0.5)) throw DomainError("mehler_fock_sq: requires mu > -1/2");
    if (!(tau > 0.0) || !(x > 0.0)) throw DomainError("mehler_fock_sq: requires tau, x > 0");
    ImaginaryOrderK k(2.0 * tau);
    auto g = [&](double y, double& rel) {
        RealResult j = bessel_j(mu, x * y);
        RealResult kv = k(y);
        rel = 2.0 * j.rel_error + kv.rel_error;
        return sqr(j.value) * kv.value;
    };
    // integrand ~ y^{2 mu + 1} in log y at the origin, ~ e^{-y} beyond y ~ 2 tau
    double y_lo = std::exp(std::max(-700.0, -40.0 / (2.0 * mu + 1.0)));
    double y_hi = M_PI * tau + 45.0;
    double h0 = std::min(0.5, 1.5 / std::max({2.0 * tau, 2.0 * x, 1.0}));
    MappedSum s = softplus_trapezoid(g, y_lo, y_hi, h0, opt);
    DoubleDouble value = 2.0 * s.r.value;
    QuadResult q = finish(value, 2.0 * s.r.abs_error, 2.0 * s.eval_abs_err, s.r.nodes,
                          2.0 * s.r.abs_sum);
    if (!s.r.converged) {
        throw NonConvergenceError("mehler_fock_sq: trapezoid did not converge", q.value.to_std(),
                                  q.abs_error_estimate);
    }
    check_loss("mehler_fock_sq", 2.0 * s.eval_abs_err, value, 1e-6);
    if (value.hi() < -q.abs_error_estimate) {
        throw NumericalFailure("mehler_fock_sq: negative value beyond its error estimate");
    }
    return q;
}

QuadResult product_kernel_quad(double tau, double x, const KernelQuadOptions& opt) {
    if (!(x > 0.0)) throw DomainError("product_kernel_quad: requires x > 0");
    if (!(tau >= 0.0)) throw DomainError("product_kernel_quad: requires tau >= 0");
    if (tau > opt.product_tau_cap) {
        throw NonConvergenceError("product_kernel_quad: tau above the oscillation cap " +
                                      std::to_string(opt.product_tau_cap),
                                  {0.0, 0.0}, kInf);
    }
    // cos(2 tau asinh u) = Re (u + sqrt(1+u^2))^{2 i tau}; the complex form has a
    // single power-law amplitude, which the transform needs
    DoubleDouble two_tau = 2.0 * tau;
    double worst = 0.0;
    auto f = [&](const DoubleDouble& u) {
        RealResult j = bessel_j(0.0, 2.0 * x * u.to_double());
        worst = std::max(worst, j.rel_error);
        DoubleDouble s, c;
        sincos(reduce_angle(two_tau * asinh(u)), s, c);
        return Complex(c, s) * (j.value / sqrt(1.0 + sqr(u)));
    };
    de::Options o;
    o.rel_tol = 1e-20;
    o.min_level = 2;
    o.max_level = 7;
    o.floor_rel = 1e-18;
    // endpoints at the zeros of cos(2xu - pi/4)
    auto node = [&](int l) { return (l + 0.75) * M_PI / (2.0 * x); };
    WTransform w;
    Complex partial;
    double quad_err = 0.0, abs_sum = 0.0;
    int nodes = 0;
    DoubleDouble lo = 0.0;
    std::vector<Complex> ends;  // the running partial integrals F(x_l)
    std::vector<double> xs;
    DoubleDouble prev_w = 0.0, prev2_w = 0.0;
    double last_diff = kInf;
    const int max_intervals = 60;
    for (int l = 0; l < max_intervals; ++l) {
        DoubleDouble hi = node(l);
        auto r = de::tanh_sinh<Complex>(f, lo, hi, o);
        quad_err += r.abs_error;
        abs_sum += r.abs_sum;
        nodes += r.nodes;
        partial += r.value;
        ends.push_back(partial);
        xs.push_back(hi.to_double());
        lo = hi;
        if (ends.size() < 2) continue;
        std::size_t i = ends.size() - 2;
        DoubleDouble wv = w.add(xs[i], ends[i], ends[i + 1] - ends[i]).re;
        if (i >= 2) {
            double d1 = std::abs((wv - prev_w).hi());
            double d2 = std::abs((prev_w - prev2_w).hi());
            last_diff = std::max(d1, d2);
            if (i >= 6 && last_diff <= opt.rel_tol * 1e-2 * std::abs(wv.hi())) {
                prev_w = wv;
                break;
            }
        }
        prev2_w = prev_w;
        prev_w = wv;
    }
    DoubleDouble value = 2.0 * prev_w;
    QuadResult q;
    q.value = Complex(value);
    q.abs_error_estimate = 2.0 * (last_diff + quad_err + (worst + 1e-16) * abs_sum);
    q.nodes_used = nodes;
    if (!(2.0 * last_diff <= opt.rel_tol * std::abs(value.hi()))) {
        throw NonConvergenceError("product_kernel_quad: extrapolation did not settle",
                                  q.value.to_std(), q.abs_error_estimate);
    }
    return q;
}

QuadResult whittaker_quad(double mu, double tau, double x, const KernelQuadOptions& opt) {
    if (!(mu > 0.0)) throw DomainError("whittaker_quad: requires mu > 0");
    if (!(tau > 0.0) || !(x > 0.0)) throw DomainError("whittaker_quad: requires tau, x > 0");
    ImaginaryOrderK k(tau);
    DoubleDouble xx = x, m1 = mu - 1.0, ex = -(mu + 0.5);
    double worst = 0.0;
    auto f = [&](const DoubleDouble& y) -> DoubleDouble {
        double arg = x * (1.0 + y.to_double());
        if (arg > 690.0) return DoubleDouble(0.0);
        RealResult kv = k(arg);
        worst = std::max(worst, kv.rel_error);
        return exp(m1 * log(y) - xx * y + ex * log1p(y)) * kv.value;
    };
    de::Options o;
    o.rel_tol = opt.rel_tol;
    o.min_level = 2;
    o.max_level = opt.max_level;
    o.floor_rel = 1e-17;
    // y^{mu-1} dy decays only like y^mu toward the origin
    o.u_max = 6.5;
    auto r = de::exp_sinh<DoubleDouble>(f, DoubleDouble(0.0), 1.0 / std::max(1.0, x), o);
    DoubleDouble pref = sqrt(2.0 * xx / dd_const::pi) * exp(-ln_gamma(Complex(mu)).re);
    double pm = std::abs(pref.hi());
    DoubleDouble value = pref * r.value;
    QuadResult q = finish(value, pm * r.abs_error, pm * worst * r.abs_sum, r.nodes,
                          pm * r.abs_sum);
    if (!r.converged) {
        throw NonConvergenceError("whittaker_quad: exp-sinh did not converge", q.value.to_std(),
                                  q.abs_error_estimate);
    }
    check_loss("whittaker_quad", pm * worst * r.abs_sum, value, 1e-6);
    return q;
}

QuadResult olevskii_quad(double mu, double nu, double tau, double x, const KernelQuadOptions& opt) {
    if (!(mu + nu > 0.0)) throw DomainError("olevskii_quad: requires mu + nu > 0");
    if (!(mu > 0.0 && mu < 1.5)) throw DomainError("olevskii_quad: requires 0 < mu < 3/2");
    if (!(nu > -1.0)) throw DomainError("olevskii_quad: requires nu > -1");
    if (!(tau > 0.0) || !(x > 0.0)) throw DomainError("olevskii_quad: requires tau, x > 0");
    if (x > opt.olevskii_x_cap) {
        throw NonConvergenceError("olevskii_quad: x above the oscillatory-tail cap " +
                                      std::to_string(opt.olevskii_x_cap),
                                  {0.0, 0.0}, kInf);
    }
    ImaginaryOrderK k(2.0 * tau);
    DoubleDouble m1 = mu - 1.0;
    auto g = [&](double y, double& rel) {
        RealResult j = bessel_j(nu, x * y);
        RealResult kv = k(y);
        rel = j.rel_error + kv.rel_error;
        return exp(m1 * log(DoubleDouble(y))) * j.value * kv.value;
    };
    double y_lo = std::exp(std::max(-700.0, -40.0 / (mu + nu)));
    double y_hi = M_PI * tau + 45.0;
    double h0 = std::min(0.5, 1.5 / std::max({2.0 * tau, x, 1.0}));
    MappedSum s = softplus_trapezoid(g, y_lo, y_hi, h0, opt);
    // 2^{2-mu} x^{-nu} Gamma(nu+1) / |Gamma((mu+nu)/2 + i tau)|^2
    Complex lg = ln_gamma(Complex(DoubleDouble(0.5 * (mu + nu)), DoubleDouble(tau)));
    DoubleDouble log_pref = (2.0 - mu) * dd_const::ln2 - nu * log(DoubleDouble(x)) +
                            ln_gamma(Complex(nu + 1.0)).re - 2.0 * lg.re;
    DoubleDouble pref = exp(log_pref);
    double pm = std::abs(pref.hi());
    DoubleDouble value = pref * s.r.value;
    QuadResult q = finish(value, pm * s.r.abs_error, pm * s.eval_abs_err, s.r.nodes,
                          pm * s.r.abs_sum);
    if (!s.r.converged) {
        throw NonConvergenceError("olevskii_quad: trapezoid did not converge", q.value.to_std(),
                                  q.abs_error_estimate);
    }
    check_loss("olevskii_quad", pm * s.eval_abs_err, value, 1e-6);
    return q;
}

}  // namespace ikern
