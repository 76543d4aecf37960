#include "ikern/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "ikern/de_rules.hpp"

namespace ikern {

namespace {

// B_{2k} / (2k (2k - 1)), k = 1..30
constexpr DoubleDouble kStirling[] = {
#include "stirling_coefficients.inc"
};
constexpr int kStirlingTerms = 24;
constexpr double kShift = 15.0;
constexpr double kEps = DoubleDouble::epsilon();

using cd = std::complex<double>;

bool is_nonpositive_integer(const Complex& z) {
    return z.im.hi() == 0.0 && z.im.lo() == 0.0 && z.re.hi() <= 0.0 && floor(z.re) == z.re;
}

void require_not_pole(const Complex& b, const char* what) {
    if (is_nonpositive_integer(b)) {
        throw PoleError(std::string(what) + ": lower parameter is a nonpositive integer");
    }
}

// Sum of t_k with t_0 = 1 and t_{k+1} = t_k * ratio(k).
template <class Ratio>
SeriesResult sum_series(const Ratio& ratio, const SeriesControl& ctl, const char* what) {
    if (!(ctl.rel_tol > 0.0) || ctl.max_terms < 1) throw DomainError("invalid SeriesControl");
    Complex sum = 1.0, term = 1.0;
    double max_term = 1.0, prev = 1.0, last = 1.0;
    int small = 0, k = 0;
    bool finished = false;
    for (; k < ctl.max_terms; ++k) {
        term *= ratio(k);
        double m = de::mag(term);
        last = m;
        if (m == 0.0) {
            finished = true;
            ++k;
            break;
        }
        sum += term;
        if (!std::isfinite(m)) break;
        max_term = std::max(max_term, m);
        if (m < ctl.rel_tol * de::mag(sum) && m < prev) {
            if (++small >= 3) {
                finished = true;
                ++k;
                break;
            }
        } else {
            small = 0;
        }
        prev = m;
    }
    if (!finished || !sum.isfinite()) {
        throw NonConvergenceError(std::string(what) + ": series did not converge within " +
                                      std::to_string(ctl.max_terms) + " terms",
                                  sum.to_std(), last);
    }
    SeriesResult res;
    res.value = sum;
    res.terms = k + 1;
    res.max_term = max_term;
    double s = de::mag(sum);
    double roundoff = 4.0 * kEps * max_term * std::sqrt(static_cast<double>(res.terms));
    res.rel_error = s > 0.0 ? (last + roundoff) / s : std::numeric_limits<double>::infinity();
    return res;
}

Complex stirling(const Complex& w) {
    Complex t = 1.0 / w;
    Complex t2 = t * t;
    Complex acc = kStirling[kStirlingTerms - 1];
    for (int k = kStirlingTerms - 2; k >= 0; --k) acc = acc * t2 + Complex(kStirling[k]);
    return (w - 0.5) * log(w) - w + Complex(dd_const::half_log_two_pi) + acc * t;
}

// Sum of log(z + k), k = 0..n-1, on the principal branch of each term.
Complex log_rising(const Complex& z, int n) {
    Complex total;
    int k = 0;
    while (k < n) {
        Complex prod = 1.0;
        double arg_sum = 0.0;
        for (int j = 0; j < 16 && k < n; ++j, ++k) {
            Complex f = z + static_cast<double>(k);
            prod *= f;
            arg_sum += std::arg(f.to_std());
        }
        Complex l = log(prod);
        double turns = std::round((arg_sum - l.im.to_double()) / dd_const::two_pi.hi());
        l.im += dd_const::two_pi * turns;
        total += l;
    }
    return total;
}

// B_{2k} / (2k)! for the small-t expansion of the Binet integrand.
const std::array<DoubleDouble, 16>& binet_series_coeffs() {
    static const auto table = [] {
        std::array<DoubleDouble, 16> c{};
        DoubleDouble fact = 1.0;  // (2k - 2)!
        for (int k = 1; k <= 16; ++k) {
            if (k > 1) fact = fact * static_cast<double>((2 * k - 2) * (2 * k - 3));
            c[k - 1] = kStirling[k - 1] / fact;
        }
        return c;
    }();
    return table;
}

// [1/2 - 1/t + 1/(e^t - 1)] / t
Complex binet_integrand(const Complex& t) {
    if (abs(t).hi() <= 0.25) {
        const auto& c = binet_series_coeffs();
        Complex t2 = t * t;
        Complex acc = c.back();
        for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) acc = acc * t2 + Complex(c[k]);
        return acc;
    }
    Complex head = Complex(0.5) - 1.0 / t;
    if (t.re.hi() > 80.0) return head / t;
    return (head + 1.0 / expm1(t)) / t;
}

}  // namespace

Complex ln_gamma(const Complex& z) {
    if (!z.isfinite()) throw DomainError("ln_gamma: non-finite argument");
    if (z.im.hi() == 0.0 && z.re.hi() <= 0.0) {
        if (floor(z.re) == z.re) throw PoleError("ln_gamma: pole at nonpositive integer");
        throw DomainError("ln_gamma: argument on the negative real axis");
    }
    int n = 0;
    if (z.re.hi() < kShift) n = static_cast<int>(std::ceil(kShift - z.re.hi()));
    Complex w = z + static_cast<double>(n);
    Complex s = stirling(w);
    if (n > 0) s -= log_rising(z, n);
    return s;
}

Complex gamma(const Complex& z) {
    if (z.im.hi() == 0.0 && z.re.hi() <= 0.0) {
        if (floor(z.re) == z.re) throw PoleError("gamma: pole at nonpositive integer");
        // reflection for the negative real axis
        DoubleDouble x = z.re;
        DoubleDouble s = sin(dd_const::pi * x);
        return Complex(dd_const::pi / (s * exp(ln_gamma(Complex(1.0 - x)).re)));
    }
    return exp(ln_gamma(z));
}

double ln_gamma_real(double x) { return ln_gamma(Complex(x)).re.to_double(); }

Complex binet_log(const Complex& z, double floor) {
    if (!z.isfinite()) throw DomainError("binet_r: non-finite argument");
    if (z.re.hi() < -1e-300) throw DomainError("binet_r: requires |arg z| <= pi/2");
    DoubleDouble mod = abs(z);
    if (mod.hi() < floor) {
        throw NonConvergenceError("binet_r: |z| below quadrature floor", {0.0, 0.0},
                                  std::numeric_limits<double>::infinity());
    }
    // rotate the contour to t = s exp(-i theta / 2) so the exponential decays
    DoubleDouble theta = arg(z);
    Complex omega = polar(1.0, -ldexp(theta, -1));
    Complex w = z * omega;
    auto f = [&](const DoubleDouble& s) { return exp(-(w * s)) * binet_integrand(omega * s); };
    de::Options opt;
    opt.rel_tol = 1e-28;
    opt.abs_tol = 1e-34;
    auto head = de::tanh_sinh<Complex>(f, DoubleDouble(0.0), DoubleDouble(0.25), opt);
    double decay = std::clamp(1.0 / w.re.to_double(), 0.05, 20.0);
    auto tail = de::exp_sinh<Complex>(f, DoubleDouble(0.25), decay, opt);
    if (!head.converged || !tail.converged) {
        throw NonConvergenceError("binet_r: quadrature did not converge",
                                  ((head.value + tail.value) * omega).to_std(),
                                  head.abs_error + tail.abs_error);
    }
    return (head.value + tail.value) * omega;
}

Complex binet_r(const Complex& z, double floor) { return expm1(binet_log(z, floor)); }

Complex gamma_binet(const Complex& z) {
    Complex e = (z - 0.5) * log(z) - z + Complex(dd_const::half_log_two_pi) + binet_log(z);
    return exp(e);
}

Complex pochhammer(const Complex& a, int m) {
    Complex p = 1.0;
    for (int k = 0; k < m; ++k) p *= a + static_cast<double>(k);
    return p;
}

SeriesResult hyp1f2(const Complex& a, const Complex& b1, const Complex& b2, const Complex& z,
                    const SeriesControl& ctl) {
    require_not_pole(b1, "hyp1f2");
    require_not_pole(b2, "hyp1f2");
    auto ratio = [&](int k) {
        double kk = k;
        return (a + kk) * z / ((b1 + kk) * (b2 + kk) * (kk + 1.0));
    };
    return sum_series(ratio, ctl, "hyp1f2");
}

SeriesResult hyp1f1(const Complex& a, const Complex& b, const Complex& z,
                    const SeriesControl& ctl) {
    require_not_pole(b, "hyp1f1");
    bool kummer = z.re.hi() < 0.0 && abs(z).hi() > abs(b - a).hi();
    Complex aa = kummer ? b - a : a;
    Complex zz = kummer ? -z : z;
    auto ratio = [&](int k) {
        double kk = k;
        return (aa + kk) * zz / ((b + kk) * (kk + 1.0));
    };
    SeriesResult r = sum_series(ratio, ctl, "hyp1f1");
    if (kummer) {
        Complex ez = exp(z);
        r.value = r.value * ez;
        r.max_term *= de::mag(ez);
        r.route = SeriesRoute::kummer;
    }
    return r;
}

SeriesResult gauss_series(const Complex& a, const Complex& b, const Complex& c, const Complex& z,
                          const SeriesControl& ctl) {
    require_not_pole(c, "hyp2f1");
    auto ratio = [&](int k) {
        double kk = k;
        return (a + kk) * (b + kk) * z / ((c + kk) * (kk + 1.0));
    };
    return sum_series(ratio, ctl, "hyp2f1");
}

namespace {

struct Scan {
    double log_scale = 0.0;  // log of largest |term| times prefactor
    bool ok = false;
};

// Cheap double-precision pass over the term magnitudes of a Gauss series.
Scan scan_gauss(cd a, cd b, cd c, double w, double log_pref, const SeriesControl& ctl) {
    Scan s;
    double cur = 0.0, best = 0.0;
    double lw = std::log(std::abs(w));
    for (int k = 0; k < ctl.max_terms; ++k) {
        double kk = k;
        double num = std::abs(a + kk) * std::abs(b + kk);
        if (num == 0.0 || w == 0.0) {
            s.ok = true;
            break;
        }
        double step = std::log(num) - std::log(std::abs(c + kk)) - std::log(kk + 1.0) + lw;
        cur += step;
        best = std::max(best, cur);
        if (step < 0.0 && cur < best + std::log(ctl.rel_tol) - 4.0) {
            s.ok = true;
            break;
        }
    }
    s.log_scale = best + log_pref;
    return s;
}

struct RouteEval {
    SeriesResult res;
    bool ok = false;
};

RouteEval eval_direct(const Complex& a, const Complex& b, const Complex& c, double z,
                      const SeriesControl& ctl) {
    RouteEval e;
    e.res = gauss_series(a, b, c, Complex(z), ctl);
    e.res.route = SeriesRoute::direct;
    e.ok = true;
    return e;
}

RouteEval eval_pfaff(const Complex& a, const Complex& b, const Complex& c, double z,
                     const SeriesControl& ctl) {
    RouteEval e;
    DoubleDouble zz = z;
    DoubleDouble w = zz / (zz - 1.0);
    SeriesResult s = gauss_series(a, c - b, c, Complex(w), ctl);
    Complex pref = exp(-(a * log(1.0 - zz)));
    s.value = s.value * pref;
    s.max_term *= de::mag(pref);
    s.route = SeriesRoute::pfaff;
    e.res = s;
    e.ok = true;
    return e;
}

bool connection_valid(const Complex& a, const Complex& b, const Complex& c) {
    Complex d = a - b;
    if (d.im.hi() == 0.0 && std::abs(d.re.hi() - std::round(d.re.hi())) < 1e-8) return false;
    for (const Complex* p : {&a, &b}) {
        if (is_nonpositive_integer(*p)) return false;
    }
    if (is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b)) return false;
    return true;
}

// log of the two connection prefactors, including (1-z)^{-a}, (1-z)^{-b}
void connection_prefactors(const Complex& a, const Complex& b, const Complex& c, double z,
                           Complex& l1, Complex& l2) {
    DoubleDouble lz = log(DoubleDouble(1.0) - z);
    Complex lgc = ln_gamma(c);
    l1 = lgc + ln_gamma(b - a) - ln_gamma(b) - ln_gamma(c - a) - a * lz;
    l2 = lgc + ln_gamma(a - b) - ln_gamma(a) - ln_gamma(c - b) - b * lz;
}

RouteEval eval_connection(const Complex& a, const Complex& b, const Complex& c, double z,
                          const SeriesControl& ctl) {
    RouteEval e;
    DoubleDouble u = 1.0 / (DoubleDouble(1.0) - z);
    Complex l1, l2;
    connection_prefactors(a, b, c, z, l1, l2);
    SeriesResult s1 = gauss_series(a, c - b, a - b + 1.0, Complex(u), ctl);
    SeriesResult s2 = gauss_series(b, c - a, b - a + 1.0, Complex(u), ctl);
    Complex p1 = exp(l1), p2 = exp(l2);
    Complex v1 = p1 * s1.value, v2 = p2 * s2.value;
    SeriesResult r;
    r.value = v1 + v2;
    double m1 = de::mag(p1), m2 = de::mag(p2);
    double abs_err = de::mag(v1) * s1.rel_error + de::mag(v2) * s2.rel_error +
                     1e-30 * (de::mag(v1) + de::mag(v2));
    double vm = de::mag(r.value);
    r.rel_error = vm > 0.0 ? abs_err / vm : std::numeric_limits<double>::infinity();
    r.max_term = m1 * s1.max_term + m2 * s2.max_term;
    r.terms = s1.terms + s2.terms;
    r.route = SeriesRoute::connection;
    e.res = r;
    e.ok = true;
    return e;
}

RouteEval eval_route(Hyp2f1Route r, const Complex& a, const Complex& b, const Complex& c,
                     double z, const SeriesControl& ctl) {
    switch (r) {
        case Hyp2f1Route::direct: return eval_direct(a, b, c, z, ctl);
        case Hyp2f1Route::pfaff: return eval_pfaff(a, b, c, z, ctl);
        case Hyp2f1Route::connection: return eval_connection(a, b, c, z, ctl);
        default: break;
    }
    throw UnsupportedRoute("hyp2f1: unknown route");
}

}  // namespace

SeriesResult hyp2f1(const Complex& a, const Complex& b, const Complex& c, double z,
                    const SeriesControl& ctl, Hyp2f1Route route) {
    require_not_pole(c, "hyp2f1");
    if (!(z <= 0.0) || !std::isfinite(z)) throw DomainError("hyp2f1: requires real z <= 0");
    if (z == 0.0) {
        SeriesResult r;
        r.value = 1.0;
        r.terms = 1;
        return r;
    }
    cd ad = a.to_std(), bd = b.to_std(), cdd = c.to_std();

    // candidate routes with their estimated log term scale
    struct Cand {
        Hyp2f1Route route;
        double log_scale;
    };
    Cand cands[3];
    int nc = 0;
    if (z > -1.0) {
        Scan s = scan_gauss(ad, bd, cdd, z, 0.0, ctl);
        if (s.ok) cands[nc++] = {Hyp2f1Route::direct, s.log_scale};
    }
    {
        double w = z / (z - 1.0);
        Scan s = scan_gauss(ad, cdd - bd, cdd, w, -ad.real() * std::log1p(-z), ctl);
        if (s.ok) cands[nc++] = {Hyp2f1Route::pfaff, s.log_scale};
    }
    if (z < -0.1 && connection_valid(a, b, c)) {
        Complex l1, l2;
        connection_prefactors(a, b, c, z, l1, l2);
        double u = 1.0 / (1.0 - z);
        Scan s1 = scan_gauss(ad, cdd - bd, ad - bd + 1.0, u, l1.re.to_double(), ctl);
        Scan s2 = scan_gauss(bd, cdd - ad, bd - ad + 1.0, u, l2.re.to_double(), ctl);
        if (s1.ok && s2.ok) {
            cands[nc++] = {Hyp2f1Route::connection, std::max(s1.log_scale, s2.log_scale)};
        }
    }
    std::sort(cands, cands + nc,
              [](const Cand& x, const Cand& y) { return x.log_scale < y.log_scale; });

    Hyp2f1Route chosen;
    Hyp2f1Route alternate = Hyp2f1Route::automatic;
    if (route == Hyp2f1Route::automatic) {
        if (nc == 0) {
            throw NonConvergenceError("hyp2f1: no route converges within max_terms", {0.0, 0.0},
                                      std::numeric_limits<double>::infinity());
        }
        chosen = cands[0].route;
        if (nc > 1) alternate = cands[1].route;
    } else if (route == Hyp2f1Route::standard) {
        chosen = z > -1.0 ? Hyp2f1Route::direct : Hyp2f1Route::pfaff;
        if (z > -1.0) alternate = Hyp2f1Route::pfaff;
    } else {
        chosen = route;
    }
    SeriesResult res = eval_route(chosen, a, b, c, z, ctl).res;

    // continuity check on the window just inside the direct/Pfaff switch
    if (z > -1.0 && z < -0.9 && alternate != Hyp2f1Route::automatic) {
        SeriesResult other = eval_route(alternate, a, b, c, z, ctl).res;
        double tol = 10.0 * std::max(ctl.rel_tol, res.rel_error + other.rel_error);
        double diff = de::mag(res.value - other.value);
        double ref = std::max(de::mag(res.value), de::mag(other.value));
        if (diff > tol * ref) {
            throw NumericalFailure("hyp2f1: switch-point mismatch between routes (relative " +
                                   std::to_string(diff / ref) + ")");
        }
    }
    return res;
}

Complex hyp2f1_term2(int k, double rho, double tau) {
    if (k < 0) throw DomainError("hyp2f1_term2: k must be nonnegative");
    Complex b(DoubleDouble(rho) + 0.5, DoubleDouble(tau));
    Complex c(1.0, 2.0 * DoubleDouble(tau));
    Complex sum = 1.0, term = 1.0;
    for (int m = 0; m < k; ++m) {
        double mm = m;
        term = term * (2.0 * (mm - k)) * (b + mm) / ((c + mm) * (mm + 1.0));
        sum += term;
    }
    return sum;
}

}  // namespace ikern
