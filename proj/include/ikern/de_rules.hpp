#pragma once

// Double-exponential and trapezoid rules in double-double arithmetic.
// Every rule halves its step until two successive estimates agree; the
// reported error is that last difference, which overestimates the error of
// the returned (finer) value for analytic integrands.

#include <algorithm>
#include <cmath>

#include "ikern/complex.hpp"

namespace ikern::de {

inline double mag(const DoubleDouble& v) { return std::abs(v.hi()); }
inline double mag(const Complex& v) { return std::hypot(v.re.hi(), v.im.hi()); }

template <class T>
struct Result {
    T value{};
    double abs_error = 0.0;
    double abs_sum = 0.0;  // integral of |f|, for roundoff floors
    int nodes = 0;
    bool converged = false;
};

struct Options {
    double rel_tol = 1e-26;
    double abs_tol = 0.0;
    int min_level = 3;
    int max_level = 8;
    double u_max = 4.5;
    // also accept once the step difference is below floor_rel * integral of |f|
    double floor_rel = 0.0;
};

namespace detail {

inline bool done(double diff, double value_mag, double abs_sum, const Options& opt) {
    return diff <= std::max({opt.abs_tol, opt.rel_tol * value_mag, opt.floor_rel * abs_sum});
}

// Sums weight(u)*f(node(u)) over u = k*h for k of the given parity;
// stops a direction once terms become negligible against `scale`.
template <class T, class Node>
void accumulate(const Node& node, double h, bool odd_only, double u_max, double scale_hint,
                T& sum, double& abs_sum, int& nodes) {
    for (int dir = -1; dir <= 1; dir += 2) {
        int small = 0;
        for (int k = odd_only ? 1 : (dir < 0 ? 1 : 0);; k += odd_only ? 2 : 1) {
            double u = dir * k * h;
            if (std::abs(u) > u_max) break;
            T term{};
            if (!node(u, term)) break;
            sum += term;
            double m = mag(term);
            abs_sum += m;
            ++nodes;
            double ref = std::max(scale_hint, std::max(mag(sum), abs_sum * 1e-6));
            if (m <= 1e-38 * ref) {
                if (++small >= 3) break;
            } else {
                small = 0;
            }
        }
    }
}

template <class T, class Node>
Result<T> refine(const Node& node, const Options& opt) {
    Result<T> res;
    T sum{};
    double abs_sum = 0.0;
    int nodes = 0;
    double h = 1.0;
    accumulate<T>(node, h, false, opt.u_max, 0.0, sum, abs_sum, nodes);
    T prev = sum * h;
    for (int level = 1; level <= opt.max_level; ++level) {
        h *= 0.5;
        accumulate<T>(node, h, true, opt.u_max, mag(prev) / h, sum, abs_sum, nodes);
        T cur = sum * h;
        double diff = mag(cur - prev);
        res.value = cur;
        res.abs_error = diff;
        res.abs_sum = abs_sum * h;
        res.nodes = nodes;
        if (level >= opt.min_level && done(diff, mag(cur), res.abs_sum, opt)) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    return res;
}

}  // namespace detail

/// Integral of f over [a, b]; f is called with the abscissa.
template <class T, class F>
Result<T> tanh_sinh(const F& f, const DoubleDouble& a, const DoubleDouble& b,
                    const Options& opt = {}) {
    DoubleDouble half = ldexp(b - a, -1);
    auto node = [&](double u, T& out) {
        DoubleDouble uu = u;
        DoubleDouble q = sinh(uu) * dd_const::half_pi;
        DoubleDouble e2 = exp(2.0 * abs(q));
        // distance from the nearer endpoint
        DoubleDouble d = (b - a) / (e2 + 1.0);
        if (d.hi() == 0.0) return false;
        DoubleDouble x = q.hi() < 0.0 ? a + d : b - d;
        DoubleDouble ch = cosh(q);
        DoubleDouble w = half * dd_const::half_pi * cosh(uu) / sqr(ch);
        out = f(x) * w;
        return true;
    };
    return detail::refine<T>(node, opt);
}

/// Integral of f over [a, inf) with nodes a + scale*exp(pi/2 sinh u).
template <class T, class F>
Result<T> exp_sinh(const F& f, const DoubleDouble& a, double scale, const Options& opt = {}) {
    auto node = [&](double u, T& out) {
        DoubleDouble uu = u;
        DoubleDouble q = sinh(uu) * dd_const::half_pi;
        if (q.hi() > 700.0) return false;
        DoubleDouble e = exp(q) * scale;
        if (e.hi() == 0.0) return false;
        DoubleDouble w = e * dd_const::half_pi * cosh(uu);
        out = f(a + e) * w;
        return true;
    };
    return detail::refine<T>(node, opt);
}

/// Trapezoid rule on [lo, hi] for integrands negligible (or periodic) at the
/// ends; starting step h0, halved per level.
template <class T, class F>
Result<T> trapezoid(const F& f, const DoubleDouble& lo, const DoubleDouble& hi, double h0,
                    const Options& opt = {}) {
    Result<T> res;
    DoubleDouble len = hi - lo;
    int n = std::max(1, static_cast<int>(std::ceil(len.to_double() / h0)));
    DoubleDouble h = len / static_cast<double>(n);
    T sum = (f(lo) + f(hi)) * 0.5;
    double abs_sum = mag(sum);
    int nodes = 2;
    for (int k = 1; k < n; ++k) {
        T v = f(lo + h * static_cast<double>(k));
        sum += v;
        abs_sum += mag(v);
        ++nodes;
    }
    T prev = sum * h;
    for (int level = 1; level <= opt.max_level; ++level) {
        DoubleDouble hh = ldexp(h, -1);
        for (int k = 0; k < n; ++k) {
            T v = f(lo + hh * static_cast<double>(2 * k + 1));
            sum += v;
            abs_sum += mag(v);
            ++nodes;
        }
        n *= 2;
        h = hh;
        T cur = sum * h;
        double diff = mag(cur - prev);
        res.value = cur;
        res.abs_error = diff;
        res.abs_sum = abs_sum * h.to_double();
        res.nodes = nodes;
        if (level >= opt.min_level && detail::done(diff, mag(cur), res.abs_sum, opt)) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    return res;
}

}  // namespace ikern::de
