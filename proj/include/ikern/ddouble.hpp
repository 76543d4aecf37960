#pragma once

// Double-double ("two-float") real arithmetic. A value is the unevaluated sum
// hi + lo with |lo| <= ulp(hi)/2, giving about 31 significant decimal digits
// over the exponent range of double.

#include <cmath>
#include <compare>
#include <limits>
#include <string>

namespace ikern {

class DoubleDouble {
public:
    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double x) : hi_(x), lo_(0.0) {}
    constexpr DoubleDouble(double hi, double lo) : hi_(hi), lo_(lo) {}
    static DoubleDouble from_integer(long long x);

    constexpr double hi() const { return hi_; }
    constexpr double lo() const { return lo_; }
    constexpr double to_double() const { return hi_ + lo_; }

    static constexpr double epsilon() { return 4.93038065763132e-32; }  // 2^-104

    bool isfinite() const { return std::isfinite(hi_) && std::isfinite(lo_); }

    DoubleDouble& operator+=(const DoubleDouble& b);
    DoubleDouble& operator-=(const DoubleDouble& b);
    DoubleDouble& operator*=(const DoubleDouble& b);
    DoubleDouble& operator/=(const DoubleDouble& b);

    friend constexpr DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi_, -a.lo_}; }

    friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
        return a.hi_ == b.hi_ && a.lo_ == b.lo_;
    }
    friend std::partial_ordering operator<=>(const DoubleDouble& a, const DoubleDouble& b) {
        if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
        return a.lo_ <=> b.lo_;
    }

private:
    double hi_ = 0.0;
    double lo_ = 0.0;
};

using ExtendedReal = DoubleDouble;

namespace dd_detail {

inline DoubleDouble quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble two_prod(double a, double b) {
    double p = a * b;
#if defined(__FMA__) || defined(__aarch64__)
    return {p, std::fma(a, b, -p)};
#else
    // Dekker split, prescaled near the overflow threshold
    auto split = [](double v, double& hi, double& lo) {
        constexpr double c = 134217729.0;  // 2^27 + 1
        if (std::abs(v) > 6.69692879491417e+299) {
            double w = v * 3.7252902984619140625e-09;
            double t = c * w;
            hi = (t - (t - w)) * 268435456.0;
            lo = v - hi;
            return;
        }
        double t = c * v;
        hi = t - (t - v);
        lo = v - hi;
    };
    double ahi, alo, bhi, blo;
    split(a, ahi, alo);
    split(b, bhi, blo);
    return {p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo};
#endif
}

}  // namespace dd_detail

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
    using namespace dd_detail;
    DoubleDouble s = two_sum(a.hi(), b.hi());
    DoubleDouble t = two_sum(a.lo(), b.lo());
    double s2 = s.lo() + t.hi();
    DoubleDouble u = quick_two_sum(s.hi(), s2);
    return quick_two_sum(u.hi(), u.lo() + t.lo());
}

inline DoubleDouble operator+(const DoubleDouble& a, double b) {
    using namespace dd_detail;
    DoubleDouble s = two_sum(a.hi(), b);
    return quick_two_sum(s.hi(), s.lo() + a.lo());
}
inline DoubleDouble operator+(double a, const DoubleDouble& b) { return b + a; }

inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }
inline DoubleDouble operator-(const DoubleDouble& a, double b) { return a + (-b); }
inline DoubleDouble operator-(double a, const DoubleDouble& b) { return (-b) + a; }

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
    using namespace dd_detail;
    DoubleDouble p = two_prod(a.hi(), b.hi());
    return quick_two_sum(p.hi(), p.lo() + (a.hi() * b.lo() + a.lo() * b.hi()));
}

inline DoubleDouble operator*(const DoubleDouble& a, double b) {
    using namespace dd_detail;
    DoubleDouble p = two_prod(a.hi(), b);
    return quick_two_sum(p.hi(), p.lo() + a.lo() * b);
}
inline DoubleDouble operator*(double a, const DoubleDouble& b) { return b * a; }

inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
    using namespace dd_detail;
    double q1 = a.hi() / b.hi();
    DoubleDouble r = a - b * q1;
    double q2 = r.hi() / b.hi();
    r = r - b * q2;
    double q3 = r.hi() / b.hi();
    return quick_two_sum(q1, q2) + q3;
}
inline DoubleDouble operator/(const DoubleDouble& a, double b) { return a / DoubleDouble(b); }
inline DoubleDouble operator/(double a, const DoubleDouble& b) { return DoubleDouble(a) / b; }

inline DoubleDouble& DoubleDouble::operator+=(const DoubleDouble& b) { return *this = *this + b; }
inline DoubleDouble& DoubleDouble::operator-=(const DoubleDouble& b) { return *this = *this - b; }
inline DoubleDouble& DoubleDouble::operator*=(const DoubleDouble& b) { return *this = *this * b; }
inline DoubleDouble& DoubleDouble::operator/=(const DoubleDouble& b) { return *this = *this / b; }

inline DoubleDouble DoubleDouble::from_integer(long long x) {
    double h = static_cast<double>(x);
    double l = static_cast<double>(x - static_cast<long long>(h));
    return dd_detail::quick_two_sum(h, l);
}

inline DoubleDouble sqr(const DoubleDouble& a) { return a * a; }
inline DoubleDouble abs(const DoubleDouble& a) { return a.hi() < 0.0 ? -a : a; }
inline DoubleDouble ldexp(const DoubleDouble& a, int e) {
    return {std::ldexp(a.hi(), e), std::ldexp(a.lo(), e)};
}
inline DoubleDouble floor(const DoubleDouble& a) {
    double h = std::floor(a.hi());
    if (h != a.hi()) return h;
    return dd_detail::quick_two_sum(h, std::floor(a.lo()));
}
inline DoubleDouble round(const DoubleDouble& a) { return floor(a + 0.5); }

DoubleDouble sqrt(const DoubleDouble& a);
DoubleDouble exp(const DoubleDouble& a);
DoubleDouble expm1(const DoubleDouble& a);
DoubleDouble log(const DoubleDouble& a);
DoubleDouble log1p(const DoubleDouble& a);
DoubleDouble sin(const DoubleDouble& a);
DoubleDouble cos(const DoubleDouble& a);
void sincos(const DoubleDouble& a, DoubleDouble& s, DoubleDouble& c);
DoubleDouble atan2(const DoubleDouble& y, const DoubleDouble& x);
DoubleDouble atan(const DoubleDouble& a);
DoubleDouble sinh(const DoubleDouble& a);
DoubleDouble cosh(const DoubleDouble& a);
DoubleDouble tanh(const DoubleDouble& a);
DoubleDouble asinh(const DoubleDouble& a);
DoubleDouble pow(const DoubleDouble& a, const DoubleDouble& b);
DoubleDouble pow(const DoubleDouble& a, int n);
/// log(sinh a) for a > 0 without overflow.
DoubleDouble log_sinh(const DoubleDouble& a);
/// a reduced to (-pi, pi]; the reduction itself carries a triple-length 2*pi.
DoubleDouble reduce_angle(const DoubleDouble& a);

std::string to_string(const DoubleDouble& a, int digits = 32);
DoubleDouble parse_dd(const std::string& s);

namespace dd_const {
inline constexpr DoubleDouble pi{3.141592653589793, 1.2246467991473532e-16};
inline constexpr DoubleDouble two_pi{6.283185307179586, 2.4492935982947064e-16};
inline constexpr DoubleDouble half_pi{1.5707963267948966, 6.123233995736766e-17};
inline constexpr DoubleDouble ln2{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr DoubleDouble half_log_two_pi{0.9189385332046728, -3.8782941580672414e-17};
inline constexpr DoubleDouble euler_gamma{0.5772156649015329, -4.942915152430645e-18};
}  // namespace dd_const

}  // namespace ikern
