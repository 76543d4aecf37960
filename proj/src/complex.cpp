#include "ikern/complex.hpp"

namespace ikern {

DoubleDouble abs(const Complex& a) {
    double s = std::max(std::abs(a.re.hi()), std::abs(a.im.hi()));
    if (s == 0.0) return 0.0;
    if (!std::isfinite(s)) return std::numeric_limits<double>::infinity();
    DoubleDouble r = a.re / s, i = a.im / s;
    return sqrt(sqr(r) + sqr(i)) * s;
}

DoubleDouble arg(const Complex& a) { return atan2(a.im, a.re); }

Complex polar(const DoubleDouble& mag, const DoubleDouble& phase) {
    DoubleDouble s, c;
    sincos(phase, s, c);
    return {mag * c, mag * s};
}

Complex exp(const Complex& a) { return polar(exp(a.re), a.im); }

Complex expm1(const Complex& a) {
    // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
    DoubleDouble em = expm1(a.re);
    DoubleDouble s, c;
    sincos(a.im, s, c);
    DoubleDouble sh = sin(ldexp(a.im, -1));
    return {em * c - 2.0 * sqr(sh), (em + 1.0) * s};
}

Complex log(const Complex& a) { return {log(abs(a)), arg(a)}; }

Complex sqrt(const Complex& a) {
    if (a.re.hi() == 0.0 && a.im.hi() == 0.0) return {};
    DoubleDouble m = abs(a);
    if (a.re.hi() >= 0.0) {
        DoubleDouble t = sqrt(ldexp(m + a.re, -1));
        return {t, a.im / (2.0 * t)};
    }
    DoubleDouble t = sqrt(ldexp(m - a.re, -1));
    if (a.im.hi() < 0.0) t = -t;
    return {a.im / (2.0 * t), t};
}

Complex pow(const Complex& a, const Complex& b) { return exp(b * log(a)); }

Complex pow(const Complex& a, int n) {
    if (n == 0) return 1.0;
    bool inv = n < 0;
    unsigned m = inv ? static_cast<unsigned>(-(long long)n) : static_cast<unsigned>(n);
    Complex r = 1.0, base = a;
    while (m) {
        if (m & 1u) r *= base;
        m >>= 1;
        if (m) base = base * base;
    }
    return inv ? 1.0 / r : r;
}

Complex sin(const Complex& a) {
    DoubleDouble s, c;
    sincos(a.re, s, c);
    return {s * cosh(a.im), c * sinh(a.im)};
}

Complex cos(const Complex& a) {
    DoubleDouble s, c;
    sincos(a.re, s, c);
    return {c * cosh(a.im), -s * sinh(a.im)};
}

}  // namespace ikern
