#include "ikern/ddouble.hpp"

#include <array>
#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace ikern {

namespace {

constexpr int kFactTable = 32;

// 1/k! for k < kFactTable
const std::array<DoubleDouble, kFactTable>& inv_factorials() {
    static const auto table = [] {
        std::array<DoubleDouble, kFactTable> t{};
        t[0] = 1.0;
        for (int k = 1; k < kFactTable; ++k) t[k] = t[k - 1] / static_cast<double>(k);
        return t;
    }();
    return table;
}

constexpr double kTwoPiTail = -5.989539619436679e-33;

// expm1 for |r| < 1e-3
DoubleDouble expm1_small(const DoubleDouble& r) {
    const auto& inv = inv_factorials();
    DoubleDouble s = r;
    DoubleDouble p = r;
    for (int k = 2; k < 14; ++k) {
        p *= r;
        DoubleDouble term = p * inv[k];
        s += term;
        if (std::abs(term.hi()) <= 1e-36 * std::abs(s.hi())) break;
    }
    return s;
}

// expm1 for |a| <= ~0.35 via argument halving
DoubleDouble expm1_reduced(const DoubleDouble& a) {
    DoubleDouble s = expm1_small(ldexp(a, -9));
    for (int i = 0; i < 9; ++i) s = s * (s + 2.0);
    return s;
}

void sincos_taylor(const DoubleDouble& t, DoubleDouble& s, DoubleDouble& c) {
    const auto& inv = inv_factorials();
    DoubleDouble t2 = sqr(t);
    s = t;
    c = 1.0;
    DoubleDouble ps = t;
    DoubleDouble pc = 1.0;
    for (int k = 1; 2 * k + 1 < kFactTable; ++k) {
        ps *= t2;
        pc *= t2;
        DoubleDouble ts = ps * inv[2 * k + 1];
        DoubleDouble tc = pc * inv[2 * k];
        if (k & 1) {
            s -= ts;
            c -= tc;
        } else {
            s += ts;
            c += tc;
        }
        if (std::abs(tc.hi()) <= 1e-36) break;
    }
}

}  // namespace

DoubleDouble sqrt(const DoubleDouble& a) {
    if (a.hi() == 0.0) return 0.0;
    if (a.hi() < 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (!std::isfinite(a.hi())) return a;
    double x = 1.0 / std::sqrt(a.hi());
    double ax = a.hi() * x;
    return dd_detail::two_sum(ax, (a - sqr(DoubleDouble(ax))).hi() * (x * 0.5));
}

DoubleDouble exp(const DoubleDouble& a) {
    if (a.hi() > 709.78) return std::numeric_limits<double>::infinity();
    if (a.hi() < -745.2) return 0.0;
    if (a.hi() == 0.0) return 1.0;
    double m = std::floor(a.hi() / dd_const::ln2.hi() + 0.5);
    DoubleDouble s = expm1_reduced(a - dd_const::ln2 * m) + 1.0;
    return ldexp(s, static_cast<int>(m));
}

DoubleDouble expm1(const DoubleDouble& a) {
    if (std::abs(a.hi()) < 0.35) return expm1_reduced(a);
    return exp(a) - 1.0;
}

DoubleDouble log(const DoubleDouble& a) {
    if (a.hi() == 1.0 && a.lo() == 0.0) return 0.0;
    if (a.hi() <= 0.0) {
        return a.hi() == 0.0 ? -std::numeric_limits<double>::infinity()
                             : std::numeric_limits<double>::quiet_NaN();
    }
    if (!std::isfinite(a.hi())) return a;
    DoubleDouble x = std::log(a.hi());
    return x + a * exp(-x) - 1.0;
}

DoubleDouble log1p(const DoubleDouble& a) {
    if (std::abs(a.hi()) > 0.25) return log(a + 1.0);
    if (a.hi() == 0.0) return 0.0;
    DoubleDouble x = std::log1p(a.hi());
    DoubleDouble em = expm1(x);
    return x + (a - em) / (em + 1.0);
}

DoubleDouble reduce_angle(const DoubleDouble& a) {
    if (std::abs(a.hi()) <= 3.14159) return a;
    double k = std::round(a.hi() / dd_const::two_pi.hi());
    return (a - dd_const::two_pi * k) - k * kTwoPiTail;
}

void sincos(const DoubleDouble& a, DoubleDouble& s, DoubleDouble& c) {
    if (!a.isfinite()) {
        s = c = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    DoubleDouble z = reduce_angle(a);
    double j = std::round(z.hi() / dd_const::half_pi.hi());
    DoubleDouble t = z - dd_const::half_pi * j;
    DoubleDouble st, ct;
    sincos_taylor(t, st, ct);
    switch ((static_cast<int>(j) % 4 + 4) % 4) {
        case 0: s = st; c = ct; break;
        case 1: s = ct; c = -st; break;
        case 2: s = -st; c = -ct; break;
        default: s = -ct; c = st; break;
    }
}

DoubleDouble sin(const DoubleDouble& a) {
    DoubleDouble s, c;
    sincos(a, s, c);
    return s;
}

DoubleDouble cos(const DoubleDouble& a) {
    DoubleDouble s, c;
    sincos(a, s, c);
    return c;
}

DoubleDouble atan2(const DoubleDouble& y, const DoubleDouble& x) {
    if (x.hi() == 0.0) {
        if (y.hi() == 0.0) return 0.0;
        return y.hi() > 0.0 ? dd_const::half_pi : -dd_const::half_pi;
    }
    if (y.hi() == 0.0) return x.hi() > 0.0 ? DoubleDouble(0.0) : dd_const::pi;
    double scale = std::max(std::abs(x.hi()), std::abs(y.hi()));
    DoubleDouble xs = x / scale, ys = y / scale;
    DoubleDouble r = sqrt(sqr(xs) + sqr(ys));
    DoubleDouble xx = xs / r, yy = ys / r;
    DoubleDouble z = std::atan2(y.hi(), x.hi());
    DoubleDouble s, c;
    sincos(z, s, c);
    if (std::abs(xx.hi()) > std::abs(yy.hi())) return z + (yy - s) / c;
    return z - (xx - c) / s;
}

DoubleDouble atan(const DoubleDouble& a) { return atan2(a, DoubleDouble(1.0)); }

DoubleDouble sinh(const DoubleDouble& a) {
    if (std::abs(a.hi()) > 20.0) {
        if (std::abs(a.hi()) > 709.0) return std::copysign(std::numeric_limits<double>::infinity(), a.hi());
        DoubleDouble e = exp(a);
        return ldexp(e - 1.0 / e, -1);
    }
    DoubleDouble e = expm1(a);
    return ldexp(e * (e + 2.0) / (e + 1.0), -1);
}

DoubleDouble cosh(const DoubleDouble& a) {
    if (std::abs(a.hi()) > 709.0) return std::numeric_limits<double>::infinity();
    DoubleDouble e = exp(abs(a));
    return ldexp(e + 1.0 / e, -1);
}

DoubleDouble tanh(const DoubleDouble& a) {
    if (a.hi() < 0.0) return -tanh(-a);
    if (a.hi() > 40.0) return 1.0 - 2.0 * exp(-2.0 * a);
    DoubleDouble e = expm1(-2.0 * a);
    return -e / (e + 2.0);
}

DoubleDouble asinh(const DoubleDouble& a) {
    if (a.hi() < 0.0) return -asinh(-a);
    if (a.hi() > 1e8) return log(2.0 * a) + 0.25 / sqr(a);
    DoubleDouble a2 = sqr(a);
    return log1p(a + a2 / (1.0 + sqrt(a2 + 1.0)));
}

DoubleDouble pow(const DoubleDouble& a, const DoubleDouble& b) { return exp(b * log(a)); }

DoubleDouble pow(const DoubleDouble& a, int n) {
    if (n == 0) return 1.0;
    bool inv = n < 0;
    unsigned m = inv ? static_cast<unsigned>(-(long long)n) : static_cast<unsigned>(n);
    DoubleDouble r = 1.0, base = a;
    while (m) {
        if (m & 1u) r *= base;
        m >>= 1;
        if (m) base = sqr(base);
    }
    return inv ? 1.0 / r : r;
}

DoubleDouble log_sinh(const DoubleDouble& a) {
    if (a.hi() > 20.0) return a - dd_const::ln2 + log1p(-exp(-2.0 * a));
    return log(sinh(a));
}

std::string to_string(const DoubleDouble& a, int digits) {
    if (std::isnan(a.hi())) return "nan";
    if (std::isinf(a.hi())) return a.hi() > 0 ? "inf" : "-inf";
    if (a.hi() == 0.0) return "0";
    std::string out;
    DoubleDouble r = a;
    if (r.hi() < 0) {
        out += '-';
        r = -r;
    }
    int e = static_cast<int>(std::floor(std::log10(r.hi())));
    r = r / pow(DoubleDouble(10.0), e);
    if (r.hi() >= 10.0) {
        r = r / 10.0;
        ++e;
    } else if (r.hi() < 1.0) {
        r = r * 10.0;
        --e;
    }
    std::string ds;
    for (int i = 0; i < digits; ++i) {
        int d = static_cast<int>(std::floor(r.hi()));
        if (d < 0) d = 0;
        if (d > 9) d = 9;
        ds += static_cast<char>('0' + d);
        r = (r - static_cast<double>(d)) * 10.0;
    }
    out += ds[0];
    out += '.';
    out += ds.substr(1);
    out += 'e';
    out += std::to_string(e);
    return out;
}

DoubleDouble parse_dd(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    DoubleDouble r = 0.0;
    int exp10 = 0;
    bool any = false, dot = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '.') {
            if (dot) break;
            dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            any = true;
            r = r * 10.0 + static_cast<double>(ch - '0');
            if (dot) --exp10;
        } else {
            break;
        }
    }
    if (!any) throw std::invalid_argument("parse_dd: no digits in '" + s + "'");
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        exp10 += std::atoi(s.c_str() + i + 1);
    }
    if (exp10 > 0) r *= pow(DoubleDouble(10.0), exp10);
    if (exp10 < 0) r /= pow(DoubleDouble(10.0), -exp10);
    return neg ? -r : r;
}

}  // namespace ikern
