#pragma once

#include <complex>

#include "ikern/ddouble.hpp"

namespace ikern {

struct Complex {
    DoubleDouble re;
    DoubleDouble im;

    constexpr Complex() = default;
    constexpr Complex(double r) : re(r), im(0.0) {}
    constexpr Complex(DoubleDouble r) : re(r), im(0.0) {}
    constexpr Complex(DoubleDouble r, DoubleDouble i) : re(r), im(i) {}
    constexpr Complex(double r, double i) : re(r), im(i) {}
    Complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
    bool isfinite() const { return re.isfinite() && im.isfinite(); }

    Complex& operator+=(const Complex& b) { re += b.re; im += b.im; return *this; }
    Complex& operator-=(const Complex& b) { re -= b.re; im -= b.im; return *this; }
    Complex& operator*=(const Complex& b);
    Complex& operator/=(const Complex& b);
};

inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator*(const Complex& a, const DoubleDouble& s) { return {a.re * s, a.im * s}; }
inline Complex operator*(const DoubleDouble& s, const Complex& a) { return a * s; }
inline Complex operator*(const Complex& a, double s) { return {a.re * s, a.im * s}; }
inline Complex operator*(double s, const Complex& a) { return a * s; }
inline Complex operator/(const Complex& a, const DoubleDouble& s) { return {a.re / s, a.im / s}; }
inline Complex operator/(const Complex& a, double s) { return {a.re / s, a.im / s}; }

// Smith's algorithm
inline Complex operator/(const Complex& a, const Complex& b) {
    if (std::abs(b.re.hi()) >= std::abs(b.im.hi())) {
        DoubleDouble r = b.im / b.re;
        DoubleDouble d = b.re + b.im * r;
        return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    DoubleDouble r = b.re / b.im;
    DoubleDouble d = b.re * r + b.im;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}
inline Complex operator/(double a, const Complex& b) { return Complex(a) / b; }
inline Complex operator/(const DoubleDouble& a, const Complex& b) { return Complex(a) / b; }

inline Complex& Complex::operator*=(const Complex& b) { return *this = *this * b; }
inline Complex& Complex::operator/=(const Complex& b) { return *this = *this / b; }

inline Complex conj(const Complex& a) { return {a.re, -a.im}; }
inline DoubleDouble norm(const Complex& a) { return sqr(a.re) + sqr(a.im); }
inline Complex prod_i(const Complex& a) { return {-a.im, a.re}; }

DoubleDouble abs(const Complex& a);
DoubleDouble arg(const Complex& a);
/// mag * exp(i phase)
Complex polar(const DoubleDouble& mag, const DoubleDouble& phase);
Complex exp(const Complex& a);
Complex expm1(const Complex& a);
/// Principal branch.
Complex log(const Complex& a);
Complex sqrt(const Complex& a);
Complex pow(const Complex& a, const Complex& b);
Complex pow(const Complex& a, int n);
Complex sin(const Complex& a);
Complex cos(const Complex& a);

}  // namespace ikern
