#pragma once

#include <cmath>

#include "doctest.h"
#include "ikern/complex.hpp"

inline double rel_diff(double got, double want) {
    double d = std::abs(got - want);
    return want == 0.0 ? d : d / std::abs(want);
}

inline double rel_diff(const ikern::Complex& got, double re, double im) {
    double dr = got.re.to_double() - re, di = got.im.to_double() - im;
    return std::hypot(dr, di) / std::hypot(re, im);
}

#define CHECK_REL(got, want, tol) CHECK(rel_diff((got), (want)) <= (tol))
