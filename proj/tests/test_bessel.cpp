#include <cmath>

#include "ikern/bessel.hpp"
#include "oracles/bessel_values.inc"
#include "test_support.hpp"

using namespace ikern;

TEST_CASE("K of imaginary order matches the oracle") {
    for (const OracleRow& r : kKItau) {
        double tau = r.args[0], x = r.args[1];
        CAPTURE(tau);
        CAPTURE(x);
        RealResult k = ImaginaryOrderK(tau)(x);
        CHECK(rel_diff(k.value.to_double(), r.re) <= 1e-13);
        CHECK(k.rel_error < 1e-10);
    }
}

TEST_CASE("K series and quadrature agree where both resolve") {
    ImaginaryOrderK k(3.0);
    double s = k.series(1.5).value.to_double(), q = k.quad(1.5).value.to_double();
    CHECK(rel_diff(s, q) < 1e-14);
    CHECK(rel_diff(k_itau_series(3.0, 1.5).value.to_double(), s) < 1e-15);
    CHECK(rel_diff(k_itau_quad(3.0, 1.5).value.to_double(), q) < 1e-15);
}

TEST_CASE("K series reports precision loss at large argument") {
    CHECK_THROWS_AS(k_itau_series(1.0, 60.0), PrecisionLossError);
    RealResult k = k_itau_series(1.0, 60.0, {}, 1e300);
    CHECK(k.rel_error > 1.0);
    CHECK(rel_diff(ImaginaryOrderK(1.0)(60.0).value.to_double(), k_itau_quad(1.0, 60.0).value.to_double()) < 1e-14);
}

TEST_CASE("I of imaginary order matches the oracle") {
    for (const OracleRow& r : kIItau) {
        double tau = r.args[0], x = r.args[1];
        SeriesResult s = bessel_i(Complex(0.0, tau), x);
        CHECK(rel_diff(s.value, r.re, r.im) <= 1e-14);
        SeriesResult p = ImaginaryOrderK(tau).i_plus(x);
        CHECK(rel_diff(p.value, r.re, r.im) <= 1e-14);
    }
}

TEST_CASE("J matches the oracle on both sides of the switch radius") {
    for (const OracleRow& r : kJReal) {
        double nu = r.args[0], x = r.args[1];
        CAPTURE(nu);
        CAPTURE(x);
        RealResult j = bessel_j(nu, x);
        // absolute near zeros, relative elsewhere
        CHECK(std::abs(j.value.to_double() - r.re) <= 1e-14 * std::max(std::abs(r.re), 0.1));
    }
}

TEST_CASE("J series and asymptotic expansion overlap") {
    double nu = 0.5, x = 30.0;
    double s = bessel_j_series(nu, x).value.to_double();
    double a = bessel_j_asymptotic(nu, x).value.to_double();
    CHECK(std::abs(s - a) < 1e-14);
    // J_{1/2}(x) = sqrt(2 / (pi x)) sin x
    CHECK(std::abs(a - std::sqrt(2.0 / (M_PI * x)) * std::sin(x)) < 1e-15);
    CHECK(bessel_j_coefficient(0, nu).to_double() == 1.0);
    CHECK(bessel_j_switch_radius(2.0) > 20.0);
}

TEST_CASE("K of real order matches the oracle") {
    for (const OracleRow& r : kKReal) {
        RealResult k = bessel_k_real(r.args[0], r.args[1]);
        CHECK(rel_diff(k.value.to_double(), r.re) <= 1e-14);
    }
}
