#include <cmath>

#include "ikern/quadrature.hpp"
#include "oracles/bessel_values.inc"
#include "oracles/kernels_values.inc"
#include "test_support.hpp"

using namespace ikern;

TEST_CASE("semi-infinite rules on closed forms") {
    // integral of e^{-t} = 1
    QuadResult e = integrate_semi_infinite([](const DoubleDouble& t) { return Complex(exp(-t)); }, Decay::exp());
    CHECK(std::abs(e.real() - 1.0) < 1e-15);
    // integral of 1/(1+t^2) = pi/2
    QuadResult a = integrate_semi_infinite(
        [](const DoubleDouble& t) { return Complex(1.0 / (1.0 + sqr(t))); }, Decay::alg(2.0));
    CHECK(std::abs(a.real() - 0.5 * M_PI) < 1e-14);
    CHECK(a.nodes_used > 0);
}

TEST_CASE("Mehler-Fock square integral matches the oracle") {
    for (const OracleRow& r : kMehlerFock) {
        double mu = r.args[0], tau = r.args[1], x = r.args[2];
        if (tau > 3.0) continue;  // integrand decays like e^{-y}; large tau cancels
        CAPTURE(mu);
        CAPTURE(tau);
        QuadResult q = mehler_fock_sq(mu, tau, x);
        double g = std::exp(ln_gamma(Complex(mu + 0.5, tau)).re.to_double());
        CHECK(rel_diff(std::sqrt(std::abs(q.real())) / g, std::abs(r.re)) < 1e-10);
    }
}

TEST_CASE("product integral matches the oracle below the tau cap") {
    for (const OracleRow& r : kProduct) {
        double tau = r.args[0], x = r.args[1];
        if (tau > 2.0) {
            CHECK_THROWS_AS(product_kernel_quad(tau, x), NonConvergenceError);
            continue;
        }
        QuadResult q = product_kernel_quad(tau, x);
        CHECK(rel_diff(q.real(), r.re) < 1e-9);
    }
}

TEST_CASE("Whittaker integral matches the oracle for negative rho") {
    for (const OracleRow& r : kWhittaker) {
        double rho = r.args[0], tau = r.args[1], x = r.args[2];
        if (!(rho < 0.0)) continue;
        QuadResult q = whittaker_quad(-rho, tau, 0.5 * x);
        CHECK(rel_diff(q.real(), r.re) < 1e-10);
    }
}

TEST_CASE("Olevskii integral matches the oracle") {
    const OracleRow& r = kOlevskii[0];
    QuadResult q = olevskii_quad(r.args[0], r.args[1], r.args[2], r.args[3]);
    CHECK(rel_diff(q.real(), r.re) < 1e-9);
}
