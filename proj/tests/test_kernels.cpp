#include <cmath>

#include "ikern/kernels.hpp"
#include "oracles/kernels_values.inc"
#include "test_support.hpp"

using namespace ikern;

namespace {

KernelPoint kp(KernelId k, double tau, double x) {
    KernelPoint p;
    p.kernel = k;
    p.tau = tau;
    p.x = x;
    return p;
}

}  // namespace

TEST_CASE("kernel and route names round-trip") {
    for (KernelId k : {KernelId::kl, KernelId::lebedev_square, KernelId::lebedev_product,
                       KernelId::index_whittaker, KernelId::mehler_fock, KernelId::olevskii}) {
        CHECK(parse_kernel(to_string(k)) == k);
    }
    CHECK(parse_kernel("square") == KernelId::lebedev_square);
    CHECK(!parse_kernel("bessel").has_value());
    CHECK(parse_route("quad") == Route::quadrature);
    CHECK(!parse_route("fast").has_value());
}

TEST_CASE("squared kernel matches the oracle on both routes") {
    for (const OracleRow& r : kSquare) {
        double tau = r.args[0], x = r.args[1];
        CHECK(rel_diff(k_squared_direct(tau, x).value.to_double(), r.re) < 1e-13);
        KernelPoint p = kp(KernelId::lebedev_square, tau, x);
        CHECK(rel_diff(eval(p, Route::quadrature).value.re.to_double(), r.re) < 1e-12);
    }
}

TEST_CASE("product kernel matches the oracle") {
    for (const OracleRow& r : kProduct) {
        RealResult v = product_kernel_direct(r.args[0], r.args[1]);
        CHECK(rel_diff(v.value.to_double(), r.re) < 1e-13);
    }
}

TEST_CASE("Whittaker kernel matches the oracle on both series routes") {
    for (const OracleRow& r : kWhittaker) {
        double rho = r.args[0], tau = r.args[1], x = r.args[2];
        CAPTURE(rho);
        CAPTURE(tau);
        KernelPoint p = kp(KernelId::index_whittaker, tau, x);
        p.rho = rho;
        CHECK(rel_diff(eval(p, Route::series).value.re.to_double(), r.re) < 1e-13);
        if (std::abs(rho) < 0.5 && x < 1.0) {
            RealResult s = whittaker_direct(rho, tau, x, WhittakerRoute::series218);
            CHECK(rel_diff((s.value * exp(DoubleDouble(0.5 * x))).to_double(), r.re) < 1e-12);
        }
    }
}

TEST_CASE("Mehler-Fock kernel matches the oracle") {
    for (const OracleRow& r : kMehlerFock) {
        RealResult v = mehler_fock_direct(r.args[0], r.args[1], r.args[2]);
        CHECK(rel_diff(v.value.to_double(), r.re) < 1e-13);
    }
    CHECK_THROWS_AS(mehler_fock_direct(-0.6, 1.0, 1.0), DomainError);
}

TEST_CASE("Olevskii kernel matches the oracle") {
    for (const OracleRow& r : kOlevskii) {
        EvalResult v = olevskii_direct(r.args[0], r.args[1], r.args[2], r.args[3]);
        CHECK(rel_diff(v.value.re.to_double(), r.re) < 1e-12);
    }
    CHECK_THROWS_AS(olevskii_direct(-0.5, 0.25, 1.0, 1.0), DomainError);
}

TEST_CASE("Theorem 1 main term matches the oracle") {
    for (const OracleRow& r : kThm1Main) {
        MainTerm m = thm1_main(r.args[0], r.args[1]);
        CHECK(rel_diff(m.scale * m.main, r.re) < 1e-13);
        CHECK(std::abs(std::log(m.scale) - m.log_scale) < 1e-12);
    }
}

TEST_CASE("Theorem 1 explicit remainder reproduces the kernel") {
    double tau = 6.0, x = 0.5;
    MainTerm m = thm1_main(tau, x);
    double k = ImaginaryOrderK(tau)(x).value.to_double();
    for (int N = 0; N <= 2; ++N) {
        double r = thm1_remainder_explicit(N, tau, x);
        CHECK(std::abs(k / m.scale - m.main - r) < 1e-13);
    }
}

TEST_CASE("Theorem 4 squared phase makes the explicit remainder exact") {
    double rho = 0.2, tau = 3.0, x = 0.5;
    MainTerm m = thm4_main(rho, tau, x, Thm4Phase::squared);
    double w = whittaker_direct(rho, tau, x).value.to_double() * std::exp(0.5 * x);
    double r = thm4_remainder_explicit(rho, tau, x, Thm4Phase::squared);
    CHECK(std::abs(w / m.scale - m.main - r) < 1e-13);
}

TEST_CASE("expansion reports carry consistent fields") {
    ExpansionReport e = thm2_main_and_bound(8.0, 0.5, 5.0, 1.0);
    CHECK(e.bound_holds);
    CHECK(std::abs(e.empirical_remainder) <= e.remainder_bound);
    CHECK_THROWS_AS(thm2_main_and_bound(4.0, 0.5, 5.0, 1.0), DomainError);
}

TEST_CASE("eval routes and errors") {
    KernelPoint p = kp(KernelId::kl, 1.0, 1.0);
    EvalResult s = eval(p, Route::series), q = eval(p, Route::quadrature);
    CHECK(rel_diff(s.value.re.to_double(), q.value.re.to_double()) < 1e-14);
    CHECK(eval(p, Route::asymptotic).route == Route::asymptotic);
    KernelPoint w = kp(KernelId::index_whittaker, 1.0, 1.0);
    CHECK_THROWS_AS(eval(w, Route::series), UsageError);
    w.rho = 0.3;
    CHECK_THROWS_AS(eval(w, Route::quadrature), UnsupportedRoute);
    KernelPoint mf = kp(KernelId::mehler_fock, 1.0, 1.0);
    mf.mu = 0.5;
    CHECK_THROWS_AS(eval(mf, Route::asymptotic), UnsupportedRoute);
    CHECK_THROWS_AS(eval(kp(KernelId::kl, -1.0, 1.0), Route::series), DomainError);
}

TEST_CASE("asymptotic envelope follows the scale factor") {
    KernelPoint p = kp(KernelId::kl, 10.0, 1.0);
    CHECK(rel_diff(asymptotic_envelope(p), thm1_main(10.0, 1.0).scale) < 1e-15);
    CHECK(rel_diff(asymptotic_envelope(kp(KernelId::lebedev_product, 4.0, 1.0)), 0.25) < 1e-15);
}
