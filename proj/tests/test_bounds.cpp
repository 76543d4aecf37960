#include <cmath>

#include "ikern/bounds.hpp"
#include "oracles/bounds_values.inc"
#include "test_support.hpp"

using namespace ikern;

TEST_CASE("bound right-hand sides match the oracle") {
    for (const OracleRow& r : kBoundKl)
        CHECK(rel_diff(bound_kl_rhs(int(r.args[0]), r.args[1], r.args[2]), r.re) < 1e-13);
    for (const OracleRow& r : kBoundMehlerFock)
        CHECK(rel_diff(bound_mehler_fock_rhs(int(r.args[0]), r.args[1], r.args[2], r.args[3]), r.re) < 1e-13);
    for (const OracleRow& r : kBoundProduct) CHECK(rel_diff(bound_product_rhs(r.args[0]), r.re) < 1e-14);
    for (const OracleRow& r : kBoundWhittaker)
        CHECK(rel_diff(bound_whittaker_rhs(int(r.args[0]), r.args[1], r.args[2], r.args[3]), r.re) < 1e-13);
    for (const OracleRow& r : kBoundOlevskii)
        CHECK(rel_diff(bound_olevskii_rhs(r.args[0], r.args[1], r.args[2], r.args[3]), r.re) < 1e-13);
    for (const OracleRow& r : kBoundF11) CHECK(rel_diff(f11_estimate_rhs(r.args[0], r.args[1], r.args[2]), r.re) < 1e-14);
}

TEST_CASE("bounds hold at the reference points") {
    CHECK(check_kl(1, 1.0, 1.0).holds);
    CHECK(check_mehler_fock(1, 0.5, 1.0, 1.0).holds);
    CHECK(check_product(0.5, 0.25).holds);
    CHECK(check_product(1.0, 1.0).holds);
    CHECK(check_whittaker(1, 1.0, 1.0, 1.0).holds);
    CHECK(check_whittaker(1, 0.3, 1.0, 0.5).holds);
    CHECK(check_olevskii(0.5, 0.25, 1.0, 1.0).holds);
    CHECK(check_f11_estimate(0.3, 5.0, 0.5).holds);
}

TEST_CASE("Binet bound uses the tighter form") {
    for (const OracleRow& r : kBoundBinet) {
        BoundReport b = check_binet(r.args[0], 0.0);
        CHECK(rel_diff(b.rhs, r.re) < 1e-14);
        CHECK(b.holds);
    }
    BoundReport axis = check_binet(10.0, 0.5 * M_PI);
    CHECK(axis.holds);
    CHECK(axis.rhs < std::exp(1.0 / 60.0) / 60.0);
    CHECK_THROWS_AS(check_binet(1.0, 2.0), DomainError);
}

TEST_CASE("report margin and slack") {
    KernelPoint p;
    BoundReport r = make_report("1.1", p, 1, 1.0, 1.0 - 1e-12);
    CHECK(r.holds);  // within the default slack
    CHECK(r.margin < 0.0);
    CHECK_FALSE(make_report("1.1", p, 1, 1.0, 0.9).holds);
}

TEST_CASE("bound domains") {
    CHECK_THROWS_AS(bound_kl_rhs(0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(bound_olevskii_rhs(1.2, 0.25, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(bound_olevskii_rhs(0.5, -0.3, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(bound_whittaker_rhs(1, 0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("Lebedev weights and fit") {
    double k = ImaginaryOrderK(2.0)(1.0).value.to_double();
    double s = std::sqrt(std::sinh(2.0 * M_PI));
    CHECK(rel_diff(lebedev_weight_a(2.0, 1.0), std::abs(k) * std::pow(2.0, 0.25) * s) < 1e-14);
    CHECK(rel_diff(lebedev_weight_b(2.0, 1.0), std::abs(k) * std::pow(2.0, 0.25) * s) < 1e-14);
    LebedevGrid g = lebedev_grid(1.0, 12);
    CHECK(g.taus.size() == 12);
    CHECK(g.xa.back() == doctest::Approx(1.0));
    CHECK(g.xb.front() == doctest::Approx(1.0));
    LebedevFit f = fit_lebedev_constants(1.0, g.taus, g.xa, g.xb);
    CHECK(f.A > 1.0);
    CHECK(f.B > 1.0);
    CHECK(f.A == doctest::Approx(lebedev_weight_a(f.A_tau, f.A_x)));
    LebedevGrid h = lebedev_grid(1.0, 12, 0.5);
    CHECK(h.taus.size() == 11);
    CHECK(h.taus[0] > g.taus[0]);
    CHECK(h.taus[0] < g.taus[1]);
}
