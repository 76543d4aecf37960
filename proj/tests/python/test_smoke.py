import cmath
import math

import pytest

import index_kernels as ik


def test_k_itau_matches_reference():
    # frozen from tests/oracles/bessel.py
    assert ik.k_itau(1.0, 1.0) == pytest.approx(0.289428037025992127634567159242, rel=1e-13)


def test_eval_kernel_routes_agree():
    s = ik.eval_kernel("kl", x=1.0, tau=1.0)
    q = ik.eval_kernel("kl", x=1.0, tau=1.0, route="quadrature")
    assert s["route"] == "series"
    assert s["value"].real == pytest.approx(q["value"].real, rel=1e-14)
    assert not s["cancellation"]


def test_whittaker_needs_rho():
    with pytest.raises(ik.UsageError):
        ik.eval_kernel("whittaker", x=1.0, tau=1.0)
    w = ik.eval_kernel("whittaker", x=0.5, tau=3.0, rho=0.2)
    assert w["value"].real == pytest.approx(6.24334414634624650829821537138e-3, rel=1e-13)


def test_domain_errors_map_to_exceptions():
    with pytest.raises(ik.DomainError):
        ik.eval_kernel("kl", x=1.0, tau=-1.0)
    with pytest.raises(ik.Error):
        ik.check_olevskii(1.2, 0.25, 1.0, 1.0)


def test_binet_and_gamma():
    assert ik.binet_r(1.0).real == pytest.approx(math.e / math.sqrt(2 * math.pi) - 1, rel=1e-14)
    assert ik.gamma(5.0).real == pytest.approx(24.0, rel=1e-15)
    assert ik.ln_gamma(0.5).real == pytest.approx(0.5 * math.log(math.pi), rel=1e-15)
    b = ik.check_binet(10.0, math.pi / 2)
    assert b["holds"] and b["rhs"] == pytest.approx(math.expm1(1 / 60), rel=1e-14)


def test_bounds_hold():
    assert ik.check_kl(1, 1.0, 1.0)["holds"]
    assert ik.check_product(1.0, 1.0)["rhs"] == pytest.approx(4.18419848021240659580864851369, rel=1e-14)
    assert ik.check_whittaker(1, 1.0, 1.0, 1.0)["holds"]


def test_run_verify_csv():
    code, csv = ik.run("verify", {"bound": "1.1", "n": 1, "grid": ["x=0.5:1:0.5", "tau=1:2:1"]})
    assert code == 0
    lines = csv.strip().splitlines()
    assert lines[0].startswith("bound_id,n,x,tau")
    assert len(lines) == 5


def test_run_usage_error_exit_code():
    code, csv = ik.run("verify", {"bound": "1.13", "mu": 1.2, "nu": 0.25})
    assert code == 2
    assert csv == ""


def test_fit_lebedev_small_grid():
    f = ik.fit_lebedev_constants(1.0, 12)
    assert f["A"] > 1.0 and f["B"] > 1.0
    assert cmath.isfinite(f["A"])
