import math

import numpy as np
import pytest

from logcoef import closed_forms as cf
from logcoef.objectives import objective_gamma3
from logcoef.search import (
    NAMED_POLYNOMIALS,
    NumericalError,
    RealPolynomial,
    classify_point,
    codimension,
    face_r1_p,
    grid_maximize,
    interior_r_squared,
    lattice_values,
    real_roots_in_interval,
    refine_local,
    stationarity_candidates,
    verify_claimed_max,
)


def test_polynomial_basics():
    p = RealPolynomial([-2, 0, 1])
    assert p(3.0) == 7
    assert p.derivative().coefficients == (0, 2) or list(p.derivative().coefficients) == [0, 2]


def test_roots_simple():
    roots = real_roots_in_interval(RealPolynomial([-2, 0, 1]), 0, 2)
    assert roots == pytest.approx([math.sqrt(2)], abs=1e-9)


def test_double_root_found():
    # (x - 1/2)^2 (x - 3/2)
    p = RealPolynomial([-3 / 8, 7 / 4, -5 / 2, 1])
    roots = real_roots_in_interval(p, 0, 2)
    assert roots == pytest.approx([0.5, 1.5], abs=1e-6)


def test_roots_exclude_endpoints_and_validate():
    assert real_roots_in_interval(RealPolynomial([0, 1]), 0, 1) == []
    with pytest.raises(ValueError):
        real_roots_in_interval(RealPolynomial([0, 1]), 1, 0)


def test_close_roots_are_separated():
    p = RealPolynomial([1.0]) * RealPolynomial([-1.0, 1]) * RealPolynomial([-1.001, 1])
    assert real_roots_in_interval(p, 0, 2) == pytest.approx([1.0, 1.001], abs=1e-9)


@pytest.mark.parametrize(
    "name,expected",
    [("zeta1", [0.151355, 1.30718]), ("zeta2", [0.354278, 1.27688]), ("octic_f2", [1.54836])],
)
def test_named_roots(name, expected):
    assert real_roots_in_interval(NAMED_POLYNOMIALS[name], 0, 2) == pytest.approx(expected, abs=5e-6)


def test_grid_and_refine_on_quadratic():
    f = lambda x, y: -((x - 0.3) ** 2) - 2 * (y + 0.7) ** 2  # noqa: E731
    v, pt = grid_maximize(f, ((0, 1), (-1, 1)), 11)
    assert pt == pytest.approx((0.3, -0.8), abs=1e-12) or pt == pytest.approx((0.3, -0.6), abs=1e-12)
    v, pt = refine_local(f, pt, ((0, 1), (-1, 1)), 1e-10)
    assert pt == pytest.approx((0.3, -0.7), abs=1e-8)
    assert v == pytest.approx(0, abs=1e-15)


def test_refine_stays_in_box_and_never_worsens():
    f = lambda x, y: x + y  # noqa: E731
    v, pt = refine_local(f, (0.2, 0.2), ((0, 1), (0, 1)))
    assert pt == pytest.approx((1, 1))
    assert v == pytest.approx(2)


def test_refine_rejects_nonfinite():
    with pytest.raises(NumericalError):
        refine_local(lambda x: math.nan, (0.5,), ((0, 1),))


def test_lattice_thread_independence():
    f = lambda c, r, p: objective_gamma3("F3", c, r, p)  # noqa: E731
    _, a = lattice_values(f, ((0, 2), (0, 1), (-1, 1)), 41, threads=1)
    _, b = lattice_values(f, ((0, 2), (0, 1), (-1, 1)), 41, threads=4)
    assert np.array_equal(a, b)


def test_strata_labels():
    b = ((0, 2), (0, 1), (-1, 1))
    assert classify_point((0.5, 1.0, 1.0), b, "crp") == "edge:r=1,p=1"
    assert codimension("edge:r=1,p=1") == 2
    assert classify_point((0.5, 0.5, 0.0), b, "crp") == "interior"
    assert codimension("interior") == 0


@pytest.mark.parametrize("cid", ["F1", "F2", "F3"])
def test_gamma3_search(cid):
    rep = verify_claimed_max(cid, "gamma3")
    assert rep.abs_gap <= 1e-8
    want = [float(v) for v in cf.GAMMA3_ARGMAX[cid]]
    assert np.allclose(rep.argmax, want, atol=1e-5)
    assert rep.stratum == f"face:p={int(want[2])}"
    assert rep.bound == pytest.approx(float(cf.GAMMA3_BOUND[cid]), abs=1e-10)


def test_gamma3_search_coarse():
    rep = verify_claimed_max("F2", "gamma3", resolution=51)
    assert rep.abs_gap <= 1e-2


@pytest.mark.parametrize("cid,value,point", [("F1", 8 / 3, (1 / 3, 1)), ("F3", 12 / 5, (1 / 5, -1))])
def test_gamma2_search(cid, value, point):
    rep = verify_claimed_max(cid, "gamma2")
    assert rep.max_value == pytest.approx(value, abs=1e-6)
    assert rep.argmax == pytest.approx(point, abs=1e-6)


def test_gamma2_f2_constant():
    rep = verify_claimed_max("F2", "gamma2", resolution=21)
    assert rep.max_value == 3.0 and rep.abs_gap == 0.0


def test_gamma1_search_and_note():
    rep = verify_claimed_max("F2", "gamma1", resolution=21)
    assert rep.max_value == pytest.approx(0.5)
    assert any("exceeded" in n for n in rep.notes)


def test_stationarity_candidates():
    f1 = stationarity_candidates("F1")
    assert [round(s.point.p, 6) for s in f1] == [0.904769, 0.050509]
    assert [s.value for s in f1] == pytest.approx([6.83676, 11.2488], abs=5e-4)
    (f2,) = stationarity_candidates("F2")
    assert f2.point.c == pytest.approx(1.54836, abs=5e-6)
    assert f2.point.p == pytest.approx(0.0414152, abs=5e-6)
    assert f2.value == pytest.approx(18.0595, abs=5e-4)
    assert face_r1_p("F2", f2.point.c) == pytest.approx(f2.point.p)


def test_interior_ratio_signs():
    c = np.linspace(0, 2, 102)[1:-1]
    assert np.all(interior_r_squared("F1", c) < 0)
    assert np.all(interior_r_squared("F2", c) < 0)
    # F3: the ratio is positive but always exceeds 1, so no interior point either
    assert np.all(interior_r_squared("F3", c) > 1)
