import math

import numpy as np
import pytest
import sympy as sp

import reference_forms as ref
from reference_forms import gamma3_symbolic
from logcoef.caratheodory import herglotz_coefficients_mp, lemma1_recover, random_herglotz
from logcoef.classes import F1, F2, F3, build_ctc, gammas123
from logcoef.objectives import (
    GAMMA3_SCALE,
    cuboid_point_from_x,
    gamma2_majorant,
    objective_gamma1,
    objective_gamma2,
    objective_gamma3,
    phi_general,
)


def test_phi_oracle_monomials():
    """96 gamma_3 = 6 t (1 - x xb)(4 - c^2) + phi, exactly, after the c2, c3 substitution."""
    g48, (b2, b3, b4, c1, c2, c3) = gamma3_symbolic()
    x, xb, t = sp.symbols("x xb t")
    k = 4 - c1**2
    sub = {
        c2: (c1**2 + x * k) / 2,
        c3: (c1**3 + 2 * k * c1 * x - c1 * k * x**2 + 2 * k * (1 - x * xb) * t) / 4,
    }
    lhs = sp.expand(2 * g48.subs(sub))
    phi = c1**3 + (4 * b3 - 2 * b2**2) * c1 + (2 * b2**3 - 8 * b2 * b3 + 12 * b4) + x * k * (2 * b2 + 2 * c1 - 3 * c1 * x)
    rhs = sp.expand(6 * t * (1 - x * xb) * k + phi)
    gens = (c1, x, xb, t, b2, b3, b4)
    assert sp.Poly(lhs, *gens).as_dict() == sp.Poly(rhs, *gens).as_dict()
    # the printed display, with b1 = 1 in place of b2 and 2 b4 in place of 12 b4, is not the same
    printed = c1**3 + (4 * b3 - 2) * c1 + (2 * b2**3 - 8 * b2 * b3 + 2 * b4) + x * k * (2 * b2 + 2 * c1 - 3 * c1 * x)
    assert sp.expand(lhs - 6 * t * (1 - x * xb) * k - printed) != 0


def test_closed_form_gamma3_matches_symbolic():
    g48, syms = gamma3_symbolic()
    rng = np.random.default_rng(2)
    for cls in (F1, F2, F3):
        f = build_ctc(cls, random_herglotz(rng), 6)
        vals = dict(zip(syms, [*cls.b234, *map(complex, f.c(3))]))
        assert abs(complex(g48.subs(vals)) / 48 - gammas123(f)[2]) < 1e-13


@pytest.fixture(scope="module")
def cuboid_sample():
    rng = np.random.default_rng(1234)
    return rng.uniform(0, 2, 1000), rng.uniform(0, 1, 1000), rng.uniform(-1, 1, 1000)


def test_specialisation_to_reduced_forms(cuboid_sample):
    c, r, p = cuboid_sample
    assert np.max(np.abs(phi_general(F1, c, r, p) - 2 * np.sqrt(ref.phi1(c, r, p)))) <= 1e-12
    assert np.max(np.abs(phi_general(F2, c, r, p) - c * np.sqrt(ref.phi2(c, r, p)))) <= 1e-12
    assert np.max(np.abs(phi_general(F3, c, r, p) - np.sqrt(ref.phi3(c, r, p)))) <= 1e-12
    for cid, fn in ref.REDUCED.items():
        assert np.max(np.abs(objective_gamma3(cid, c, r, p) - fn(c, r, p))) <= 1e-12


def test_literal_phi1_differs(cuboid_sample):
    c, r, p = cuboid_sample
    # at c = 0 the literal form disagrees with its own face formula
    assert not np.allclose(np.sqrt(np.clip(ref.phi1_literal(0.0, r, p), 0, None)) + 12 * (1 - r**2), ref.G_c0(r, p))
    assert np.allclose(ref.G(0.0, r, p), ref.G_c0(r, p))


def test_face_restrictions(cuboid_sample):
    c, r, p = cuboid_sample
    checks = [
        (objective_gamma3(F1, 0.0, r, p), ref.G_c0(r, p)),
        (objective_gamma3(F1, c, 0.0, p), ref.G_r0(c)),
        (objective_gamma3(F1, c, 1.0, p), ref.G_r1(c, p)),
        (objective_gamma3(F1, 2.0, r, p), 9.0),
        (objective_gamma3(F2, 0.0, r, p), 24 * (1 - r**2)),
        (objective_gamma3(F2, c, 0.0, p), ref.F_r0(c)),
        (objective_gamma3(F2, c, 1.0, p), ref.F_r1(c, p)),
        (objective_gamma3(F2, 2.0, r, p), 16.0),
        (objective_gamma3(F3, 0.0, r, p), ref.K_c0(r, p)),
        (objective_gamma3(F3, c, 0.0, p), ref.K_r0(c)),
        (objective_gamma3(F3, c, 1.0, p), ref.K_r1(c, p)),
        (objective_gamma3(F3, 2.0, r, p), 6.0),
    ]
    for got, want in checks:
        assert np.max(np.abs(got - want)) <= 1e-10


def test_literal_psi1_misses_face_values():
    assert ref.G_r1(1.30717927482, 0.050508967) == pytest.approx(11.2488, abs=5e-4)
    assert ref.G_r1(1.30717927482, 0.050508967, ref.psi1_literal) != pytest.approx(11.2488, abs=5e-4)


def test_quadratic_in_p(cuboid_sample):
    # phi is quadratic in x, hence |phi|^2 is a polynomial of degree 2 in p at fixed (c, r)
    c, r, _ = cuboid_sample
    ps = np.linspace(-1, 1, 7)
    for cid in ("F1", "F2", "F3"):
        for ci, ri in zip(c[:20], r[:20]):
            vals = phi_general(cid, ci, ri, ps) ** 2
            fit = np.polyfit(ps, vals, 2)
            assert np.allclose(np.polyval(fit, ps), vals, atol=1e-8 * (1 + np.max(vals)))


def test_objective_examples():
    from logcoef import closed_forms as cf

    c, r, p = (float(v) for v in cf.GAMMA3_ARGMAX["F3"])
    assert objective_gamma3(F3, c, r, p) == pytest.approx(float(cf.GAMMA3_OBJECTIVE_MAX["F3"]), abs=1e-10)
    assert phi_general(F1, 1.3, 0.0, 0.2) == pytest.approx(1.3**3 + 2 * 1.3 + 6)
    assert phi_general(F3, 1.3, 0.0, 0.2) == pytest.approx(abs(1.3**3 - 2 * 1.3 - 10))
    assert objective_gamma2(F1, 1 / 3, 1.0) == pytest.approx(8 / 3, abs=1e-14)
    assert objective_gamma2(F3, 0.2, -1.0) == pytest.approx(12 / 5, abs=1e-14)
    assert np.allclose(objective_gamma2(F1, 0.0, np.linspace(-1, 1, 5)), 21 / 8)
    assert objective_gamma2(F2, 1.0, 0.0) == 3.0
    assert objective_gamma1(F1, 2.0) == 0.75
    assert objective_gamma1(F2, 2.0) == 0.5
    assert objective_gamma1(F2, 0.0) == 0.0
    with pytest.raises(ValueError):
        objective_gamma1(F1, 2.5)


def test_gamma2_reduced_forms_match_general():
    d, q = np.meshgrid(np.linspace(0, 2, 41), np.linspace(-1, 1, 41))
    for cls in (F1, F3):
        assert np.allclose(objective_gamma2(cls, d, q), gamma2_majorant(cls, d, q), atol=1e-12)


def test_soundness_on_real_members():
    rng = np.random.default_rng(99)
    checked = 0
    while checked < 2000:
        for cls in (F1, F2, F3):
            f = build_ctc(cls, random_herglotz(rng, real=True), 5)
            c = herglotz_coefficients_mp(f.h, 3)
            c1 = float(c[0].real)
            if not 0 <= c1 < 2 - 1e-9:
                continue
            rec = lemma1_recover(*c)
            pt = cuboid_point_from_x(c1, rec.x)
            bound = objective_gamma3(cls, *pt)
            assert GAMMA3_SCALE[cls.id] * abs(gammas123(f)[2]) <= bound + 1e-9
            checked += 1
    assert math.isfinite(bound)
