from fractions import Fraction

import numpy as np
import pytest

from logcoef import closed_forms as cf
from logcoef.caratheodory import make_L
from logcoef.classes import F1, F2
from logcoef.extremal import EXTREMALS
from logcoef.series import identity, koebe, log_coefficients
from logcoef.verifier import bound_suite, roth_partial, sample_member, starlike_gamma_check


def test_roth_koebe():
    want = float(sum(Fraction(1, (n + 1) ** 2) for n in range(1, 51)))
    got = roth_partial(koebe(51), 50)
    assert got == pytest.approx(want, abs=1e-12)
    assert got <= float(cf.ROTH_BOUND) / 4


def test_roth_identity_and_order_check():
    assert roth_partial(identity(51), 50) == 0
    with pytest.raises(ValueError):
        roth_partial(koebe(10), 50)


def test_starlike_ratios():
    assert starlike_gamma_check("F1") == pytest.approx(0.5)
    # z/(1-z^2): gamma_n = 1/n for even n and 0 for odd n, so the ratio is exactly 1
    assert starlike_gamma_check("F2") == pytest.approx(1.0)
    g = log_coefficients(F2.generator_series(11)).gammas
    assert np.allclose(g[0::2], 0) and np.allclose(g[1::2], 1 / np.arange(2, 11, 2))
    assert starlike_gamma_check("F3") <= 1 + 1e-12


def test_sample_member_is_deterministic():
    a = sample_member(F1, 5, index=3)
    b = sample_member(F1, 5, index=3)
    assert np.array_equal(a.f.coeffs, b.f.coeffs)


def test_reports_are_thread_independent():
    a = bound_suite("F2", 300, seed=7, threads=1)
    b = bound_suite("F2", 300, seed=7, threads=4)
    assert a.to_dict() == b.to_dict()


def test_f2_gamma1_flag():
    rep = bound_suite("F2", 10, seed=1, inject=[make_L(1.0, 0.0)])
    assert rep.flagged["gamma1_stated"] == pytest.approx(2.0)
    assert rep.worst_ratio["gamma1"] == pytest.approx(1.0)
    assert rep.ok and rep.notes


@pytest.mark.parametrize("cid", ["F1", "F2", "F3"])
def test_injected_witnesses_are_sharp(cid):
    inject = [EXTREMALS[t](cid).spec.herglotz for t in ("gamma1", "gamma2", "gamma3")]
    rep = bound_suite(cid, 1, seed=0, inject=inject)
    assert rep.ok
    ratios = {row["index"]: row["ratios"] for row in rep.injected}
    for idx, target in zip((-1, -2, -3), ("gamma1", "gamma2", "gamma3")):
        assert ratios[idx][target] == pytest.approx(1.0, abs=1e-10)


def test_gamma3_window_counts():
    rep = bound_suite("F1", 200, seed=3)
    assert rep.gamma3_checked + rep.gamma3_skipped == 200
    assert rep.gamma3_checked > 0 and rep.gamma3_skipped > 0


def test_rejects_zero_trials():
    with pytest.raises(ValueError):
        bound_suite("F1", 0)
