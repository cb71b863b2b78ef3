"""Explicit functions attaining the sharp bounds on |gamma_1|, |gamma_2|, |gamma_3|.

Each witness is a finite Herglotz measure h, turned into a class member
through z f' = g h.  Radical parameters are evaluated at 50 digits and
rounded once.  Where a published witness does not attain its bound, the
published one is still built and reported next to a corrected witness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath

from . import closed_forms as cf
from .caratheodory import (
    AtomicHerglotz,
    HerglotzDomainError,
    lemma1_values,
    herglotz_coefficients_mp,
    make_H,
    make_L,
)
from .classes import ClassSpec, CtcFunction, build_ctc, gammas123, get_class, membership_min
from .objectives import phi_complex
from .series import DEFAULT_ORDER

TRIPLE_TOL = 1e-10
UNIT_TOL = 1e-12


class ConstructionError(ValueError):
    """A witness parameter falls outside its admissible range."""


@dataclass(frozen=True)
class ExtremalSpec:
    class_id: str
    target: str
    herglotz: AtomicHerglotz
    claimed_value: float
    description: str


@dataclass
class ExtremalResult:
    spec: ExtremalSpec
    function: CtcFunction
    gamma: complex
    membership: float
    discrepancies: list[str] = field(default_factory=list)
    published: "ExtremalResult | None" = None

    @property
    def achieved(self) -> float:
        return abs(self.gamma)

    @property
    def ratio(self) -> float:
        return self.achieved / self.spec.claimed_value

    def to_dict(self) -> dict:
        out = {
            "class": self.spec.class_id,
            "target": self.spec.target,
            "witness": self.spec.description,
            "atoms": [[w, [m.real, m.imag]] for w, m in self.spec.herglotz.atoms],
            "gamma": [self.gamma.real, self.gamma.imag],
            "achieved": self.achieved,
            "claimed": self.spec.claimed_value,
            "ratio": self.ratio,
            "membership_min": self.membership,
            "discrepancies": list(self.discrepancies),
        }
        if self.published is not None:
            out["published_witness"] = self.published.to_dict()
        return out


def _finish(spec: ExtremalSpec, order: int, which: int) -> ExtremalResult:
    f = build_ctc(spec.class_id, spec.herglotz, order)
    gamma = gammas123(f)[which - 1]
    return ExtremalResult(spec, f, complex(gamma), membership_min(f))


def _check_unimodular(mu) -> None:
    with mpmath.workdps(cf.DPS):
        err = abs(abs(mu) ** 2 - 1)
    if err > UNIT_TOL:
        raise ConstructionError(f"|mu|^2 - 1 = {mpmath.nstr(err, 5)}")


def _h_family(t, mu, base: int = 1) -> AtomicHerglotz:
    _check_unimodular(mu)
    if not 0 <= t <= mpmath.mpf(1) / 2:
        raise ConstructionError(f"t = {mpmath.nstr(t, 10)} outside [0, 1/2]")
    try:
        return make_H(float(t), complex(mu), base=base)
    except HerglotzDomainError as exc:
        raise ConstructionError(str(exc)) from exc


def target_triple(cls: ClassSpec | str):
    """(c1, c2, c3) that turn the gamma_3 majorant into an equality at its maximiser.

    x = r p is real there; |t| = 1 with the sign of phi lines the two terms up.
    """
    cls = get_class(cls)
    with mpmath.workdps(cf.DPS):
        c, r, p = cf.GAMMA3_ARGMAX[cls.id]
        x = r * p
        t = 1 if float(phi_complex(cls, float(c), float(r), float(p)).real) >= 0 else -1
        c2, c3 = lemma1_values(c, x, mpmath.mpf(t))
        return (c, c2, c3), t


def _triple_gap(h: AtomicHerglotz, triple) -> float:
    got = herglotz_coefficients_mp(h, 3)
    return max(float(abs(a - b)) for a, b in zip(got, triple))


def gamma3_extremal(cls: ClassSpec | str, order: int = DEFAULT_ORDER) -> ExtremalResult:
    """Witness for the |gamma_3| bound (real c1 in [0, 2])."""
    cls = get_class(cls)
    claimed = float(cf.GAMMA3_BOUND[cls.id])
    triple, t_sign = target_triple(cls)
    t, mu = cf.H_PARAMS[cls.id]
    h_pub = _h_family(t, mu)
    pub = _finish(ExtremalSpec(cls.id, "gamma3", h_pub, claimed, "H(t, mu) with published parameters"), order, 3)
    printed_gap = _triple_gap(h_pub, cf.H_TRIPLES[cls.id])
    if printed_gap > TRIPLE_TOL:
        raise ConstructionError(f"published H(t, mu) misses its printed (c1, c2, c3) by {printed_gap:.3g}")
    if _triple_gap(h_pub, triple) <= TRIPLE_TOL:
        return pub

    # the published function realises t = +1; the maximiser needs t = -1
    pub.discrepancies.append(
        f"published witness gives |gamma_3| = {pub.achieved:.10f} (ratio {pub.ratio:.6f}); "
        f"the maximiser needs t = {t_sign:+d} in the c3 parametrisation"
    )
    if cls.id != "F3":
        raise ConstructionError(f"no corrected witness known for {cls.id}")
    h = _h_family(cf.F3_MINUS_WEIGHT, cf.F3_MINUS_MU, base=-1)
    gap = _triple_gap(h, triple)
    if gap > TRIPLE_TOL:
        raise ConstructionError(f"corrected witness misses the target triple by {gap:.3g}")
    res = _finish(ExtremalSpec(cls.id, "gamma3", h, claimed, "H(t, mu) with base atom at -1"), order, 3)
    res.published = pub
    res.discrepancies.extend(pub.discrepancies)
    return res


def gamma2_extremal(cls: ClassSpec | str, order: int = DEFAULT_ORDER) -> ExtremalResult:
    cls = get_class(cls)
    claimed = float(cf.GAMMA2_BOUND[cls.id])
    if cls.id == "F1":
        return _finish(ExtremalSpec("F1", "gamma2", make_L(1 / 6, 0.0), claimed, "L(1/6, 0)"), order, 2)
    if cls.id == "F2":
        return _finish(ExtremalSpec("F2", "gamma2", make_L(0.0, 0.0), claimed, "L(0, 0)"), order, 2)
    pub = _finish(ExtremalSpec("F3", "gamma2", make_L(0.1, math.pi), claimed, "L(1/10, pi)"), order, 2)
    pub.discrepancies.append(
        f"L(1/10, pi) has c2 = +2 and gives |gamma_2| = {pub.achieved:.10f}; "
        "equality needs c1 = -1/5 with c2 = c1^2 - 2"
    )
    with mpmath.workdps(cf.DPS):
        re_mu = cf.F3_GAMMA2_RE_MU
        mu = mpmath.mpc(re_mu, mpmath.sqrt(1 - re_mu**2))
    h = _h_family(mpmath.mpf(1) / 2, mu)
    res = _finish(ExtremalSpec("F3", "gamma2", h, claimed, "conjugate pair, Re mu = -1/10"), order, 2)
    res.published = pub
    res.discrepancies.extend(pub.discrepancies)
    return res


def gamma1_extremal(cls: ClassSpec | str, order: int = DEFAULT_ORDER) -> ExtremalResult:
    cls = get_class(cls)
    claimed = float(cf.GAMMA1_BOUND[cls.id])
    res = _finish(ExtremalSpec(cls.id, "gamma1", make_L(1.0, 0.0), claimed, "L(1, 0)"), order, 1)
    printed = float(cf.GAMMA1_BOUND_PRINTED[cls.id])
    if printed != claimed:
        res.discrepancies.append(
            f"stated bound {printed:g} is exceeded: |gamma_1| = {res.achieved:g}, ratio {res.achieved / printed:g}"
        )
    return res


EXTREMALS = {"gamma1": gamma1_extremal, "gamma2": gamma2_extremal, "gamma3": gamma3_extremal}


def all_extremals(classes=("F1", "F2", "F3"), order: int = DEFAULT_ORDER) -> list[ExtremalResult]:
    return [EXTREMALS[t](c, order) for c in classes for t in ("gamma1", "gamma2", "gamma3")]
