"""Deterministic maximisation over boxes, and real-root isolation.

The majorants are smooth with maxima on the boundary, so a dense lattice
that includes every boundary hyperplane, followed by a local polish inside
each boundary stratum, is enough.  No randomness anywhere: a fixed
resolution gives bit-identical results for any thread count.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import closed_forms as cf
from .classes import ClassSpec, get_class
from .objectives import (
    CUBOID,
    SQUARE,
    CuboidPoint,
    Gamma2Point,
    objective_gamma1,
    objective_gamma2,
    objective_gamma3,
    objective_scale,
)

DEFAULT_RESOLUTION = 201
DEFAULT_TOL = 1e-10
ROOT_TOL = 1e-9
GOLDEN = (math.sqrt(5) - 1) / 2
_CHUNK_POINTS = 1 << 21

Bounds = Sequence[tuple[float, float]]


class NumericalError(ArithmeticError):
    """The objective returned a non-finite value."""


# -- polynomials -----------------------------------------------------------------


@dataclass(frozen=True)
class RealPolynomial:
    """Real polynomial, coefficients in ascending degree."""

    coefficients: tuple[float, ...]

    def __init__(self, coefficients: Sequence[float]):
        coeffs = [float(c) for c in coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0.0:
            coeffs.pop()
        if not coeffs:
            coeffs = [0.0]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for a in reversed(self.coefficients):
            out = out * x + a
        return out if out.ndim else float(out)

    def __mul__(self, other: "RealPolynomial") -> "RealPolynomial":
        return RealPolynomial(np.convolve(self.coefficients, other.coefficients))

    def derivative(self) -> "RealPolynomial":
        if self.degree == 0:
            return RealPolynomial([0.0])
        return RealPolynomial([k * a for k, a in enumerate(self.coefficients) if k])

    def magnitude(self, x: float) -> float:
        """sum |a_k| |x|^k, the scale against which p(x) counts as zero."""
        ax = abs(x)
        return float(sum(abs(a) * ax**k for k, a in enumerate(self.coefficients)))


NAMED_POLYNOMIALS = {
    # stationarity on the face r = 1 of the F1 objective
    "zeta1": RealPolynomial([36, -60, -1095, -629, 623, 257, -49, 86, 20, -5, 6]),
    # same for F3
    "zeta2": RealPolynomial([100, 140, -1135, -375, 459, 375, 147, -104, -32, -5, 6]),
    # same for F2
    "octic_f2": RealPolynomial([2048, 0, -512, 0, -160, 0, 0, 0, 3]),
}
# cubic cofactors that multiply zeta1 / zeta2 in the stationarity numerators
_COFACTORS = {
    "F1": RealPolynomial([-3, -7, 0, 1]),
    "F3": RealPolynomial([5, -5, 0, 1]),
}


def _bisect(poly: RealPolynomial, a: float, b: float, fa: float, tol: float) -> float:
    while b - a > tol:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = poly(m)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def real_roots_in_interval(
    poly: RealPolynomial, lo: float, hi: float, tol: float = ROOT_TOL, density: int | None = None
) -> list[float]:
    """All real roots in the open interval (lo, hi).

    Sign changes are bracketed on a uniform partition with ``density``
    points per unit length (default 10 * degree) refined by the critical
    points of ``poly``, which are found recursively.  Between consecutive
    critical points the polynomial is monotone, so no odd root is missed;
    a critical point where the polynomial vanishes to rounding is reported
    as an even-multiplicity root.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    if poly.degree <= 0:
        return []
    density = density or 10 * poly.degree
    n = max(poly.degree + 1, int(math.ceil((hi - lo) * density)))
    crit = real_roots_in_interval(poly.derivative(), lo, hi, tol * 1e-3, density) if poly.degree > 1 else []
    knots = np.unique(np.concatenate([np.linspace(lo, hi, n + 1), crit]))
    vals = poly(knots)

    roots: list[float] = []
    for k in range(len(knots) - 1):
        a, b = float(knots[k]), float(knots[k + 1])
        fa, fb = float(vals[k]), float(vals[k + 1])
        if fa == 0.0:
            if lo < a < hi:
                roots.append(a)
            continue
        if fa * fb < 0:
            roots.append(_bisect(poly, a, b, fa, tol))
    for x in crit:
        if abs(poly(x)) <= 1e-12 * poly.magnitude(x):
            roots.append(float(x))

    roots.sort()
    out: list[float] = []
    for r in roots:
        if lo < r < hi and (not out or r - out[-1] > tol):
            out.append(r)
    return out


# -- lattice search --------------------------------------------------------------


def lattice_axes(bounds: Bounds, resolution: int) -> list[np.ndarray]:
    if resolution < 2:
        raise ValueError("resolution must be at least 2 per axis")
    return [np.linspace(lo, hi, resolution) for lo, hi in bounds]


def lattice_values(
    objective: Callable[..., np.ndarray], bounds: Bounds, resolution: int, threads: int = 1
) -> tuple[list[np.ndarray], np.ndarray]:
    """Objective on the full tensor lattice, boundary hyperplanes included.

    ``objective`` must broadcast over one array per axis.  Evaluation is
    chunked along the first axis; non-finite values become -inf.
    """
    axes = lattice_axes(bounds, resolution)
    dim = len(axes)
    shape = tuple(a.size for a in axes)
    out = np.empty(shape)
    rest = int(np.prod(shape[1:])) if dim > 1 else 1
    step = max(1, _CHUNK_POINTS // rest)
    tails = [axes[k].reshape((1,) * k + (-1,) + (1,) * (dim - k - 1)) for k in range(1, dim)]

    def work(i0: int) -> None:
        i1 = min(i0 + step, shape[0])
        head = axes[0][i0:i1].reshape((-1,) + (1,) * (dim - 1))
        v = np.broadcast_to(np.asarray(objective(head, *tails), dtype=float), (i1 - i0,) + shape[1:])
        out[i0:i1] = np.where(np.isfinite(v), v, -np.inf)

    starts = range(0, shape[0], step)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            list(pool.map(work, starts))
    else:
        for i0 in starts:
            work(i0)
    return axes, out


def grid_maximize(
    objective: Callable[..., np.ndarray], bounds: Bounds, resolution: int = DEFAULT_RESOLUTION, threads: int = 1
) -> tuple[float, tuple[float, ...]]:
    """Max over the uniform lattice; ties go to the first point in C order."""
    axes, vals = lattice_values(objective, bounds, resolution, threads)
    idx = np.unravel_index(int(np.argmax(vals)), vals.shape)
    return float(vals[idx]), tuple(float(a[i]) for a, i in zip(axes, idx))


def _golden_max(fun: Callable[[float], float], a: float, b: float, tol: float) -> tuple[float, float]:
    """Golden-section search for a max of ``fun`` on [a, b]; endpoints are candidates too."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = fun(d)
    best = max(((fc, c), (fd, d), (fun(a), a), (fun(b), b)))
    return best[1], best[0]


def refine_local(
    objective: Callable[..., float],
    start: Sequence[float],
    bounds: Bounds,
    tol: float = DEFAULT_TOL,
    free: Sequence[int] | None = None,
    step: float | None = None,
    max_sweeps: int = 500,
) -> tuple[float, tuple[float, ...]]:
    """Coordinate ascent with golden-section line searches, projected onto the box.

    Each sweep maximises along every free axis inside an adaptive window
    around the current point, then tries a pattern move along the sweep's
    net displacement.  A move is taken only if it raises the objective, so
    the returned value is never below ``objective(start)``.  Stops when a
    sweep moves every axis by less than ``tol``.
    """
    x = [float(min(max(v, lo), hi)) for v, (lo, hi) in zip(start, bounds)]
    free = list(range(len(x))) if free is None else list(free)

    def f(pt: Sequence[float]) -> float:
        v = float(objective(*pt))
        if not math.isfinite(v):
            raise NumericalError(f"objective is {v} at {tuple(pt)}")
        return v

    fx = f(x)
    if not free:
        return fx, tuple(x)
    width = {k: step or 0.02 * (bounds[k][1] - bounds[k][0]) for k in free}
    line_tol = max(tol, 1e-14)

    for _ in range(max_sweeps):
        x0 = list(x)
        for k in free:
            lo, hi = bounds[k]
            a, b = max(lo, x[k] - width[k]), min(hi, x[k] + width[k])

            def along(s: float, k: int = k) -> float:
                y = list(x)
                y[k] = s
                return f(y)

            s, fs = _golden_max(along, a, b, line_tol)
            move = abs(s - x[k])
            if fs > fx:
                x[k], fx = s, fs
            at_window_edge = (s <= a + line_tol and a > lo) or (s >= b - line_tol and b < hi)
            width[k] = min(hi - lo, 2 * width[k]) if at_window_edge else max(4 * move, 16 * tol)
        disp = [x[k] - x0[k] for k in free]
        if max(abs(v) for v in disp) < tol:
            break
        # pattern move along the net displacement of the sweep
        smax = min(
            ((bounds[k][1] - x[k]) / dk if dk > 0 else (bounds[k][0] - x[k]) / dk)
            for k, dk in zip(free, disp)
            if dk != 0
        )
        smax = min(smax, 8.0)
        if smax > line_tol:

            def ray(s: float) -> float:
                y = list(x)
                for k, dk in zip(free, disp):
                    y[k] = min(max(x[k] + s * dk, bounds[k][0]), bounds[k][1])
                return f(y)

            s, fs = _golden_max(ray, 0.0, smax, line_tol)
            if fs > fx:
                for k, dk in zip(free, disp):
                    x[k] = min(max(x[k] + s * dk, bounds[k][0]), bounds[k][1])
                fx = fs
    return fx, tuple(x)


# -- strata ----------------------------------------------------------------------

_KIND = {3: ("interior", "face", "edge", "vertex"), 2: ("interior", "edge", "vertex"), 1: ("interior", "vertex")}


def _fmt(v: float) -> str:
    return f"{v:g}"


def stratum_name(status: Sequence[int | None], bounds: Bounds, names: Sequence[str]) -> str:
    """``status[k]`` is 0 (at lower bound), 1 (upper) or None (free)."""
    fixed = [(names[k], bounds[k][s]) for k, s in enumerate(status) if s is not None]
    kind = _KIND[len(bounds)][len(fixed)]
    if not fixed:
        return kind
    return f"{kind}:" + ",".join(f"{n}={_fmt(v)}" for n, v in fixed)


def classify_point(point: Sequence[float], bounds: Bounds, names: Sequence[str], atol: float = 1e-9) -> str:
    status: list[int | None] = []
    for v, (lo, hi) in zip(point, bounds):
        status.append(0 if abs(v - lo) <= atol else 1 if abs(v - hi) <= atol else None)
    return stratum_name(status, bounds, names)


def codimension(stratum: str) -> int:
    if stratum == "interior":
        return 0
    return stratum.split(":", 1)[1].count("=") if ":" in stratum else 0


@dataclass
class StratumResult:
    stratum: str
    lattice_value: float
    value: float
    point: tuple[float, ...]


def search_strata(
    objective: Callable[..., np.ndarray],
    bounds: Bounds,
    names: Sequence[str],
    resolution: int = DEFAULT_RESOLUTION,
    tol: float = DEFAULT_TOL,
    threads: int = 1,
    tie_tol: float = 1e-12,
) -> tuple[StratumResult, list[StratumResult]]:
    """Lattice max and local polish in each of the 3**dim boundary strata.

    Returns the winning stratum (ties broken toward higher codimension) and
    the per-stratum table.  The winner's label is re-derived from where its
    polished point actually landed.
    """
    axes, vals = lattice_values(objective, bounds, resolution, threads)
    dim = len(bounds)
    spacing = [(hi - lo) / (resolution - 1) for lo, hi in bounds]
    table: list[StratumResult] = []
    for status in itertools.product((0, 1, None), repeat=dim):
        sl = tuple(slice(1, -1) if s is None else (0 if s == 0 else -1) for s in status)
        sub = vals[sl]
        if sub.size == 0:
            continue
        j = np.unravel_index(int(np.argmax(sub)), sub.shape) if sub.ndim else ()
        free = [k for k, s in enumerate(status) if s is None]
        pt = []
        it = iter(j)
        for k, s in enumerate(status):
            pt.append(float(axes[k][next(it) + 1]) if s is None else bounds[k][s])
        lattice_v = float(sub[j]) if sub.ndim else float(sub)
        v, p = refine_local(objective, pt, bounds, tol, free=free, step=2 * max(spacing))
        table.append(StratumResult(stratum_name(status, bounds, names), lattice_v, v, p))

    top = max(r.value for r in table)
    tied = [r for r in table if r.value >= top - tie_tol * (1 + abs(top))]
    best = max(tied, key=lambda r: (codimension(r.stratum), r.value))
    best = StratumResult(classify_point(best.point, bounds, names), best.lattice_value, best.value, best.point)
    return best, table


# -- claimed maxima --------------------------------------------------------------


@dataclass
class SearchReport:
    class_id: str
    target: str
    max_value: float
    argmax: tuple[float, ...]
    stratum: str
    closed_form: float
    abs_gap: float
    scale: float
    resolution: int
    strata: list[StratumResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def bound(self) -> float:
        """max_value on the |gamma| scale."""
        return self.max_value / self.scale

    def to_dict(self) -> dict:
        return {
            "class": self.class_id,
            "target": self.target,
            "max_value": self.max_value,
            "argmax": list(self.argmax),
            "stratum": self.stratum,
            "closed_form": self.closed_form,
            "abs_gap": self.abs_gap,
            "scale": self.scale,
            "gamma_bound": self.bound,
            "resolution": self.resolution,
            "strata": [
                {"stratum": s.stratum, "lattice_value": s.lattice_value, "value": s.value, "point": list(s.point)}
                for s in self.strata
            ],
            "notes": list(self.notes),
        }


TARGETS = ("gamma1", "gamma2", "gamma3")


def _problem(cls: ClassSpec, target: str):
    if target == "gamma3":
        return (lambda c, r, p: objective_gamma3(cls, c, r, p)), CUBOID, ("c", "r", "p")
    if target == "gamma2":
        return (lambda d, q: objective_gamma2(cls, d, q)), SQUARE, ("d", "q")
    if target == "gamma1":
        return (lambda d: objective_gamma1(cls, np.clip(d, 0.0, 2.0))), ((0.0, 2.0),), ("d",)
    raise ValueError(f"unknown target {target!r}; expected one of {TARGETS}")


def claimed_max(cls: ClassSpec | str, target: str) -> float:
    """The closed-form maximum at the objective's own scale."""
    cls = get_class(cls)
    if target == "gamma3":
        return float(cf.GAMMA3_OBJECTIVE_MAX[cls.id])
    if target == "gamma2":
        return float(objective_scale(cls, target) * cf.GAMMA2_BOUND[cls.id])
    if target == "gamma1":
        return float(cf.GAMMA1_BOUND[cls.id])
    raise ValueError(f"unknown target {target!r}")


def verify_claimed_max(
    cls: ClassSpec | str,
    target: str = "gamma3",
    resolution: int = DEFAULT_RESOLUTION,
    tol: float = DEFAULT_TOL,
    threads: int = 1,
) -> SearchReport:
    cls = get_class(cls)
    objective, bounds, names = _problem(cls, target)
    best, table = search_strata(objective, bounds, names, resolution, tol, threads)
    closed = claimed_max(cls, target)
    report = SearchReport(
        class_id=cls.id,
        target=target,
        max_value=best.value,
        argmax=best.point,
        stratum=best.stratum,
        closed_form=closed,
        abs_gap=abs(best.value - closed),
        scale=objective_scale(cls, target),
        resolution=resolution,
        strata=table,
    )
    report.notes.extend(_notes(cls, target, tol))
    return report


def _notes(cls: ClassSpec, target: str, tol: float) -> list[str]:
    notes = []
    if target == "gamma1" and cls.id == "F2":
        notes.append(
            f"stated |gamma_1| bound {float(cf.GAMMA1_BOUND_PRINTED['F2']):g} is exceeded; "
            f"the coefficient argument gives {float(cf.GAMMA1_BOUND['F2']):g}, attained at |c1| = 2"
        )
    if target == "gamma3" and cls.id == "F2":
        edge = lambda c: objective_gamma3(cls, c, 1.0, -1.0)  # noqa: E731
        interior_v, interior_c = refine_local(edge, [0.9], [(0.0, 1.5)], tol)
        notes.append(
            f"edge r=1,p=-1: maximum {edge(2.0):.6g} at c=2; interior local maximum "
            f"{interior_v:.6g} at c={interior_c[0]:.6g} (both values appear for this edge)"
        )
    if target == "gamma3" and cls.id == "F1":
        c = float(cf.GAMMA3_ARGMAX["F1"][0])
        notes.append(f"face p=1 critical point has c=(6-sqrt(30))/2={c:.9f}, not (60-sqrt(30))/2")
    return notes


# -- stationarity on the face r = 1 ----------------------------------------------


def face_r1_p(cls: ClassSpec | str, c):
    """p solving d/dp objective(c, 1, p) = 0."""
    cls = get_class(cls)
    if cls.id == "F1":
        return (2 * c**4 + 2 * c**3 - 5 * c**2 - 2 * c + 3) / (3 * c * (c**3 + 2 * c + 6))
    if cls.id == "F2":
        return 2 * (c**2 - 2) / (3 * (c**2 + 4))
    return (2 * c**4 + 2 * c**3 - 7 * c**2 - 12 * c - 5) / (3 * c * (c**3 - 2 * c - 10))


def stationarity_polynomial(cls: ClassSpec | str) -> RealPolynomial:
    """Numerator of d/dc objective(c, 1, p(c)) after eliminating p."""
    cls = get_class(cls)
    if cls.id == "F1":
        return _COFACTORS["F1"] * NAMED_POLYNOMIALS["zeta1"]
    if cls.id == "F2":
        return NAMED_POLYNOMIALS["octic_f2"]
    return _COFACTORS["F3"] * NAMED_POLYNOMIALS["zeta2"]


@dataclass(frozen=True)
class StationaryCandidate:
    point: CuboidPoint
    value: float
    feasible: bool


def stationarity_candidates(cls: ClassSpec | str, tol: float = ROOT_TOL) -> list[StationaryCandidate]:
    """Critical points (c, 1, p(c)) of the face r = 1, with c in (0, 2).

    Candidates whose p falls outside [-1, 1] are kept but marked infeasible
    and carry a NaN value.
    """
    cls = get_class(cls)
    out = []
    for c in real_roots_in_interval(stationarity_polynomial(cls), 0.0, 2.0, tol):
        p = float(face_r1_p(cls, c))
        ok = -1.0 <= p <= 1.0
        v = float(objective_gamma3(cls, c, 1.0, p)) if ok else float("nan")
        out.append(StationaryCandidate(CuboidPoint(c, 1.0, p), v, ok))
    return out


def interior_r_squared(cls: ClassSpec | str, c):
    """r^2 forced by an interior critical point, as a function of c."""
    cls = get_class(cls)
    if cls.id == "F1":
        return (c**3 + 2 * c + 6) / (3 * (c**3 - 4 * c))
    if cls.id == "F2":
        return (c**2 + 4) / (3 * (c**2 - 4))
    return (c**3 - 2 * c - 10) / (3 * c**3 - 12 * c)


def gamma2_point(pt: Sequence[float]) -> Gamma2Point:
    return Gamma2Point(*pt)
