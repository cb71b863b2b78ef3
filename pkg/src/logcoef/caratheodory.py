"""Caratheodory-class functions as finite Herglotz measures.

A function with positive real part and h(0) = 1 is an average of the
kernels (1 + mu z)/(1 - mu z) over |mu| = 1.  Keeping only finitely many
atoms makes membership automatic and random sampling trivial, and it is
enough to realise every extremal function we care about.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

import mpmath
import numpy as np

from .series import TruncatedSeries

WEIGHT_TOL = 1e-12
UNIT_TOL = 1e-12
# 1 - |x| below this means t drops out of the c3 formula
X_BOUNDARY_TOL = 1e-9
DEGENERATE_TOL = 1e-9
RECOVER_DPS = 50


class HerglotzDomainError(ValueError):
    """Weights or atom positions outside the admissible range."""


class DegenerateCoefficientError(ValueError):
    """|c1| = 2: the (x, t) parametrisation of c2, c3 collapses."""


@dataclass(frozen=True, eq=False)
class AtomicHerglotz:
    """h(z) = sum_k w_k (1 + mu_k z)/(1 - mu_k z) with w_k >= 0, sum w_k = 1, |mu_k| = 1."""

    weights: np.ndarray
    points: np.ndarray

    def __init__(self, atoms: Iterable[tuple[float, complex]] = (), *, weights=None, points=None):
        if weights is None:
            atoms = list(atoms)
            weights = [w for w, _ in atoms]
            points = [m for _, m in atoms]
        w = np.asarray(weights, dtype=float).ravel()
        mu = np.asarray(points, dtype=complex).ravel()
        if w.size == 0 or w.size != mu.size:
            raise HerglotzDomainError("need matching, nonempty weights and points")
        if np.any(w < -WEIGHT_TOL):
            raise HerglotzDomainError(f"negative weight in {w}")
        if abs(w.sum() - 1) > WEIGHT_TOL:
            raise HerglotzDomainError(f"weights sum to {w.sum()!r}, not 1")
        if np.any(np.abs(np.abs(mu) - 1) > UNIT_TOL):
            raise HerglotzDomainError("atom off the unit circle")
        w = np.clip(w, 0.0, None)
        w.setflags(write=False)
        mu.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "points", mu)

    @property
    def atoms(self) -> list[tuple[float, complex]]:
        return [(float(w), complex(m)) for w, m in zip(self.weights, self.points)]

    def __repr__(self) -> str:
        return f"AtomicHerglotz({self.atoms!r})"

    def __call__(self, z):
        """Direct kernel sum; valid for |z| < 1."""
        z = np.asarray(z, dtype=complex)
        mz = self.points.reshape((-1,) + (1,) * z.ndim) * z
        out = np.tensordot(self.weights, (1 + mz) / (1 - mz), axes=1)
        return out if out.ndim else complex(out)

    def series(self, order: int) -> TruncatedSeries:
        return TruncatedSeries(np.concatenate([[1.0], herglotz_coefficients(self, order)]))

    @property
    def is_real(self) -> bool:
        """True when all c_n are real (the measure is conjugation-symmetric)."""
        c = herglotz_coefficients(self, 8)
        return bool(np.all(np.abs(c.imag) <= 1e-12))


def herglotz_coefficients(h: AtomicHerglotz, n_max: int) -> np.ndarray:
    """c_1..c_{n_max}, c_n = 2 sum_k w_k mu_k^n."""
    n = np.arange(1, n_max + 1)
    return 2 * (h.points[None, :] ** n[:, None]) @ h.weights


def herglotz_coefficients_mp(h: AtomicHerglotz, n_max: int, dps: int = RECOVER_DPS) -> list:
    """Same as :func:`herglotz_coefficients`, evaluated exactly-from-the-atoms in mpmath.

    The float atoms are taken as exact binary numbers, then the weights are
    rescaled to total mass 1 and the points projected onto the circle at
    ``dps`` digits.  Without that, the 1e-16 slack in the float measure is
    amplified by 1/(1 - |x|^2) in :func:`lemma1_recover`.
    """
    with mpmath.workdps(dps):
        ws = [mpmath.mpf(float(w)) for w in h.weights]
        total = mpmath.fsum(ws)
        ws = [w / total for w in ws]
        ms = [mpmath.mpc(m.real, m.imag) for m in h.points]
        ms = [m / abs(m) for m in ms]
        return [2 * mpmath.fsum(w * m**n for w, m in zip(ws, ms)) for n in range(1, n_max + 1)]


def make_L(t: float, theta: float) -> AtomicHerglotz:
    """t (1+e^{i th} z)/(1-e^{i th} z) + (1-t) (1+e^{2i th} z^2)/(1-e^{2i th} z^2)."""
    if not 0.0 <= t <= 1.0:
        raise HerglotzDomainError(f"t = {t} outside [0, 1]")
    e = cmath.exp(1j * theta)
    if t == 1.0:
        return AtomicHerglotz([(1.0, e)])
    return AtomicHerglotz([(t + (1 - t) / 2, e), ((1 - t) / 2, -e)])


def make_H(t: float, mu: complex, base: complex = 1.0) -> AtomicHerglotz:
    """(1-2t) K_base + t K_mu + t K_conj(mu), K_m the Moebius kernel at m.

    ``base = 1`` is the usual three-atom family; ``base = -1`` mirrors it
    and is needed when the extremal sits at t = -1 of the c3 parametrisation.
    """
    if not 0.0 <= t <= 0.5:
        raise HerglotzDomainError(f"t = {t} outside [0, 1/2]")
    if abs(abs(mu) - 1) > 1e-9:
        raise HerglotzDomainError(f"|mu| = {abs(mu)} is not 1")
    if base not in (1, -1):
        raise HerglotzDomainError("base atom must be at +1 or -1")
    mu = complex(mu) / abs(mu)
    atoms = [(1 - 2 * t, complex(base)), (t, mu), (t, mu.conjugate())]
    return AtomicHerglotz([a for a in atoms if a[0] > 0])


def random_herglotz(rng: np.random.Generator, real: bool = False, max_atoms: int = 5) -> AtomicHerglotz:
    """1..max_atoms atoms, flat-simplex weights, uniform points.

    In ``real`` mode each atom is split evenly with its conjugate, so every
    c_n is real.
    """
    k = int(rng.integers(1, max_atoms + 1))
    w = rng.dirichlet(np.ones(k))
    mu = np.exp(2j * np.pi * rng.random(k))
    if real:
        w = np.concatenate([w, w]) / 2
        mu = np.concatenate([mu, mu.conj()])
    # renormalise against rounding in the simplex draw
    return AtomicHerglotz(weights=w / w.sum(), points=mu / np.abs(mu))


# -- (x, t) parametrisation of c2, c3 --------------------------------------------


@dataclass(frozen=True)
class Lemma1Params:
    c1: complex
    x: complex
    t: complex

    def __post_init__(self):
        if abs(self.c1) > 2 + 1e-12 or abs(self.x) > 1 + 1e-12 or abs(self.t) > 1 + 1e-12:
            raise HerglotzDomainError(f"infeasible parameters {self}")


@dataclass(frozen=True)
class Lemma1Recovery:
    x: complex
    t: complex
    feasible: bool
    t_unconstrained: bool = False


def _conj(z):
    return z.conjugate() if hasattr(z, "conjugate") else mpmath.conj(z)


def lemma1_forward(params: Lemma1Params) -> tuple[complex, complex]:
    """(c2, c3) from (c1, x, t).

    2 c2 = c1^2 + x (4 - |c1|^2)
    4 c3 = c1^3 + 2 (4 - |c1|^2) c1 x - conj(c1) (4 - |c1|^2) x^2 + 2 (4 - |c1|^2)(1 - |x|^2) t

    For real c1 this is the classical form; the |c1| and conj(c1) make it
    rotation-covariant so that complex c1 is handled too.
    """
    return lemma1_values(params.c1, params.x, params.t)


def lemma1_values(c1, x, t):
    """:func:`lemma1_forward` on bare numbers (float, complex or mpmath), unchecked."""
    d2 = abs(c1) ** 2
    k = 4 - d2
    c2 = (c1 * c1 + x * k) / 2
    c3 = (c1**3 + 2 * k * c1 * x - _conj(c1) * k * x * x + 2 * k * (1 - abs(x) ** 2) * t) / 4
    return c2, c3


def lemma1_recover(c1, c2, c3, dps: int = RECOVER_DPS) -> Lemma1Recovery:
    """Invert :func:`lemma1_forward`.

    Runs at ``dps`` digits: near |x| = 1 the t-equation divides by
    1 - |x|^2 and double precision loses up to nine digits there.  Pass
    mpmath numbers (see :func:`herglotz_coefficients_mp`) to keep that
    precision end to end.
    """
    with mpmath.workdps(dps):
        c1, c2, c3 = (mpmath.mpmathify(v) for v in (c1, c2, c3))
        if abs(c1) >= 2 - DEGENERATE_TOL:
            raise DegenerateCoefficientError(f"|c1| = {float(abs(c1))} is at the boundary value 2")
        k = 4 - abs(c1) ** 2
        x = (2 * c2 - c1 * c1) / k
        ax = abs(x)
        if 1 - ax < X_BOUNDARY_TOL:
            return Lemma1Recovery(complex(x), 0j, bool(ax <= 1 + X_BOUNDARY_TOL), t_unconstrained=True)
        num = 4 * c3 - c1**3 - 2 * k * c1 * x + mpmath.conj(c1) * k * x * x
        t = num / (2 * k * (1 - ax * ax))
        feasible = bool(ax <= 1 + X_BOUNDARY_TOL and abs(t) <= 1 + X_BOUNDARY_TOL)
        return Lemma1Recovery(complex(x), complex(t), feasible)


# -- classical coefficient inequalities ------------------------------------------


def lemma2_gap(h: AtomicHerglotz) -> tuple[float, float]:
    """(|c2 - c1^2/2|, 2 - |c1|^2/2); the first never exceeds the second."""
    c1, c2 = herglotz_coefficients(h, 2)
    return abs(c2 - c1 * c1 / 2), 2 - abs(c1) ** 2 / 2


def fekete_szego_P(h: AtomicHerglotz, mu: complex) -> tuple[float, float]:
    """(|c2 - mu c1^2|, 2 max(1, |2 mu - 1|))."""
    c1, c2 = herglotz_coefficients(h, 2)
    return abs(c2 - mu * c1 * c1), 2 * max(1.0, abs(2 * mu - 1))


def min_real_part(h: AtomicHerglotz, radial_steps: int = 64, angular_steps: int = 64, r_max: float = 0.999) -> float:
    """min Re h on a polar grid of the disk (radii r_max*k/n, k = 1..n)."""
    z = polar_grid(radial_steps, angular_steps, r_max)
    return float(np.min(np.real(h(z))))


def polar_grid(radial_steps: int, angular_steps: int, r_max: float = 0.999) -> np.ndarray:
    radii = r_max * np.arange(1, radial_steps + 1) / radial_steps
    angles = 2 * math.pi * np.arange(angular_steps) / angular_steps
    return radii[:, None] * np.exp(1j * angles)[None, :]

