"""Truncated power series over the complex numbers.

Only what is needed to get logarithmic coefficients out of Taylor data:
products, quotients, log and exp of unit-constant series.  Everything is
O(N^2) forward substitution; orders stay in the tens.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

DEFAULT_ORDER = 16
UNIT_TOL = 1e-12


class SeriesDomainError(ValueError):
    """Input violates the normalization an operation needs."""


class NotInvertibleError(ZeroDivisionError):
    """Division by a series with vanishing constant term."""


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients c_0..c_order of a power series in z, higher terms unknown."""

    coeffs: np.ndarray

    def __init__(self, coeffs: Sequence[complex] | np.ndarray):
        arr = np.array(coeffs, dtype=complex).ravel()
        if arr.size == 0:
            raise ValueError("a truncated series needs at least one coefficient")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, n: int) -> complex:
        return complex(self.coeffs[n])

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, coeffs={self.coeffs.tolist()!r})"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def shift_down(self, k: int = 1) -> "TruncatedSeries":
        """Divide by z**k; the dropped low coefficients must vanish."""
        if k < 0 or k > self.order:
            raise ValueError("shift out of range")
        if k and np.any(np.abs(self.coeffs[:k]) > UNIT_TOL):
            raise SeriesDomainError(f"series is not divisible by z**{k}")
        return TruncatedSeries(self.coeffs[k:])

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            return TruncatedSeries([0.0])
        n = np.arange(1, self.order + 1)
        return TruncatedSeries(n * self.coeffs[1:])

    def __call__(self, z):
        """Evaluate the polynomial part (Horner) at scalar or array z."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            out = out * z + c
        return out if out.ndim else complex(out)

    def allclose(self, other: "TruncatedSeries", atol: float = UNIT_TOL) -> bool:
        n = min(self.order, other.order) + 1
        return bool(np.all(np.abs(self.coeffs[:n] - other.coeffs[:n]) <= atol))

    @classmethod
    def from_function_coeffs(cls, coeffs: Sequence[complex], order: int) -> "TruncatedSeries":
        """Pad (or cut) a coefficient list to exactly ``order + 1`` entries."""
        arr = np.zeros(order + 1, dtype=complex)
        c = np.asarray(coeffs, dtype=complex)[: order + 1]
        arr[: c.size] = c
        return cls(arr)


@dataclass(frozen=True)
class LogCoeffVector:
    """gamma_1..gamma_N; ``gammas[0]`` is gamma_1."""

    gammas: np.ndarray

    @property
    def order(self) -> int:
        return int(self.gammas.size)

    def __getitem__(self, n: int) -> complex:
        if n < 1 or n > self.order:
            raise IndexError(f"gamma_{n} not available (order {self.order})")
        return complex(self.gammas[n - 1])


def series_mul(u: TruncatedSeries, v: TruncatedSeries) -> TruncatedSeries:
    n = min(u.order, v.order) + 1
    return TruncatedSeries(np.convolve(u.coeffs[:n], v.coeffs[:n])[:n])


def series_div(u: TruncatedSeries, v: TruncatedSeries) -> TruncatedSeries:
    """Return w with w*v = u up to min(order(u), order(v))."""
    v0 = v.coeffs[0]
    if abs(v0) <= UNIT_TOL:
        raise NotInvertibleError("constant term of the divisor vanishes")
    n = min(u.order, v.order) + 1
    a, b = u.coeffs[:n], v.coeffs[:n]
    w = np.zeros(n, dtype=complex)
    for k in range(n):
        # b[1..k] against w[k-1..0]
        acc = a[k] - np.dot(b[1 : k + 1], w[k - 1 :: -1]) if k else a[0]
        w[k] = acc / v0
    return TruncatedSeries(w)


def series_log1(u: TruncatedSeries) -> TruncatedSeries:
    """log(u) for u(0) = 1, from L' u = u'."""
    if abs(u.coeffs[0] - 1) > UNIT_TOL:
        raise SeriesDomainError(f"log needs constant term 1, got {u.coeffs[0]}")
    a = u.coeffs
    n = u.order
    L = np.zeros(n + 1, dtype=complex)
    kL = np.zeros(n + 1, dtype=complex)  # k * L_k
    for m in range(1, n + 1):
        # m L_m = m a_m - sum_{k=1}^{m-1} k L_k a_{m-k}
        s = np.dot(kL[1:m], a[m - 1 : 0 : -1]) if m > 1 else 0.0
        kL[m] = m * a[m] - s
        L[m] = kL[m] / m
    return TruncatedSeries(L)


def series_exp(L: TruncatedSeries) -> TruncatedSeries:
    """exp(L) for L(0) = 0, from E' = L' E."""
    if abs(L.coeffs[0]) > UNIT_TOL:
        raise SeriesDomainError("exp needs a vanishing constant term")
    n = L.order
    kL = np.arange(n + 1) * L.coeffs
    E = np.zeros(n + 1, dtype=complex)
    E[0] = 1.0
    for m in range(1, n + 1):
        E[m] = np.dot(kL[1 : m + 1], E[m - 1 :: -1]) / m
    return TruncatedSeries(E)


def log_coefficients(f: TruncatedSeries) -> LogCoeffVector:
    """gamma_n = [z^n] log(f(z)/z) / 2 for n = 1..order(f) - 1."""
    if f.order < 2:
        raise SeriesDomainError("need at least a_0, a_1, a_2")
    if abs(f.coeffs[0]) > UNIT_TOL or abs(f.coeffs[1] - 1) > UNIT_TOL:
        raise SeriesDomainError("f must satisfy f(0) = 0, f'(0) = 1")
    L = series_log1(f.shift_down(1))
    return LogCoeffVector(L.coeffs[1:] / 2)


def gammas_from_a(a2: complex, a3: complex, a4: complex) -> tuple[complex, complex, complex]:
    """Closed forms of gamma_1..gamma_3 in terms of a_2, a_3, a_4."""
    return (
        a2 / 2,
        (a3 - a2 * a2 / 2) / 2,
        (a4 - a2 * a3 + a2**3 / 3) / 2,
    )


def koebe(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """z/(1-z)^2 = sum n z^n."""
    return TruncatedSeries(np.arange(order + 1, dtype=float))


def identity(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return TruncatedSeries.from_function_coeffs([0, 1], order)
