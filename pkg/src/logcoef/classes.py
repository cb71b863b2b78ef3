"""The three close-to-convex classes Re(P(z) f'(z)) > 0.

Each class is close-to-convex with respect to the starlike generator
g(z) = z / P(z), so every member is z f' = g h for some Caratheodory h.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .caratheodory import AtomicHerglotz, herglotz_coefficients, polar_grid
from .series import DEFAULT_ORDER, TruncatedSeries, series_div, series_mul


@dataclass(frozen=True)
class ClassSpec:
    id: str
    kernel: tuple[float, ...]  # P(z), ascending powers
    b: tuple[float, ...] = field(repr=False)  # b_2..b_{order}

    def P(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for k in self.kernel[::-1]:
            out = out * z + k
        return out

    def g(self, z):
        """Closed-form starlike generator z / P(z)."""
        z = np.asarray(z, dtype=complex)
        return z / self.P(z)

    def b_n(self, n: int) -> float:
        if n == 1:
            return 1.0
        return self.b[n - 2]

    @property
    def b234(self) -> tuple[float, float, float]:
        return self.b[0], self.b[1], self.b[2]

    def generator_series(self, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        b = self.b[: order - 1] if order <= len(self.b) + 1 else starlike_coefficients(self, order)
        return TruncatedSeries([0.0, 1.0, *b][: order + 1])


def starlike_coefficients(cls: ClassSpec, n_max: int) -> list[float]:
    """b_2..b_{n_max} of z / P(z), by series division."""
    P = TruncatedSeries.from_function_coeffs(cls.kernel, n_max)
    one = TruncatedSeries.from_function_coeffs([1.0], n_max)
    q = series_div(one, P)
    # [z^n] z/P = [z^{n-1}] 1/P
    return [float(q.coeffs[n - 1].real) for n in range(2, n_max + 1)]


def _make(id_: str, kernel: tuple[float, ...], n_max: int = 64) -> ClassSpec:
    stub = ClassSpec(id_, kernel, ())
    return ClassSpec(id_, kernel, tuple(starlike_coefficients(stub, n_max)))


F1 = _make("F1", (1.0, -1.0))
F2 = _make("F2", (1.0, 0.0, -1.0))
F3 = _make("F3", (1.0, -1.0, 1.0))
CLASSES = {c.id: c for c in (F1, F2, F3)}


def get_class(name: str | ClassSpec) -> ClassSpec:
    if isinstance(name, ClassSpec):
        return name
    try:
        return CLASSES[name.upper()]
    except KeyError:
        raise KeyError(f"unknown class {name!r}; expected one of f1, f2, f3") from None


@dataclass(frozen=True, eq=False)
class CtcFunction:
    """A member of a class, with the Caratheodory function that generates it."""

    cls: ClassSpec
    h: AtomicHerglotz
    f: TruncatedSeries

    @property
    def order(self) -> int:
        return self.f.order

    def c(self, n_max: int = 3) -> np.ndarray:
        return herglotz_coefficients(self.h, n_max)

    def fprime(self, z):
        """f'(z) = g(z) h(z) / z = h(z) / P(z), without truncation."""
        z = np.asarray(z, dtype=complex)
        return self.h(z) / self.cls.P(z)


def build_ctc(cls: ClassSpec | str, h: AtomicHerglotz, order: int = DEFAULT_ORDER) -> CtcFunction:
    """f with z f' = g h, i.e. n a_n = sum_{k=0}^{n-1} b_{n-k} c_k (b_1 = c_0 = 1)."""
    cls = get_class(cls)
    g = cls.generator_series(order)
    zfp = series_mul(g, h.series(order))
    n = np.arange(order + 1)
    a = np.zeros(order + 1, dtype=complex)
    a[1:] = zfp.coeffs[1:] / n[1:]
    return CtcFunction(cls, h, TruncatedSeries(a))


def membership_min(
    f: CtcFunction | TruncatedSeries,
    radial_steps: int = 64,
    angular_steps: int = 64,
    cls: ClassSpec | str | None = None,
    r_max: float = 0.999,
) -> float:
    """min of Re(P(z) f'(z)) over a polar grid with radii up to ``r_max``.

    A ``CtcFunction`` is evaluated through z f' = g h in closed form; a bare
    series is treated as a polynomial and needs ``cls``.
    """
    z = polar_grid(radial_steps, angular_steps, r_max)
    if isinstance(f, CtcFunction):
        spec = f.cls if cls is None else get_class(cls)
        fp = f.fprime(z)
    else:
        if cls is None:
            raise ValueError("a bare series needs the class to test against")
        spec = get_class(cls)
        fp = f.derivative()(z)
    return float(np.min(np.real(spec.P(z) * fp)))


def gammas123(f: CtcFunction) -> tuple[complex, complex, complex]:
    """gamma_1..gamma_3 in closed form from (b_2, b_3, b_4) and (c_1, c_2, c_3)."""
    b2, b3, b4 = f.cls.b234
    c1, c2, c3 = (complex(v) for v in f.c(3))
    g1 = (b2 + c1) / 4
    g2 = (8 * b3 + 2 * b2 * c1 + 8 * c2 - 3 * b2**2 - 3 * c1**2) / 48
    g3 = (
        6 * c3
        - b2**2 * c1
        - b2 * c1**2
        + 2 * b2 * c2
        + 2 * b3 * c1
        + b2**3
        - 4 * b3 * b2
        + 6 * b4
        + c1**3
        - 4 * c1 * c2
    ) / 48
    return g1, g2, g3
