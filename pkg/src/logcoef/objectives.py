"""Box-domain majorants for |gamma_2| and |gamma_3|.

With c1 = c real in [0, 2] and x = r e^{i theta}, p = cos(theta), the
c3-parametrisation gives

    96 gamma_3 = 6 t (1 - r^2)(4 - c^2) + phi(c, r, p)
    phi = c^3 + (4 b3 - 2 b2^2) c + (2 b2^3 - 8 b2 b3 + 12 b4)
          + x (4 - c^2)(2 b2 + 2 c - 3 c x)

and |t| <= 1 turns it into the majorant 6 (1 - r^2)(4 - c^2) + |phi|.
All functions broadcast over numpy arrays.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .classes import ClassSpec, get_class

# objective value / scale bounds |gamma_n|; F1's gamma_3 objective is the
# customary half-size one
GAMMA3_SCALE = {"F1": 48.0, "F2": 96.0, "F3": 96.0}
GAMMA2_SCALE = 6.0
GAMMA1_SCALE = 1.0

CUBOID = ((0.0, 2.0), (0.0, 1.0), (-1.0, 1.0))
SQUARE = ((0.0, 2.0), (-1.0, 1.0))


class CuboidPoint(NamedTuple):
    c: float
    r: float
    p: float


class Gamma2Point(NamedTuple):
    d: float
    q: float


def _unit(p):
    """e^{i theta} from p = cos(theta), taking the upper half plane."""
    return p + 1j * np.sqrt(np.clip(1.0 - p * p, 0.0, None))


def phi_complex(cls: ClassSpec | str, c, r, p):
    cls = get_class(cls)
    b2, b3, b4 = cls.b234
    x = r * _unit(p)
    return (
        c**3
        + (4 * b3 - 2 * b2 * b2) * c
        + (2 * b2**3 - 8 * b2 * b3 + 12 * b4)
        + x * (4 - c * c) * (2 * b2 + 2 * c - 3 * c * x)
    )


def phi_general(cls: ClassSpec | str, c, r, p):
    """|phi(c, r, p)| on the 96-scale."""
    return np.abs(phi_complex(cls, c, r, p))


def objective_gamma3(cls: ClassSpec | str, c, r, p):
    """Majorant of ``GAMMA3_SCALE[cls] * |gamma_3|`` at a cuboid point (t = 1 taken)."""
    cls = get_class(cls)
    val = 6 * (1 - r * r) * (4 - c * c) + phi_general(cls, c, r, p)
    return val * (GAMMA3_SCALE[cls.id] / 96.0)


def gamma2_majorant(cls: ClassSpec | str, d, q):
    """2 - d^2/2 + |(c1 + b2)^2 + 8 b3 - 4 b2^2| / 8 with c1 = d e^{i alpha}, q = cos(alpha)."""
    cls = get_class(cls)
    b2, b3, _ = cls.b234
    c1 = d * _unit(q)
    return 2 - d * d / 2 + np.abs((c1 + b2) ** 2 + 8 * b3 - 4 * b2 * b2) / 8


def objective_gamma2(cls: ClassSpec | str, d, q):
    """Majorant of 6|gamma_2| on the square [0, 2] x [-1, 1].

    F1 and F3 use their reduced square-root forms; F2 goes through the
    Fekete-Szego bound |c2 - 3/8 c1^2| <= 2 and is the constant 3.
    """
    cls = get_class(cls)
    d = np.asarray(d, dtype=float)
    q = np.asarray(q, dtype=float)
    if cls.id == "F1":
        rad = (d * d + 5 + 2 * d * q) ** 2 - 16 * d * d * (1 - q * q)
        out = 2 - d * d / 2 + np.sqrt(np.clip(rad, 0.0, None)) / 8
    elif cls.id == "F3":
        rad = (d * d + 1 - 2 * d * q) * (d * d + 9 + 6 * d * q)
        out = 2 - d * d / 2 + np.sqrt(np.clip(rad, 0.0, None)) / 8
    else:
        out = np.full(np.broadcast(d, q).shape, 3.0)
    return out if out.ndim else float(out)


def objective_gamma1(cls: ClassSpec | str, c1_mod):
    """(|b2| + |c1|)/4, bounding |gamma_1|."""
    cls = get_class(cls)
    c1_mod = np.asarray(c1_mod, dtype=float)
    if np.any((c1_mod < 0) | (c1_mod > 2)):
        raise ValueError("|c1| must lie in [0, 2]")
    out = (abs(cls.b[0]) + c1_mod) / 4
    return out if out.ndim else float(out)


def objective_scale(cls: ClassSpec | str, target: str) -> float:
    cls = get_class(cls)
    return {"gamma1": GAMMA1_SCALE, "gamma2": GAMMA2_SCALE, "gamma3": GAMMA3_SCALE[cls.id]}[target]


def cuboid_point_from_x(c1: float, x: complex) -> CuboidPoint:
    """(c, |x|, cos arg x), with p = 1 when x = 0."""
    r = abs(x)
    p = x.real / r if r > 0 else 1.0
    return CuboidPoint(float(c1), float(min(r, 1.0)), float(np.clip(p, -1.0, 1.0)))
