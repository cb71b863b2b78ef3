"""Exact bound values and extremal parameters, evaluated at 50 digits.

Everything here is a radical expression; values are kept as mpmath numbers
and rounded to float only at the point of use.
"""
from __future__ import annotations

import mpmath
from mpmath import mpf, sqrt

DPS = 50

with mpmath.workdps(DPS):
    S30 = sqrt(30)
    S46 = sqrt(46)
    S262 = sqrt(262)

    # sharp bounds on |gamma_n|
    GAMMA1_BOUND = {"F1": mpf(3) / 4, "F2": mpf(1) / 2, "F3": mpf(3) / 4}
    GAMMA1_BOUND_PRINTED = {"F1": mpf(3) / 4, "F2": mpf(1) / 4, "F3": mpf(3) / 4}
    GAMMA2_BOUND = {"F1": mpf(4) / 9, "F2": mpf(1) / 2, "F3": mpf(2) / 5}
    GAMMA3_BOUND = {
        "F1": (11 + 15 * S30) / 288,
        "F2": (95 + 23 * S46) / 972,
        "F3": (743 + 131 * S262) / 7776,
    }

    # maxima of the gamma_3 objectives and where they sit
    GAMMA3_OBJECTIVE_MAX = {
        "F1": 5 * sqrt(mpf(15) / 2) + mpf(11) / 6,
        "F2": mpf(8) / 81 * (95 + 23 * S46),
        "F3": (743 + 131 * S262) / 81,
    }
    GAMMA3_ARGMAX = {
        "F1": ((6 - S30) / 2, (25 - S30) / 105, mpf(1)),
        "F2": ((8 - S46) / 3, (11 - S46) / 75, mpf(1)),
        "F3": ((-14 + S262) / 6, (3 + S262) / 69, mpf(-1)),
    }
    GAMMA2_ARGMAX = {"F1": (mpf(1) / 3, mpf(1)), "F3": (mpf(1) / 5, mpf(-1))}

    # (t, mu) of the three-atom witnesses as printed
    H_PARAMS = {
        "F1": (mpf(3) / 278 * (15 * S30 - 56), mpmath.mpc(-1 - S30, sqrt(113 - 2 * S30)) / 12),
        "F2": ((S46 - 4) / 10, mpmath.mpc(-1 - S46, sqrt(277 - 2 * S46)) / 18),
        "F3": ((32352 - 687 * S262) / 64622, mpmath.mpc(-769 + 35 * S262, sqrt(-226727 + 53830 * S262)) / 828),
    }
    # printed (c1, c2, c3) of those witnesses
    H_TRIPLES = {
        "F1": ((6 - S30) / 2, (76 - 13 * S30) / 12, (554 - 75 * S30) / 72),
        "F2": ((8 - S46) / 3, (134 - 19 * S46) / 27, 2 * (721 - 71 * S46) / 243),
        "F3": ((-14 + S262) / 6, (548 - 37 * S262) / 108, (47525 * S262 - 698926) / 44712),
    }

    # F3 gamma_3: the maximiser needs t = -1 in the c3 parametrisation, which the
    # three-atom family with its base atom at -1 realises.
    F3_MINUS_WEIGHT = (13 * S262 - 112) / 246
    F3_MINUS_RE_MU = (1 + S262) / 36
    F3_MINUS_MU = mpmath.mpc(F3_MINUS_RE_MU, sqrt(1 - F3_MINUS_RE_MU**2))

    # F3 gamma_2: c1 = -1/5 and c2 = c1^2 - 2, a conjugate pair with Re mu = -1/10
    F3_GAMMA2_RE_MU = mpf(-1) / 10

    ROTH_BOUND = (2 * mpmath.pi**2 - 12) / 3
