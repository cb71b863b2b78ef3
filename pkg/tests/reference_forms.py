"""Independent transcriptions of the reduced gamma_3 majorants and their face forms.

These are typed in by hand from the printed displays so the library's
general formula can be checked against them.  Two printed forms are wrong
as printed; the corrected versions are used here and the literal ones are
kept alongside for the tests that demonstrate the difference.
"""
import numpy as np
import sympy as sp


def phi1(c, r, p):
    """F1, 48-scale: G = 3(4-c^2)(1-r^2) + sqrt(phi1)."""
    a = c**3 / 2 + c + 3
    k = 4 - c**2
    return (
        a**2
        + k**2 * r**2 * (-3 * c**2 * p * r + 9 / 4 * c**2 * r**2 + c**2 - 3 * c * p * r + 2 * c + 1)
        + 2 * a * k * r * (3 / 2 * c * r - 3 * c * p**2 * r + c * p + p)
    )


def phi1_literal(c, r, p):
    """phi1 with the stray '-1' in the last factor, exactly as printed."""
    a = c**3 / 2 + c + 3
    k = 4 - c**2
    return phi1(c, r, p) - 2 * a * k * r


def phi2(c, r, p):
    """F2, 96-scale: F = 6(1-r^2)(4-c^2) + c sqrt(phi2)."""
    k = 4 - c**2
    return (c**2 + 4) ** 2 + 2 * r * k * (4 + c**2) * (2 * p + 3 * r - 6 * p**2 * r) + r**2 * k**2 * (
        4 + 9 * r**2 - 12 * r * p
    )


def phi3(c, r, p):
    """F3, 96-scale: K = 6(1-r^2)(4-c^2) + sqrt(phi3)."""
    k = 4 - c**2
    m = c**3 - 2 * c - 10
    return (
        m**2
        + 2 * r * k * m * (2 * p + 2 * c * p - 6 * c * r * p**2 + 3 * r * c)
        + r**2 * k**2 * (4 * c**2 + 4 + 9 * c**2 * r**2 + 8 * c - 12 * c**2 * r * p - 12 * c * r * p)
    )


def G(c, r, p):
    return 3 * (4 - c**2) * (1 - r**2) + np.sqrt(phi1(c, r, p))


def F(c, r, p):
    return 6 * (1 - r**2) * (4 - c**2) + c * np.sqrt(phi2(c, r, p))


def K(c, r, p):
    return 6 * (1 - r**2) * (4 - c**2) + np.sqrt(phi3(c, r, p))


# -- faces -----------------------------------------------------------------------


def G_c0(r, p):
    return np.sqrt(24 * p * r + 16 * r**2 + 9) + 12 * (1 - r**2)


def G_r0(c):
    return 12 - 3 * c**2 + (c**3 + 2 * c + 6) / 2


def psi1(c, p):
    """Corrected: the printed (c^2 - 12pc + 8c)/4 drops 12c^2 and the c^2 p term."""
    return (c**3 / 2 + c + 3) ** 2 + (c**2 - 4) ** 2 * ((13 * c**2 - 12 * p * c**2 + 8 * c - 12 * p * c) / 4 + 1)


def psi1_literal(c, p):
    return (c**3 / 2 + c + 3) ** 2 + (c**2 - 4) ** 2 * ((c**2 - 12 * p * c + 8 * c) / 4 + 1)


def G_r1(c, p, psi=psi1):
    return np.sqrt(psi(c, p) + (c**2 - 4) * (c**3 + 2 * c + 6) * (6 * c * p**2 - 2 * c * p - 2 * p - 3 * c) / 2)


def F_r0(c):
    return 24 - 6 * c**2 + c * (c**2 + 4)


def F_r1(c, p):
    return 2 * c * np.sqrt(24 * c**2 * (p - 1) - 16 * (p - 1) * (5 + 3 * p) + c**4 * (2 - 4 * p + 3 * p**2))


def K_c0(r, p):
    return 24 * (1 - r**2) + 2 * np.sqrt(25 - 40 * r * p + 16 * r**2)


def K_r0(c):
    return 6 * (4 - c**2) + np.abs(c**3 - 2 * c - 10)


def psi3(c, p):
    return (c**3 - 2 * c - 10) ** 2 + (c**2 - 4) ** 2 * (13 * c**2 - 12 * c**2 * p + 8 * c - 12 * c * p + 4)


def K_r1(c, p):
    return np.sqrt(psi3(c, p) + 2 * (c**3 - 2 * c - 10) * (c**2 - 4) * (6 * c * p**2 - 2 * c * p - 2 * p - 3 * c))


REDUCED = {"F1": G, "F2": F, "F3": K}


def gamma3_symbolic():
    """48 gamma_3 in (b, c) by expanding log(f/z) of z f' = g h symbolically."""
    z = sp.Symbol("z")
    b2, b3, b4, c1, c2, c3 = sp.symbols("b2 b3 b4 c1 c2 c3")
    b = [1, b2, b3, b4]
    c = [1, c1, c2, c3]
    a = [sp.Integer(1)] + [sum(b[n - 1 - k] * c[k] for k in range(n)) / n for n in range(2, 5)]
    f_over_z = sum(a[n] * z**n for n in range(4))
    g3 = sp.series(sp.log(f_over_z), z, 0, 4).removeO().coeff(z, 3) / 2
    return sp.expand(48 * g3), (b2, b3, b4, c1, c2, c3)
