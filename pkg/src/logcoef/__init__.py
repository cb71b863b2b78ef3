"""Numerical toolkit for sharp bounds on logarithmic coefficients of
close-to-convex functions with Re(P(z) f'(z)) > 0."""

from .caratheodory import (
    AtomicHerglotz,
    DegenerateCoefficientError,
    HerglotzDomainError,
    Lemma1Params,
    Lemma1Recovery,
    herglotz_coefficients,
    lemma1_forward,
    lemma1_recover,
    lemma2_gap,
    make_H,
    make_L,
    random_herglotz,
)
from .classes import CLASSES, F1, F2, F3, ClassSpec, CtcFunction, build_ctc, gammas123, get_class, membership_min
from .extremal import ConstructionError, ExtremalResult, all_extremals, gamma1_extremal, gamma2_extremal, gamma3_extremal
from .objectives import objective_gamma1, objective_gamma2, objective_gamma3, phi_general
from .search import (
    NAMED_POLYNOMIALS,
    NumericalError,
    RealPolynomial,
    SearchReport,
    grid_maximize,
    real_roots_in_interval,
    refine_local,
    verify_claimed_max,
)
from .series import (
    LogCoeffVector,
    NotInvertibleError,
    SeriesDomainError,
    TruncatedSeries,
    koebe,
    log_coefficients,
    series_div,
    series_exp,
    series_log1,
    series_mul,
)
from .verifier import VerifyReport, bound_suite, roth_partial, starlike_gamma_check

__version__ = "0.1.0"
