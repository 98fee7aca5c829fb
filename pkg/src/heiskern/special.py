"""Confluent and Gauss hypergeometric series, the Tricomi psi function
(dual evaluation paths), and the Legendre function of the first kind.
"""

from __future__ import annotations

import enum
import math

from .backend import core
from .errors import (DomainError, PoleError, QuadratureNonConvergenceError,
                     SeriesNonConvergenceError)
from .numerics import DEFAULT_CONFIG, QuadratureConfig, gamma

__all__ = [
    "PsiEvalMode", "kummer_m", "gauss_2f1", "gamma_psi_product",
    "tricomi_psi", "legendre_p",
]

_MAX_TERMS = 100000
_INTEGER_C_GUARD = 1e-6


class PsiEvalMode(enum.Enum):
    """How tricomi_psi evaluates: the two-series combination (poles at
    integer c), the Laplace-type integral (uniform in c, needs
    Re(a) > 0), or auto selection between them."""

    SERIES_COMBINATION = "series_combination"
    INTEGRAL_REPRESENTATION = "integral_representation"
    AUTO = "auto"


def _is_nonpositive_integer(v: complex) -> bool:
    return v.imag == 0.0 and v.real <= 0.0 and v.real == math.floor(v.real)


def _reciprocal_gamma(v: complex):
    """1/Gamma(v); exactly 0 at the poles (entire function)."""
    if _is_nonpositive_integer(v):
        return 0.0 + 0.0j
    return 1.0 / core.gammac(v)


def kummer_m(a, c, x: float):
    """Confluent hypergeometric series 1F1(a, c; x).

    Term recursion t_{j+1} = t_j (a+j) x / ((c+j)(j+1)), stopped once
    |t_j| <= 1e-17 |sum| for three consecutive terms. a and c may be
    complex; c must stay off the non-positive integers and |x| <= 700.
    """
    a = complex(a)
    c = complex(c)
    if _is_nonpositive_integer(c):
        raise PoleError(f"kummer_m parameter pole: c = {c}")
    if abs(x) > 700.0:
        raise DomainError(f"|x| <= 700 required, got {x}")
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    small = 0
    for j in range(_MAX_TERMS):
        term = term * (a + j) * x / ((c + j) * (j + 1))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            small += 1
            if small >= 3:
                return total if (a.imag or c.imag) else complex(total.real, 0.0)
        else:
            small = 0
    raise SeriesNonConvergenceError(
        f"1F1({a}, {c}; {x}) did not converge in {_MAX_TERMS} terms")


def gauss_2f1(a: float, b: float, c: float, x: float) -> float:
    """Gauss hypergeometric series 2F1(a, b; c; x) for real parameters.

    Valid for |x| < 1, or any x when a or b is a non-positive integer
    (terminating polynomial case). Same stopping rule as kummer_m.
    """
    terminating = (_is_nonpositive_integer(complex(a))
                   or _is_nonpositive_integer(complex(b)))
    if _is_nonpositive_integer(complex(c)):
        raise PoleError(f"gauss_2f1 parameter pole: c = {c}")
    if not terminating and abs(x) >= 1.0:
        raise DomainError(f"|x| < 1 required for a non-terminating series, got {x}")
    term = 1.0
    total = 1.0
    small = 0
    for j in range(_MAX_TERMS):
        term = term * (a + j) * (b + j) * x / ((c + j) * (j + 1))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise SeriesNonConvergenceError(
        f"2F1({a}, {b}; {c}; {x}) did not converge in {_MAX_TERMS} terms")


def gamma_psi_product(a, c: float, u: float,
                      cfg: QuadratureConfig = DEFAULT_CONFIG):
    """The product Gamma(a) * Psi(a, c; u) via its Laplace-type integral
    over (0, inf), for Re(a) > 0 and u > 0.

    The integrand is evaluated in log form, so neither factor is formed
    separately (this is what makes the resolvent's large-|a| regime
    tractable). Returns a complex value; raises on non-convergence.
    """
    a = complex(a)
    if not a.real > 0:
        raise DomainError(f"Re(a) > 0 required, got {a}")
    if not u > 0:
        raise DomainError(f"u > 0 required, got {u}")
    value, err, evals, converged, finite = core.gamma_psi_integral(
        a, float(c), float(u), cfg.abs_tol, cfg.rel_tol,
        cfg.max_subdivisions)
    if not finite:
        raise QuadratureNonConvergenceError(
            f"product integral overflowed for a={a}, c={c}, u={u}")
    if not converged:
        raise QuadratureNonConvergenceError(
            f"product integral did not converge for a={a}, c={c}, u={u} "
            f"(error estimate {err:.3e})")
    return value


def tricomi_psi(a, c: float, u: float,
                mode: PsiEvalMode = PsiEvalMode.AUTO,
                cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Tricomi's psi (Kummer U) function Psi(a, c; u) for u > 0.

    series_combination sums the two-term linear combination of 1F1
    series,

        G(1-c)/G(a-c+1) * 1F1(a, c; u)
          + G(c-1)/G(a) * u^(1-c) * 1F1(a-c+1, 2-c; u),

    whose gamma coefficients blow up at integer c, so that path rejects
    c within 1e-6 of an integer. integral_representation divides the
    Laplace-type product integral by Gamma(a) and is uniform in c but
    needs Re(a) > 0. auto picks the integral near integer c and the
    series otherwise.
    """
    a = complex(a)
    c = float(c)
    if not u > 0:
        raise DomainError(f"u > 0 required, got {u}")
    near_integer_c = abs(c - round(c)) < _INTEGER_C_GUARD
    if mode is PsiEvalMode.AUTO:
        mode = (PsiEvalMode.INTEGRAL_REPRESENTATION if near_integer_c
                else PsiEvalMode.SERIES_COMBINATION)

    if mode is PsiEvalMode.SERIES_COMBINATION:
        if near_integer_c:
            raise PoleError(
                f"series_combination rejected: c = {c} is within "
                f"{_INTEGER_C_GUARD} of an integer (gamma poles)")
        coeff1 = gamma(complex(1.0 - c)) * _reciprocal_gamma(a - c + 1.0)
        coeff2 = gamma(complex(c - 1.0)) * _reciprocal_gamma(a)
        term1 = coeff1 * kummer_m(a, c, u) if coeff1 != 0 else 0.0
        term2 = (coeff2 * u ** (1.0 - c) * kummer_m(a - c + 1.0, 2.0 - c, u)
                 if coeff2 != 0 else 0.0)
        return complex(term1 + term2)

    if mode is PsiEvalMode.INTEGRAL_REPRESENTATION:
        if not a.real > 0:
            raise DomainError(
                f"integral_representation needs Re(a) > 0, got {a}")
        return gamma_psi_product(a, c, u, cfg) / core.gammac(a)

    raise DomainError(f"unknown evaluation mode {mode!r}")


def legendre_p(degree: float, order: float, x: float) -> float:
    """Legendre function of the first kind P_degree^order(x) on the cut
    x in (-1, 1), hypergeometric form

        (1/G(1-order)) ((1+x)/(1-x))^(order/2)
            * 2F1(-degree, degree+1; 1-order; (1-x)/2).

    Intended for order <= 0 (the variant the kernel identities use);
    1 - order must avoid the non-positive integers.
    """
    if not -1.0 < x < 1.0:
        raise DomainError(f"|x| < 1 required, got {x}")
    if _is_nonpositive_integer(complex(1.0 - order)):
        raise PoleError(f"legendre_p pole: 1 - order = {1.0 - order}")
    rg = _reciprocal_gamma(complex(1.0 - order)).real
    pref = ((1.0 + x) / (1.0 - x)) ** (0.5 * order)
    return rg * pref * gauss_2f1(-degree, degree + 1.0, 1.0 - order,
                                 0.5 * (1.0 - x))
