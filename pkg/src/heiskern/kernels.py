"""Kernel evaluators: the closed-form fundamental solution, its
semi-infinite integral representation, the Green kernel (quadrature and
closed forms), and the resolvent kernel.

All integral evaluators share one compiled core routine for
    int_0^inf x^(n-1) [G*Psi](a(x), n; 2 x |z-w|^2) e^(-x |z-w|^2)
        cos(x theta) dx,
differing only in a(x) and the prefactor. theta enters through
pair_geometry, so the evaluators are left-invariant by construction and
symmetric under swapping the two points (theta flips sign, cos is even).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .backend import core
from .errors import (DomainError, NonFiniteIntegrandError,
                     QuadratureNonConvergenceError, ResolutionBudgetError,
                     SingularityError, UnsupportedRepresentationError)
from .heisenberg import HeisenbergPoint, identity, pair_geometry
from .numerics import QuadratureConfig, QuadratureResult

__all__ = [
    "KernelQuery", "DEFAULT_KERNEL_CONFIG", "folland_constant",
    "folland_closed", "folland_integral", "green_r0", "green_r0_closed",
    "resolvent",
]

# tuned for the oscillatory kernel integrals: relative-tolerance governed
# (tiny values on far-tau points otherwise chase an unreachable absolute
# target) with budget head-room for the strongly cancelling corners
DEFAULT_KERNEL_CONFIG = QuadratureConfig(
    abs_tol=1e-13, rel_tol=1e-7, max_subdivisions=16000, tail_epsilon=1e-13)

# inner product-integral accuracy inside the x-integrand
_INNER_REL_TOL = 1e-11
_INNER_MAX_PANELS = 400

# refuse oscillation/decay ratios too fast to certify
_RESOLUTION_LIMIT = 1e4


@dataclass(frozen=True)
class KernelQuery:
    """One kernel evaluation request.

    q defaults to the group identity; zeta (with Re < 0) is present only
    for resolvent evaluation.
    """

    n: int
    p: HeisenbergPoint
    q: Optional[HeisenbergPoint] = None
    zeta: Optional[complex] = None
    cfg: QuadratureConfig = DEFAULT_KERNEL_CONFIG

    def __post_init__(self):
        if self.n != self.p.n:
            raise DomainError(f"n={self.n} but p has dimension {self.p.n}")
        if self.q is not None and self.q.n != self.n:
            raise DomainError(f"n={self.n} but q has dimension {self.q.n}")
        if self.zeta is not None and not complex(self.zeta).real < 0:
            raise DomainError(f"Re(zeta) < 0 required, got {self.zeta}")

    def resolved_q(self) -> HeisenbergPoint:
        return self.q if self.q is not None else identity(self.n)


def folland_constant(n: int) -> float:
    """The closed-form normalization 2^n Gamma(n/2)^2 / pi^(n+1)."""
    if n < 1:
        raise DomainError(f"n >= 1 required, got {n}")
    g = core.gammac(complex(0.5 * n)).real
    return 2.0 ** n * g * g / math.pi ** (n + 1)


def folland_closed(p: HeisenbergPoint, n: Optional[int] = None) -> float:
    """Closed-form fundamental solution c_n (|z|^4 + tau^2)^(-n/2)."""
    n = _resolve_n(p, n)
    gauge4 = (sum(abs(v) ** 2 for v in p.z)) ** 2 + p.tau * p.tau
    if gauge4 == 0.0:
        raise SingularityError("fundamental solution is singular at the identity")
    return folland_constant(n) * gauge4 ** (-0.5 * n)


def _resolve_n(p: HeisenbergPoint, n: Optional[int]) -> int:
    if n is None:
        return p.n
    if n != p.n:
        raise DomainError(f"n={n} but point has dimension {p.n}")
    return n


def _run_core(n: int, zwsq: float, theta: float, zeta: Optional[complex],
              cfg: QuadratureConfig, what: str) -> QuadratureResult:
    if abs(theta) / zwsq > _RESOLUTION_LIMIT:
        raise ResolutionBudgetError(
            f"{what}: |theta|/|z-w|^2 = {abs(theta) / zwsq:.3g} exceeds "
            f"the certifiable resolution limit {_RESOLUTION_LIMIT:.0e}")
    value, err, evals, converged, finite, inner_failures = \
        core.kernel_x_integral(
            n, zwsq, theta,
            complex(zeta) if zeta is not None else 0j, zeta is not None,
            cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions,
            cfg.tail_epsilon, _INNER_REL_TOL, _INNER_MAX_PANELS)
    if not finite:
        raise NonFiniteIntegrandError(
            None, f"{what}: non-finite integrand sample")
    if inner_failures:
        raise QuadratureNonConvergenceError(
            f"{what}: {inner_failures} inner product-integral evaluations "
            f"failed to converge (n={n}, |z-w|^2={zwsq:.6g}, "
            f"theta={theta:.6g})")
    return QuadratureResult(value, err, evals, converged)


def folland_integral(p: HeisenbergPoint, n: Optional[int] = None,
                     cfg: QuadratureConfig = DEFAULT_KERNEL_CONFIG
                     ) -> QuadratureResult:
    """Fundamental solution via its semi-infinite integral representation

        (2^(n+1) Gamma(n/2) / pi^(n+1))
            * int_0^inf x^(n-1) e^(-x|z|^2) Psi(n/2, n; 2x|z|^2)
                  cos(tau x) dx.

    Requires |z| > 0: at z = 0 the representation degenerates (the
    closed form stays finite; the CLI answers from it there).
    """
    n = _resolve_n(p, n)
    zsq = sum(abs(v) ** 2 for v in p.z)
    if zsq == 0.0:
        raise UnsupportedRepresentationError(
            "integral representation unsupported at z = 0; "
            "use the closed form")
    res = _run_core(n, zsq, p.tau, None, cfg, "folland_integral")
    pref = 2.0 ** (n + 1) / math.pi ** (n + 1)
    return QuadratureResult(pref * res.value, pref * res.error_estimate,
                            res.evaluations, res.converged)


def green_r0(p: HeisenbergPoint, q: Optional[HeisenbergPoint] = None,
             n: Optional[int] = None,
             cfg: QuadratureConfig = DEFAULT_KERNEL_CONFIG
             ) -> QuadratureResult:
    """Green kernel by quadrature,

        (2^n Gamma(n/2) / pi^(n+1/2))
            * int_0^inf x^(n-1) Psi(n/2, n; mu x) e^(-mu x / 2)
                  cos(x theta) dx,

    with (mu, theta) the pair geometry of (p, q). Equals
    (sqrt(pi)/2) * folland_closed at the left-translated point.
    """
    n = _resolve_n(p, n)
    q = q if q is not None else identity(n)
    geom = pair_geometry(p, q)
    if geom.mu == 0.0:
        raise SingularityError("green_r0 requires z != w")
    res = _run_core(n, 0.5 * geom.mu, geom.theta, None, cfg, "green_r0")
    pref = 2.0 ** n / math.pi ** (n + 0.5)
    return QuadratureResult(pref * res.value, pref * res.error_estimate,
                            res.evaluations, res.converged)


def green_r0_closed(p: HeisenbergPoint, q: Optional[HeisenbergPoint] = None,
                    n: Optional[int] = None) -> float:
    """Closed-form Green kernel

        (2^(n-1) Gamma(n/2)^2 / pi^(n+1/2))
            * ((|z-w|^2)^2 + theta^2)^(-n/2).
    """
    n = _resolve_n(p, n)
    q = q if q is not None else identity(n)
    geom = pair_geometry(p, q)
    mu_half = 0.5 * geom.mu
    denom = mu_half * mu_half + geom.theta * geom.theta
    if denom == 0.0:
        raise SingularityError("green kernel is singular at p = q")
    g = core.gammac(complex(0.5 * n)).real
    pref = 2.0 ** (n - 1) * g * g / math.pi ** (n + 0.5)
    return pref * denom ** (-0.5 * n)


def resolvent(query: KernelQuery) -> QuadratureResult:
    """Resolvent kernel at query.zeta (Re < 0),

        (-2^n / pi^(n+1/2))
            * int_0^inf x^(n-1) [Gamma Psi](n/2 - zeta/(2x), n; mu x)
                  e^(-mu x / 2) cos(x theta) dx,

    where the gamma-psi product is evaluated as one integral (no
    separate Gamma factor, which would overflow as x -> 0). The value is
    real (zero imaginary part) for real zeta; for complex zeta accuracy
    is best-effort, guaranteed only for |Im zeta| <= |Re zeta|.
    """
    if query.zeta is None:
        raise DomainError("resolvent requires zeta with Re(zeta) < 0")
    n = query.n
    q = query.resolved_q()
    geom = pair_geometry(query.p, q)
    if geom.mu == 0.0:
        raise SingularityError("resolvent requires z != w")
    res = _run_core(n, 0.5 * geom.mu, geom.theta, complex(query.zeta),
                    query.cfg, "resolvent")
    pref = -(2.0 ** n) / math.pi ** (n + 0.5)
    return QuadratureResult(pref * res.value, abs(pref) * res.error_estimate,
                            res.evaluations, res.converged)
