"""Heisenberg group algebra: points, the twisted product, the gauge,
pair geometry, and exact application of the sub-Laplacian to test
functions with caller-supplied derivatives.

Points live on C^n x R with the product
    (z, tau) . (w, s) = (z + w, tau + s + 2 Im<z, w>),
<z, w> = sum_j z_j conj(w_j). The sub-Laplacian, written in Wirtinger
form per coordinate as
    -d^2/dz_j dzbar_j - |z_j|^2 d^2/dtau^2
        + i d/dtau (z_j d/dz_j - zbar_j d/dzbar_j),
reduces over real coordinates (z_j = x_j + i y_j) to
    -(1/4)(f_xx + f_yy) - |z_j|^2 f_tautau + x_j f_{y tau} - y_j f_{x tau},
which is -(1/4) sum (X_j^2 + Y_j^2) for the left-invariant frame
X_j = dx_j + 2 y_j dtau, Y_j = dy_j - 2 x_j dtau. The reduction is
locked down symbolically in the test suite on a monomial basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Tuple

from .errors import DimensionMismatchError, DomainError

__all__ = [
    "HeisenbergPoint", "PairGeometry", "SecondPartials", "TestFunction",
    "identity", "multiply", "inverse", "koranyi_gauge4", "pair_geometry",
    "apply_sublaplacian", "check_derivatives", "GaussianTestFunction",
    "parse_z", "format_z",
]


@dataclass(frozen=True)
class HeisenbergPoint:
    """A point (z, tau) with z in C^n, tau real."""

    z: Tuple[complex, ...]
    tau: float

    def __post_init__(self):
        zt = tuple(complex(v) for v in self.z)
        if len(zt) < 1:
            raise DomainError("dimension n >= 1 required")
        for v in zt:
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise DomainError(f"non-finite coordinate {v!r}")
        if not math.isfinite(self.tau):
            raise DomainError(f"non-finite tau {self.tau!r}")
        object.__setattr__(self, "z", zt)
        object.__setattr__(self, "tau", float(self.tau))

    @property
    def n(self) -> int:
        return len(self.z)

    def is_identity(self) -> bool:
        return self.tau == 0.0 and all(v == 0 for v in self.z)


def identity(n: int) -> HeisenbergPoint:
    """The group identity (0, 0) in dimension n."""
    return HeisenbergPoint((0j,) * n, 0.0)


@dataclass(frozen=True)
class PairGeometry:
    """Derived pair quantities mu = 2|z-w|^2 and
    theta = (tau - s) + 2 Im<z, w>."""

    mu: float
    theta: float


def _herm(z: Sequence[complex], w: Sequence[complex]) -> complex:
    return sum(zj * wj.conjugate() for zj, wj in zip(z, w))


def _check_dims(p: HeisenbergPoint, q: HeisenbergPoint):
    if p.n != q.n:
        raise DimensionMismatchError(f"dimension mismatch: {p.n} vs {q.n}")


def multiply(p: HeisenbergPoint, q: HeisenbergPoint) -> HeisenbergPoint:
    """Group product p . q."""
    _check_dims(p, q)
    z = tuple(a + b for a, b in zip(p.z, q.z))
    tau = p.tau + q.tau + 2.0 * _herm(p.z, q.z).imag
    return HeisenbergPoint(z, tau)


def inverse(p: HeisenbergPoint) -> HeisenbergPoint:
    """Group inverse (-z, -tau); p . inverse(p) is exactly the identity."""
    return HeisenbergPoint(tuple(-v for v in p.z), -p.tau)


def koranyi_gauge4(p: HeisenbergPoint) -> float:
    """Fourth power of the Koranyi gauge, |z|^4 + tau^2."""
    zsq = sum(abs(v) ** 2 for v in p.z)
    return zsq * zsq + p.tau * p.tau


def pair_geometry(p: HeisenbergPoint, q: HeisenbergPoint) -> PairGeometry:
    """mu and theta for the pair (p, q).

    These equal 2|z'|^2 and tau' for (z', tau') = q^{-1} . p, so every
    kernel built on them is automatically left-invariant.
    """
    _check_dims(p, q)
    dsq = sum(abs(a - b) ** 2 for a, b in zip(p.z, q.z))
    theta = (p.tau - q.tau) + 2.0 * _herm(p.z, q.z).imag
    return PairGeometry(2.0 * dsq, theta)


# ----------------------------------------------------------------------
# test functions and the sub-Laplacian
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SecondPartials:
    """Second partials of a scalar function at a point: per-j tuples for
    xx, yy, xy, x-tau, y-tau, plus the scalar tau-tau."""

    xx: Tuple[float, ...]
    yy: Tuple[float, ...]
    xy: Tuple[float, ...]
    xtau: Tuple[float, ...]
    ytau: Tuple[float, ...]
    tautau: float


@dataclass(frozen=True)
class TestFunction:
    """A smooth function with exact first and second partials.

    value(p) -> float; grad(p) -> (df/dx_1..n, df/dy_1..n, df/dtau);
    hess(p) -> SecondPartials. Beyond support_radius (euclidean), the
    value and all listed derivatives are below 1e-16. Callables must be
    safe for concurrent calls.
    """

    value: Callable[[HeisenbergPoint], float]
    grad: Callable[[HeisenbergPoint], Tuple[float, ...]]
    hess: Callable[[HeisenbergPoint], SecondPartials]
    support_radius: float = 7.0


def apply_sublaplacian(phi: TestFunction, p: HeisenbergPoint) -> float:
    """Apply the sub-Laplacian to phi at p using its exact second
    partials (no finite differencing happens here)."""
    h = phi.hess(p)
    total = 0.0
    for j, zj in enumerate(p.z):
        xj, yj = zj.real, zj.imag
        total += (-0.25 * (h.xx[j] + h.yy[j])
                  - (xj * xj + yj * yj) * h.tautau
                  + xj * h.ytau[j] - yj * h.xtau[j])
    return total


def check_derivatives(phi: TestFunction, points, rel_tol: float = 1e-5,
                      h: float = 1e-4) -> float:
    """Consistency of grad/hess with central differences of value.

    Returns the worst relative deviation over the supplied points;
    raises DomainError when it exceeds rel_tol. Scale-aware: deviations
    are measured relative to max(|derivative|, 1).
    """
    worst = 0.0

    def shifted(p: HeisenbergPoint, j: int, axis: int, d: float):
        z = list(p.z)
        tau = p.tau
        if axis == 0:
            z[j] = z[j] + d
        elif axis == 1:
            z[j] = z[j] + 1j * d
        else:
            tau = tau + d
        return HeisenbergPoint(tuple(z), tau)

    def d1(p, j, axis):
        return (phi.value(shifted(p, j, axis, h))
                - phi.value(shifted(p, j, axis, -h))) / (2 * h)

    def d2(p, j, axis):
        return (phi.value(shifted(p, j, axis, h)) - 2 * phi.value(p)
                + phi.value(shifted(p, j, axis, -h))) / (h * h)

    def dmixed(p, j, aaxis, k, baxis):
        pp = phi.value(shifted(shifted(p, j, aaxis, h), k, baxis, h))
        pm = phi.value(shifted(shifted(p, j, aaxis, h), k, baxis, -h))
        mp = phi.value(shifted(shifted(p, j, aaxis, -h), k, baxis, h))
        mm = phi.value(shifted(shifted(p, j, aaxis, -h), k, baxis, -h))
        return (pp - pm - mp + mm) / (4 * h * h)

    for p in points:
        n = p.n
        g = phi.grad(p)
        hs = phi.hess(p)
        for j in range(n):
            checks = [
                (g[j], d1(p, j, 0)), (g[n + j], d1(p, j, 1)),
                (hs.xx[j], d2(p, j, 0)), (hs.yy[j], d2(p, j, 1)),
                (hs.xy[j], dmixed(p, j, 0, j, 1)),
                (hs.xtau[j], dmixed(p, j, 0, 0, 2)),
                (hs.ytau[j], dmixed(p, j, 1, 0, 2)),
            ]
            for exact, fd in checks:
                worst = max(worst, abs(exact - fd) / max(abs(exact), 1.0))
        checks = [(g[2 * n], d1(p, 0, 2)), (hs.tautau, d2(p, 0, 2))]
        for exact, fd in checks:
            worst = max(worst, abs(exact - fd) / max(abs(exact), 1.0))
    if worst > rel_tol:
        raise DomainError(
            f"derivative fields inconsistent with central differences "
            f"(worst relative deviation {worst:.3e} > {rel_tol:.0e})")
    return worst


# polynomial-times-Gaussian test functions (n = 1), with derivatives
# produced by exact polynomial algebra

_Poly = dict  # {(i, j, k): coeff} for x^i y^j tau^k


def _poly_diff(poly: _Poly, axis: int) -> _Poly:
    out: _Poly = {}
    for (i, j, k), cf in poly.items():
        e = (i, j, k)[axis]
        if e:
            key = (i - 1, j, k) if axis == 0 else \
                  (i, j - 1, k) if axis == 1 else (i, j, k - 1)
            out[key] = out.get(key, 0.0) + cf * e
    return out


def _poly_axpy(out: _Poly, poly: _Poly, mono, scale: float):
    mi, mj, mk = mono
    for (i, j, k), cf in poly.items():
        key = (i + mi, j + mj, k + mk)
        out[key] = out.get(key, 0.0) + cf * scale


def _poly_eval(poly: _Poly, x: float, y: float, tau: float) -> float:
    return sum(cf * x ** i * y ** j * tau ** k
               for (i, j, k), cf in poly.items())


class GaussianTestFunction:
    """P(x, y, tau) * exp(-a(x^2+y^2) - b tau^2) on H^1 with exact
    derivatives; P is given as {(i, j, k): coeff}.

    Satisfies the TestFunction contract via .as_test_function().
    """

    def __init__(self, poly: _Poly, a: float = 1.0, b: float = 1.0,
                 support_radius: float = 7.0):
        if a <= 0 or b <= 0:
            raise DomainError("gaussian exponents must be positive")
        self.a, self.b = float(a), float(b)
        self.poly = {k: float(v) for k, v in poly.items()}
        self.support_radius = float(support_radius)
        d = self._deriv
        self._dx = d(self.poly, 0)
        self._dy = d(self.poly, 1)
        self._dt = d(self.poly, 2)
        self._dxx = d(self._dx, 0)
        self._dyy = d(self._dy, 1)
        self._dxy = d(self._dx, 1)
        self._dxt = d(self._dx, 2)
        self._dyt = d(self._dy, 2)
        self._dtt = d(self._dt, 2)

    def _deriv(self, poly: _Poly, axis: int) -> _Poly:
        # d/dv (P E) = (P_v - 2 c v P) E with c = a (x, y) or b (tau)
        out = _poly_diff(poly, axis)
        coeff = -2.0 * (self.a if axis in (0, 1) else self.b)
        mono = [(1, 0, 0), (0, 1, 0), (0, 0, 1)][axis]
        _poly_axpy(out, poly, mono, coeff)
        return out

    def _gauss(self, x: float, y: float, tau: float) -> float:
        ex = -self.a * (x * x + y * y) - self.b * tau * tau
        return math.exp(ex) if ex > -745.0 else 0.0

    def _ev(self, poly: _Poly, p: HeisenbergPoint) -> float:
        x, y = p.z[0].real, p.z[0].imag
        return _poly_eval(poly, x, y, p.tau) * self._gauss(x, y, p.tau)

    def as_test_function(self) -> TestFunction:
        return TestFunction(
            value=lambda p: self._ev(self.poly, p),
            grad=lambda p: (self._ev(self._dx, p), self._ev(self._dy, p),
                            self._ev(self._dt, p)),
            hess=lambda p: SecondPartials(
                xx=(self._ev(self._dxx, p),),
                yy=(self._ev(self._dyy, p),),
                xy=(self._ev(self._dxy, p),),
                xtau=(self._ev(self._dxt, p),),
                ytau=(self._ev(self._dyt, p),),
                tautau=self._ev(self._dtt, p)),
            support_radius=self.support_radius)


# ----------------------------------------------------------------------
# CLI point literals: z as semicolon-separated "re:im" pairs
# ----------------------------------------------------------------------

def parse_z(text: str) -> Tuple[complex, ...]:
    """Parse a z literal like "1:0;0:1" into complex coordinates."""
    coords = []
    for part in text.split(";"):
        pieces = part.split(":")
        if len(pieces) != 2:
            raise DomainError(f"bad coordinate {part!r}; expected re:im")
        try:
            coords.append(complex(float(pieces[0]), float(pieces[1])))
        except ValueError:
            raise DomainError(f"bad coordinate {part!r}") from None
    if not coords:
        raise DomainError("empty z literal")
    return tuple(coords)


def format_z(z: Sequence[complex]) -> str:
    return ";".join(f"{v.real:.17g}:{v.imag:.17g}" for v in z)
