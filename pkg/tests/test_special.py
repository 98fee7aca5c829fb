import math

import mpmath as mp
import numpy as np
import pytest

from heiskern import (DomainError, PoleError, PsiEvalMode, gamma,
                      gamma_psi_product, gauss_2f1, kummer_m, legendre_p,
                      tricomi_psi)

mp.mp.dps = 30


# ----------------------------------------------------------------------
# 1F1
# ----------------------------------------------------------------------

def test_kummer_empty_sum():
    assert kummer_m(3.0, 5.0, 0.0) == 1.0 + 0.0j


def test_kummer_expm1_identity():
    # 1F1(1, 2; x) = (e^x - 1)/x
    assert kummer_m(1.0, 2.0, 1.0).real == pytest.approx(math.expm1(1.0),
                                                         rel=1e-13)


@pytest.mark.parametrize("a", [0.5, 1.0, 2.5])
@pytest.mark.parametrize("x", [0.0, 0.5, 3.0, 11.0, 20.0])
def test_kummer_exponential_identity(a, x):
    # 1F1(a, a; x) = e^x
    assert kummer_m(a, a, x).real == pytest.approx(math.exp(x), rel=1e-12)


def test_kummer_against_oracle():
    for a, c, x in [(0.3, 1.7, 5.0), (4.0, 9.5, 30.0), (2.0, 0.5, 12.0),
                    (-2.6, 3.3, 8.0)]:
        ref = complex(mp.hyp1f1(a, c, x))
        assert abs(kummer_m(a, c, x) - ref) <= 1e-12 * abs(ref)


def test_kummer_complex_parameters():
    a, c, x = 1 + 2j, 3 + 0.5j, 4.0
    ref = complex(mp.hyp1f1(mp.mpc(1, 2), mp.mpc(3, 0.5), 4))
    assert abs(kummer_m(a, c, x) - ref) <= 1e-11 * abs(ref)


def test_kummer_pole_and_domain():
    with pytest.raises(PoleError):
        kummer_m(1.0, -2.0, 1.0)
    with pytest.raises(DomainError):
        kummer_m(1.0, 2.0, 701.0)


# ----------------------------------------------------------------------
# 2F1
# ----------------------------------------------------------------------

def test_2f1_at_zero():
    assert gauss_2f1(2.2, 3.3, 4.4, 0.0) == 1.0


def test_2f1_log_identity():
    # 2F1(1, 1; 2; x) = -ln(1-x)/x
    assert gauss_2f1(1.0, 1.0, 2.0, 0.5) == pytest.approx(
        -math.log(0.5) / 0.5, rel=1e-13)


def test_2f1_terminating():
    assert gauss_2f1(-1.0, 2.0, 1.0, 0.25) == pytest.approx(0.5, abs=1e-15)
    # terminating series may run past |x| = 1
    assert gauss_2f1(-2.0, 1.5, 2.0, 3.0) == pytest.approx(
        float(mp.hyp2f1(-2, 1.5, 2, 3)), rel=1e-13)


def test_2f1_accuracy_window():
    for a, b, c, x in [(0.7, 1.3, 2.9, 0.75), (2.0, 2.0, 3.5, -0.75),
                       (0.2, 4.1, 1.1, 0.6)]:
        assert gauss_2f1(a, b, c, x) == pytest.approx(
            float(mp.hyp2f1(a, b, c, x)), rel=1e-12)


def test_2f1_domain_errors():
    with pytest.raises(DomainError):
        gauss_2f1(1.0, 2.0, 3.0, 1.0)
    with pytest.raises(PoleError):
        gauss_2f1(1.0, 2.0, -3.0, 0.5)


# ----------------------------------------------------------------------
# gamma-psi product integral
# ----------------------------------------------------------------------

def test_gamma_psi_inverse_argument():
    # Psi(a, a+1; u) = u^-a  =>  G(1) Psi(1, 2; u) = 1/u
    assert gamma_psi_product(1.0, 2.0, 2.0).real == pytest.approx(0.5,
                                                                  rel=1e-10)


def test_gamma_psi_exponential_integral_value():
    # equals e * E1(1); frozen from a 30-digit oracle
    v = gamma_psi_product(1.0, 1.0, 1.0)
    assert v.real == pytest.approx(0.59634736232319407, rel=1e-11)
    assert v.imag == 0.0


def test_gamma_psi_complex_parameter():
    # frozen from a 30-digit oracle; exercises the complex-a path the
    # resolvent needs
    v = gamma_psi_product(1 + 2j, 3.0, 1.0)
    ref = 0.38943585958095487 - 1.1784397146205288j
    assert abs(v - ref) <= 1e-10 * abs(ref)
    assert abs(v.imag) > 0


def test_gamma_psi_preconditions():
    with pytest.raises(DomainError):
        gamma_psi_product(-1.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        gamma_psi_product(1.0, 2.0, 0.0)


def test_gamma_psi_against_oracle_grid():
    for a, c, u in [(0.5, 1.0, 2.0), (1.5, 3.0, 0.7), (2.5, 2.0, 9.0),
                    (0.8, 4.0, 0.3)]:
        ref = complex(mp.gamma(a) * mp.hyperu(a, c, u))
        got = gamma_psi_product(a, c, u)
        assert abs(got - ref) <= 1e-10 * abs(ref)


# ----------------------------------------------------------------------
# tricomi psi
# ----------------------------------------------------------------------

def test_psi_auto_integer_c():
    assert tricomi_psi(1.0, 2.0, 2.0).real == pytest.approx(0.5, rel=1e-10)


def test_psi_series_non_integer_c():
    # Psi(a, a+1; u) = u^-a through the two-series path
    v = tricomi_psi(0.5, 1.5, 4.0, PsiEvalMode.SERIES_COMBINATION)
    assert v.real == pytest.approx(0.5, rel=1e-12)


def test_psi_internal_consistency():
    direct = tricomi_psi(0.5, 1.0, 1.0)
    via_product = gamma_psi_product(0.5, 1.0, 1.0) / gamma(0.5)
    assert abs(direct - via_product) <= 1e-10 * abs(direct)


def test_psi_series_rejects_near_integer_c():
    with pytest.raises(PoleError):
        tricomi_psi(1.0, 2.0 + 1e-8, 1.0, PsiEvalMode.SERIES_COMBINATION)


def test_psi_integral_needs_positive_real_part():
    with pytest.raises(DomainError):
        tricomi_psi(-0.5, 2.0, 1.0, PsiEvalMode.INTEGRAL_REPRESENTATION)


def test_psi_dual_path_agreement():
    # series vs integral representation, 200 seeded draws off integer c
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(200):
        a = rng.uniform(0.3, 5.0)
        c = rng.uniform(0.5, 6.0)
        if abs(c - round(c)) < 1e-3:
            continue
        u = rng.uniform(0.1, 20.0)
        s = tricomi_psi(a, c, u, PsiEvalMode.SERIES_COMBINATION)
        q = tricomi_psi(a, c, u, PsiEvalMode.INTEGRAL_REPRESENTATION)
        worst = max(worst, abs(s - q) / abs(q))
    assert worst < 1e-8


@pytest.mark.parametrize("sign", [1.0, -1.0])
def test_psi_integer_c_limit(sign):
    # series values at c = n +- 10^-k approach the integral value at c=n
    a, n, u = 1.3, 2.0, 3.0
    ref = tricomi_psi(a, n, u, PsiEvalMode.INTEGRAL_REPRESENTATION)
    gaps = []
    for k in range(2, 6):
        c = n + sign * 10.0 ** -k
        s = tricomi_psi(a, c, u, PsiEvalMode.SERIES_COMBINATION)
        gaps.append(abs(s - ref))
    assert all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))
    assert gaps[-1] <= 1e-6


@pytest.mark.parametrize("u,tol", [(1e3, 0.05), (1e4, 0.005)])
def test_psi_large_argument_asymptote(u, tol):
    # u^a Psi(a, c; u) -> 1 as u -> infinity
    a, c = 0.8, 1.3
    v = tricomi_psi(a, c, u, PsiEvalMode.INTEGRAL_REPRESENTATION)
    assert abs(u ** a * v.real - 1.0) < tol


# ----------------------------------------------------------------------
# legendre function
# ----------------------------------------------------------------------

def test_legendre_degree_zero():
    assert legendre_p(0.0, 0.0, 0.3) == pytest.approx(1.0, abs=1e-15)


def test_legendre_linear():
    assert legendre_p(1.0, 0.0, 0.5) == pytest.approx(0.5, abs=1e-14)


def test_legendre_half_order_value():
    # P_{1/2}^{-1/2}(0) = sqrt(2/pi)
    assert legendre_p(0.5, -0.5, 0.0) == pytest.approx(
        math.sqrt(2.0 / math.pi), rel=1e-13)


def test_legendre_against_oracle():
    for lam, nu, x in [(1.7, -1.3, 0.4), (0.3, -0.1, -0.5), (2.5, -2.0, 0.8),
                       (1.0, 0.0, 0.9)]:
        ref = float(mp.legenp(lam, nu, x, type=2))
        assert legendre_p(lam, nu, x) == pytest.approx(ref, rel=1e-11)


@pytest.mark.parametrize("sigma", [0.5, 1.0, 1.5, 2.0, 2.5])
@pytest.mark.parametrize("eps", [0.3, math.pi / 2, 2.5])
def test_legendre_gegenbauer_consistency(sigma, eps):
    lhs = legendre_p(sigma, -sigma, math.cos(eps))
    rhs = (0.5 * math.sin(eps)) ** sigma / gamma(1.0 + sigma)
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_legendre_domain_errors():
    with pytest.raises(DomainError):
        legendre_p(1.0, -1.0, 1.0)
    with pytest.raises(PoleError):
        legendre_p(1.0, 2.0, 0.5)
