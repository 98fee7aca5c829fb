import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heiskern import (DecayHintViolatedError, DomainError,
                      NonFiniteIntegrandError, OverflowRangeError, PoleError,
                      QuadratureConfig, gamma, integrate_adaptive,
                      integrate_semi_infinite)

mp.mp.dps = 30


# ----------------------------------------------------------------------
# gamma
# ----------------------------------------------------------------------

def test_gamma_half():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)


def test_gamma_factorial():
    assert gamma(5) == pytest.approx(24.0, rel=1e-14)


def test_gamma_complex_reference():
    # frozen from a 30-digit oracle
    v = gamma(1 + 1j)
    assert abs(v - (0.49801566811835604 - 0.15494982830181069j)) < 1e-13


def test_gamma_real_axis_against_oracle():
    # Lanczos coefficients validated against mpmath at 200 points
    worst = 0.0
    for i in range(200):
        a = 0.05 + (170.0 - 0.05) * (i / 199.0) ** 2
        exact = float(mp.gamma(a))
        worst = max(worst, abs(gamma(a) - exact) / abs(exact))
    assert worst < 1e-13


def test_gamma_complex_against_oracle():
    worst = 0.0
    for i in range(60):
        re = -40.0 + 80.0 * (i % 8) / 7.0
        im = -45.0 + 90.0 * (i // 8) / 7.0
        a = complex(re, im)
        if abs(a) > 50 or (im == 0 and re <= 0):
            continue
        exact = complex(mp.gamma(mp.mpc(re, im)))
        if exact == 0 or not math.isfinite(abs(exact)):
            continue
        worst = max(worst, abs(gamma(a) - exact) / abs(exact))
    assert worst < 1e-10


def test_gamma_reflection_negative_real():
    assert gamma(-2.5) == pytest.approx(float(mp.gamma(-2.5)), rel=1e-12)


def test_gamma_pole():
    for bad in (0.0, -1.0, -7.0):
        with pytest.raises(PoleError):
            gamma(bad)


def test_gamma_overflow():
    with pytest.raises(OverflowRangeError):
        gamma(500.0)


def test_gamma_real_in_real_out():
    assert isinstance(gamma(3.3), float)
    assert isinstance(gamma(2.0 + 1.0j), complex)


@given(st.floats(min_value=0.1, max_value=50.0))
@settings(max_examples=80, deadline=None)
def test_gamma_recursion_real(a):
    assert abs(gamma(a + 1.0) / (a * gamma(a)) - 1.0) < 1e-12


@given(st.floats(min_value=-14.0, max_value=14.0),
       st.floats(min_value=0.1, max_value=14.0))
@settings(max_examples=60, deadline=None)
def test_gamma_recursion_complex(re, im):
    a = complex(re, im)
    assert abs(gamma(a + 1.0) / (a * gamma(a)) - 1.0) < 1e-12


@pytest.mark.parametrize("xi", [0.5 * k for k in range(1, 21)])
def test_gamma_duplication(xi):
    lhs = gamma(xi) * gamma(xi + 0.5)
    rhs = 2.0 ** (1.0 - 2.0 * xi) * math.sqrt(math.pi) * gamma(2.0 * xi)
    assert lhs == pytest.approx(rhs, rel=1e-12)


# ----------------------------------------------------------------------
# finite-interval engine
# ----------------------------------------------------------------------

def test_adaptive_polynomial():
    r = integrate_adaptive(lambda x: x * x, 0.0, 1.0)
    assert r.converged
    assert r.value.real == pytest.approx(1.0 / 3.0, abs=1e-14)
    assert r.value.imag == 0.0


def test_adaptive_cosine_symmetry():
    r = integrate_adaptive(math.cos, 0.0, math.pi)
    assert r.converged
    assert abs(r.value.real) < 1e-13


def test_adaptive_endpoint_singularity():
    # oracle: substitution u = sqrt(1-x) + high-precision quadrature
    r = integrate_adaptive(lambda x: (math.cos(x) - math.cos(1.0)) ** -0.5,
                           0.0, 1.0)
    assert r.converged
    assert r.value.real == pytest.approx(2.3687991130305955, rel=1e-9)


def test_adaptive_inverse_sqrt_at_zero():
    r = integrate_adaptive(lambda x: x ** -0.5, 0.0, 1.0)
    assert r.converged
    assert r.value.real == pytest.approx(2.0, rel=1e-10)


def test_adaptive_strong_singularity_pre_substitution():
    # x^-0.9 diverges hard enough to trip the upfront probe
    r = integrate_adaptive(lambda x: x ** -0.9, 0.0, 1.0)
    assert r.converged
    assert r.value.real == pytest.approx(10.0, rel=1e-8)


def test_adaptive_error_bound_invariant():
    cfg = QuadratureConfig()
    r = integrate_adaptive(lambda x: math.exp(-x * x), -3.0, 3.0, cfg)
    assert r.converged
    assert r.error_estimate <= max(cfg.abs_tol,
                                   cfg.rel_tol * abs(r.value))


def test_adaptive_budget_exhaustion():
    cfg = QuadratureConfig(abs_tol=1e-300, rel_tol=1e-30, max_subdivisions=8)
    r = integrate_adaptive(lambda x: math.sin(40.0 * x) ** 2, 0.0, 10.0, cfg)
    assert not r.converged
    assert r.evaluations > 0


def test_adaptive_nonfinite_raises():
    with pytest.raises(NonFiniteIntegrandError):
        integrate_adaptive(lambda x: math.nan, 0.0, 1.0)


def test_adaptive_rejects_bad_interval():
    with pytest.raises(DomainError):
        integrate_adaptive(lambda x: x, 1.0, 0.0)


def test_adaptive_complex_integrand():
    r = integrate_adaptive(lambda x: complex(math.cos(x), math.sin(x)),
                           0.0, math.pi / 2)
    assert r.converged
    assert r.value == pytest.approx(complex(1.0, 1.0), abs=1e-12)


@given(st.floats(min_value=-2.0, max_value=2.0),
       st.floats(min_value=-2.0, max_value=2.0))
@settings(max_examples=25, deadline=None)
def test_quadrature_linearity(alpha, beta):
    f = math.cos
    g = lambda x: x * x  # noqa: E731
    rf = integrate_adaptive(f, 0.0, 2.0)
    rg = integrate_adaptive(g, 0.0, 2.0)
    rc = integrate_adaptive(lambda x: alpha * f(x) + beta * g(x), 0.0, 2.0)
    combined = alpha * rf.value + beta * rg.value
    allowed = (abs(alpha) * rf.error_estimate + abs(beta) * rg.error_estimate
               + rc.error_estimate + 1e-14)
    assert abs(rc.value - combined) <= allowed


# ----------------------------------------------------------------------
# semi-infinite engine
# ----------------------------------------------------------------------

def test_semi_infinite_exponential():
    r = integrate_semi_infinite(math.exp.__call__ if False else
                                (lambda x: math.exp(-x)), decay_rate=1.0)
    assert r.converged
    assert r.value.real == pytest.approx(1.0, rel=1e-11)


def test_semi_infinite_damped_cosine():
    cfg = QuadratureConfig(oscillation_period=2 * math.pi)
    r = integrate_semi_infinite(lambda x: math.exp(-x) * math.cos(x),
                                cfg, decay_rate=1.0)
    assert r.converged
    assert r.value.real == pytest.approx(0.5, rel=1e-10)


def test_semi_infinite_vanishing_moment():
    cfg = QuadratureConfig(oscillation_period=2 * math.pi)
    r = integrate_semi_infinite(lambda x: x * math.exp(-x) * math.cos(x),
                                cfg, decay_rate=1.0)
    assert r.converged
    assert abs(r.value.real) < 1e-10


def test_semi_infinite_tail_soundness():
    vals = []
    for eps in (1e-10, 1e-14):
        cfg = QuadratureConfig(tail_epsilon=eps)
        vals.append(integrate_semi_infinite(lambda x: math.exp(-x),
                                            cfg, 1.0).value.real)
    assert abs(vals[0] - vals[1]) < 1e-9


def test_semi_infinite_decay_hint_violation():
    # claims decay 2 but only decays at 0.05: magnitudes blow past the
    # fitted envelope once x grows
    with pytest.raises(DecayHintViolatedError):
        integrate_semi_infinite(
            lambda x: math.exp(-0.05 * x) * (1.0 + 1e6 * (x > 25.0)),
            QuadratureConfig(), decay_rate=2.0)


def test_semi_infinite_singular_origin():
    # x^(-1/2) e^-x = Gamma(1/2) integral
    r = integrate_semi_infinite(lambda x: x ** -0.5 * math.exp(-x),
                                decay_rate=1.0)
    assert r.converged
    assert r.value.real == pytest.approx(math.sqrt(math.pi), rel=1e-8)


def test_semi_infinite_rejects_bad_decay():
    with pytest.raises(DomainError):
        integrate_semi_infinite(lambda x: math.exp(-x), decay_rate=0.0)


# ----------------------------------------------------------------------
# config validation
# ----------------------------------------------------------------------

@pytest.mark.parametrize("kwargs", [
    {"abs_tol": 0.0}, {"rel_tol": -1.0}, {"max_subdivisions": 0},
    {"tail_epsilon": 0.0}, {"oscillation_period": -2.0},
])
def test_config_validation(kwargs):
    with pytest.raises(DomainError):
        QuadratureConfig(**kwargs)
