import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from kgpt.errors import DomainError, ParameterError, PoleError
from kgpt.special_functions import (
    KINDS,
    cosh_q,
    deformed_hyperbolic,
    deformed_hyperbolic_complex,
    gauss_2f1_terminating,
    gegenbauer,
    log_gamma,
    sech_q,
    sinh_q,
    tanh_q,
)

xs = st.floats(-10, 10)
qs = st.floats(1e-6, 10)


@pytest.mark.parametrize("kind, x, q, expected", [
    ("sinh", 0.0, 1.0, 0.0),
    ("cosh", 0.0, 3.0, 2.0),
    ("sinh", math.log(2), 2.0, 0.5),
])
def test_deformed_examples(kind, x, q, expected):
    assert deformed_hyperbolic(kind, x, q) == pytest.approx(expected, abs=1e-15)


def test_complex_examples():
    assert deformed_hyperbolic_complex("cosh", 0.0, 1j) == pytest.approx((1 + 1j) / 2)
    assert deformed_hyperbolic_complex("sinh", 0.0, -1) == pytest.approx(1.0)
    with pytest.raises(PoleError):
        deformed_hyperbolic_complex("csch", 1.0, math.e**2)


def test_real_pole_and_domain():
    with pytest.raises(PoleError):
        deformed_hyperbolic("coth", math.log(4.0) / 2, 4.0)
    with pytest.raises(PoleError):
        deformed_hyperbolic("csch", np.array([0.0, 1.0]), 1.0)
    with pytest.raises(DomainError):
        deformed_hyperbolic("cosh", 0.0, 0.0)
    with pytest.raises(DomainError):
        deformed_hyperbolic("cosh", 0.0, -1.0)
    with pytest.raises(DomainError):
        deformed_hyperbolic_complex("cosh", 0.0, 0)
    with pytest.raises(ValueError):
        deformed_hyperbolic("sin", 0.0, 1.0)


@pytest.mark.parametrize("kind", KINDS)
def test_matches_definition_moderate_x(kind):
    x = np.linspace(-5, 5, 41) + 0.013
    q = 2.7
    s = 0.5 * (np.exp(x) - q * np.exp(-x))
    c = 0.5 * (np.exp(x) + q * np.exp(-x))
    expected = {"sinh": s, "cosh": c, "tanh": s / c, "coth": c / s, "sech": 1 / c, "csch": 1 / s}[kind]
    np.testing.assert_allclose(deformed_hyperbolic(kind, x, q), expected, rtol=1e-13)


def test_no_overflow_for_large_arguments():
    x = np.array([-800.0, -400.0, 400.0, 800.0])
    assert np.all(np.isfinite(tanh_q(x, 3.0)))
    assert np.all(np.isfinite(sech_q(x, 3.0)))
    np.testing.assert_allclose(tanh_q(x, 3.0), [-1, -1, 1, 1])
    # sech_q(400) = 2 e^-400 / (1 + q e^-800)
    assert sech_q(400.0, 3.0) == pytest.approx(2 * math.exp(-400.0), rel=1e-14)
    assert sech_q(-400.0, 3.0) == pytest.approx(2 * math.exp(-400.0) / 3.0, rel=1e-14)


@settings(max_examples=300, deadline=None)
@given(xs, qs)
def test_pythagorean_identity(x, q):
    # tolerance scaled by cosh_q^2 (the cancellation is relative to that)
    c, s = cosh_q(x, q), sinh_q(x, q)
    assert abs(c * c - s * s - q) <= 1e-12 * max(1.0, c * c)


@settings(max_examples=300, deadline=None)
@given(xs, qs)
def test_shift_identity(x, q):
    expected = math.sqrt(q) * math.cosh(x - 0.5 * math.log(q))
    assert cosh_q(x, q) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("q", [0.3, 1.0, 4.0])
@pytest.mark.parametrize("x", [-1.3, 0.2, 2.1])
def test_derivative_identities_second_order(x, q):
    def central(f, h):
        return (f(x + h) - f(x - h)) / (2 * h)

    cases = [
        (lambda t: tanh_q(t, q), q * sech_q(x, q) ** 2),
        (lambda t: cosh_q(t, q), sinh_q(x, q)),
        (lambda t: sinh_q(t, q), cosh_q(x, q)),
    ]
    if abs(x - 0.5 * math.log(q)) > 0.5:
        cases.append((lambda t: deformed_hyperbolic("coth", t, q),
                      -q / sinh_q(x, q) ** 2))
    for f, exact in cases:
        e1 = abs(central(f, 1e-2) - exact)
        e2 = abs(central(f, 5e-3) - exact)
        assert e2 < e1
        assert e1 / e2 == pytest.approx(4.0, rel=0.05)


# Gegenbauer --------------------------------------------------------------

def test_gegenbauer_examples():
    assert gegenbauer(0, 0.9, 0.3) == 1.0
    assert gegenbauer(1, 0.75, 0.4) == pytest.approx(0.6)
    # lambda = 1 is Chebyshev U: U_2(x) = 4x^2 - 1
    assert gegenbauer(2, 1.0, 0.5) == pytest.approx(4 * 0.25 - 1, abs=1e-15)


@pytest.mark.parametrize("n", range(0, 9))
@pytest.mark.parametrize("lam", [0.6, 1.3, 3.7])
def test_gegenbauer_matches_scipy(n, lam):
    x = np.linspace(-1, 1, 17)
    np.testing.assert_allclose(gegenbauer(n, lam, x), special.eval_gegenbauer(n, lam, x),
                               rtol=1e-11, atol=1e-12)


def test_gegenbauer_accepts_mpmath_and_complex():
    with mpmath.workdps(30):
        v = gegenbauer(3, mpmath.mpf("1.25"), mpmath.mpf("0.3"))
        assert abs(v - mpmath.gegenbauer(3, mpmath.mpf("1.25"), mpmath.mpf("0.3"))) < 1e-25
    z = 0.3 + 0.2j
    assert gegenbauer(2, 1.5, z) == pytest.approx(complex(mpmath.gegenbauer(2, 1.5, z)))


def test_gegenbauer_rejects_negative_degree():
    with pytest.raises(ParameterError):
        gegenbauer(-1, 1.0, 0.0)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 12), st.floats(0.51, 5), st.floats(-0.99, 0.99))
def test_gegenbauer_parity(n, lam, x):
    a, b = gegenbauer(n, lam, -x), (-1) ** n * gegenbauer(n, lam, x)
    assert abs(a - b) <= 1e-12 * max(abs(a), abs(b), 1e-300) + 1e-300


# Terminating 2F1 ---------------------------------------------------------

def test_2f1_examples():
    assert gauss_2f1_terminating(0, 5, 2, 0.7) == 1.0
    assert gauss_2f1_terminating(1, 3, 1.5, 0.5) == pytest.approx(0.0, abs=1e-15)
    # hand sum: 1 - 8/2.5 * 1/4 + 40/(2.5*3.5) * (1/16)/2 = 12/35
    assert gauss_2f1_terminating(2, 4, 2.5, 0.25) == pytest.approx(12 / 35, rel=1e-14)
    # identity partner of C_2^1(0.5) = 0 has c = lambda + 1/2 = 1.5
    assert gauss_2f1_terminating(2, 4, 1.5, 0.25) == pytest.approx(0.0, abs=1e-15)


def test_2f1_pochhammer_guard():
    with pytest.raises(ParameterError):
        gauss_2f1_terminating(3, 1.0, -1.0, 0.3)
    # c = -3 with n = 3 never divides by zero
    assert math.isfinite(gauss_2f1_terminating(3, 1.0, -3.0, 0.3))


@pytest.mark.parametrize("n, b, c, z", [(3, 2.5, 1.7, 0.4), (5, -1.2, 3.3, 0.9), (7, 4.0, 0.6, -0.8)])
def test_2f1_matches_mpmath(n, b, c, z):
    assert gauss_2f1_terminating(n, b, c, z) == pytest.approx(float(mpmath.hyp2f1(-n, b, c, z)), rel=1e-12)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10), st.floats(0.6, 5), st.floats(-0.999, 0.999))
def test_gegenbauer_hypergeometric_identity(n, lam, x):
    lhs = gegenbauer(n, lam, x) * math.exp(log_gamma(n + 1) + log_gamma(2 * lam) - log_gamma(2 * lam + n))
    rhs = gauss_2f1_terminating(n, n + 2 * lam, lam + 0.5, (1 - x) / 2)
    assert abs(lhs - rhs) <= 1e-10 * max(abs(rhs), 1e-3)


# log-gamma ---------------------------------------------------------------

def test_log_gamma_examples():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-15)
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)


def test_log_gamma_relative_accuracy():
    with mpmath.workdps(40):
        xs_ = np.concatenate([np.linspace(0.5, 100, 4001), [0.999999, 1.0000001, 1.9999999, 2.00001]])
        for x in xs_:
            exact = float(mpmath.loggamma(mpmath.mpf(float(x))))
            assert abs(log_gamma(x) - exact) <= 1e-13 * abs(exact), x


def test_log_gamma_below_half_and_domain():
    assert log_gamma(0.1) == pytest.approx(math.lgamma(0.1), rel=1e-14)
    for bad in (0.0, -1.0, math.inf):
        with pytest.raises(DomainError):
            log_gamma(bad)


@pytest.mark.parametrize("n", [0, 1, 3])
@pytest.mark.parametrize("nu", [0.8, 1.5, 2.6])
def test_weighted_gegenbauer_norm_integral(n, nu):
    # int (1-x^2)^(nu-3/2) [C_n^nu]^2 dx = sqrt(pi) G(nu-1/2) G(2nu+n) / (n! G(nu) G(2nu))
    value, _ = integrate.quad(lambda x: gegenbauer(n, nu, x) ** 2, -1, 1,
                              weight="alg", wvar=(nu - 1.5, nu - 1.5), epsabs=1e-14, epsrel=1e-13)
    closed = math.exp(0.5 * math.log(math.pi) + log_gamma(nu - 0.5) + log_gamma(2 * nu + n)
                      - log_gamma(n + 1) - log_gamma(nu) - log_gamma(2 * nu))
    assert value == pytest.approx(closed, rel=1e-11)
