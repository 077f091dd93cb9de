import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hermite_renyi.special import (
    CertifiedValue, DomainError, airy_ai, airy_ai_array, airy_ai_asymptotic, airy_ai_series, ln_gamma,
)

mpmath.mp.dps = 40


@pytest.mark.parametrize("x, expected", [
    (1.0, 0.0),
    (0.5, math.log(math.sqrt(math.pi))),
    (3.5, math.log(15.0 * math.sqrt(math.pi) / 8.0)),
])
def test_ln_gamma_examples(x, expected):
    r = ln_gamma(x)
    assert abs(r.value - expected) <= 1e-13
    assert abs(r.value - expected) <= r.abs_error_bound


def test_ln_gamma_domain():
    for bad in (0.0, -1.0, -0.5, float("nan"), float("inf")):
        with pytest.raises(DomainError):
            ln_gamma(bad)


@given(st.floats(min_value=0.5, max_value=100.0))
def test_ln_gamma_recursion(x):
    assert abs(ln_gamma(x + 1).value - ln_gamma(x).value - math.log(x)) <= 1e-12


@given(st.floats(min_value=1e-3, max_value=1e6))
@settings(max_examples=200)
def test_ln_gamma_against_mpmath(x):
    ref = float(mpmath.loggamma(x))
    r = ln_gamma(x)
    assert abs(r.value - ref) <= max(r.abs_error_bound, 4e-16 * abs(ref))


@pytest.mark.parametrize("k", range(1, 12))
def test_ln_gamma_half_integers(k):
    # Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!)
    exact = math.log(math.factorial(2 * k)) + 0.5 * math.log(math.pi) - k * math.log(4.0) - math.log(math.factorial(k))
    assert abs(ln_gamma(k + 0.5).value - exact) <= 1e-12


def test_certified_value_validation():
    with pytest.raises(ValueError):
        CertifiedValue(1.0, -1.0)
    assert float(CertifiedValue(2.5, 0.0)) == 2.5


def test_airy_origin():
    ai0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
    assert abs(airy_ai(0.0).value - 0.35502805388781723926) <= 1e-12
    assert abs(airy_ai(0.0).value - ai0) <= 1e-15
    assert airy_ai(-0.0).value == airy_ai(0.0).value


def test_airy_minus_five():
    assert abs(airy_ai(-5.0).value - 0.35076101) <= 5e-9


def test_airy_domain():
    for bad in (1001.0, -1001.0, float("nan")):
        with pytest.raises(DomainError):
            airy_ai(bad)


@given(st.floats(min_value=-9.0, max_value=-7.0) | st.floats(min_value=7.0, max_value=9.0))
def test_branch_overlap(x):
    a = airy_ai_series(x).value
    b = airy_ai_asymptotic(x).value
    env = abs(b) if x > 0 else 1.0 / (math.sqrt(math.pi) * abs(x) ** 0.25)
    assert abs(a - b) <= 1e-9 * env


@given(st.floats(min_value=-200.0, max_value=30.0))
@settings(max_examples=150)
def test_airy_against_mpmath(x):
    ref = float(mpmath.airyai(x))
    r = airy_ai(x)
    env = 1.0 / (math.sqrt(math.pi) * max(abs(x), 1.0) ** 0.25) if x < 0 else max(abs(ref), 1e-300)
    assert abs(r.value - ref) <= 1e-11 * env
    assert abs(r.value - ref) <= r.abs_error_bound + 1e-15 * env


def test_airy_array_matches_scalar():
    xs = np.linspace(-40.0, 20.0, 301)
    arr = airy_ai_array(xs)
    scal = np.array([airy_ai(float(x)).value for x in xs])
    env = np.where(xs < 0, 1.0 / (math.sqrt(math.pi) * np.maximum(np.abs(xs), 1.0) ** 0.25), np.abs(scal))
    assert np.all(np.abs(arr - scal) <= 1e-13 * env + 1e-300)
