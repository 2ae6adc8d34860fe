import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gelfandlab.errors import DomainError
from gelfandlab.specfun import PositiveReal, gamma, gamma_ratio, log_gamma, surface_area


@pytest.mark.parametrize("x, expected", [(1.0, 0.0), (0.5, math.log(math.sqrt(math.pi))), (5.0, math.log(24.0))])
def test_log_gamma_examples(x, expected):
    assert log_gamma(x) == pytest.approx(expected, rel=1e-13, abs=1e-15)


def test_log_gamma_against_mpmath(mp):
    xs = np.concatenate([np.geomspace(1e-3, 1e4, 400), np.linspace(0.9, 2.1, 121)])
    worst = 0.0
    for x in xs:
        ref = mp.log(mp.gamma(mp.mpf(float(x))))
        if abs(ref) < 1e-30:
            continue
        worst = max(worst, abs((log_gamma(float(x)) - float(ref)) / float(ref)))
    assert worst <= 1e-13


def test_log_gamma_near_roots_absolute(mp):
    # ln Gamma vanishes at 1 and 2; absolute accuracy is the meaningful measure there
    for x in (1.0 - 1e-9, 1.0 + 1e-9, 2.0 - 1e-7, 2.0 + 1e-7):
        assert abs(log_gamma(x) - float(mp.loggamma(x))) <= 1e-16 + 1e-13 * abs(float(mp.loggamma(x)))


@pytest.mark.parametrize("a, b, expected", [(5, 4, 4.0), (3, 2, 2.0), (171.5, 170.5, 170.5)])
def test_gamma_ratio_examples(a, b, expected):
    assert gamma_ratio(a, b) == pytest.approx(expected, rel=1e-12)


def test_gamma_ratio_survives_overflow():
    # Gamma(171.5) ~ 9.5e307 still fits in a double; 180.5 does not
    with pytest.raises(OverflowError):
        math.gamma(180.5)
    assert gamma_ratio(180.5, 179.5) == pytest.approx(179.5, rel=1e-12)
    assert math.isfinite(gamma_ratio(171.5, 170.5))


@pytest.mark.parametrize("bad", [0.0, -1.0, -0.5, float("nan")])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        log_gamma(bad)
    with pytest.raises(DomainError):
        gamma_ratio(bad, 1.0)
    with pytest.raises(DomainError):
        gamma_ratio(1.0, bad)


def test_positive_real_rejects_nonpositive():
    assert float(PositiveReal(2.5)) == 2.5
    for bad in (0.0, -3.0):
        with pytest.raises(DomainError):
            PositiveReal(bad)


def test_gamma_matches_math():
    for x in (0.1, 0.5, 1.7, 7.25, 30.0):
        assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-13)


def test_surface_area_low_dimensions():
    assert surface_area(2) == pytest.approx(2 * math.pi, rel=1e-14)
    assert surface_area(3) == pytest.approx(4 * math.pi, rel=1e-14)
    assert surface_area(4) == pytest.approx(2 * math.pi ** 2, rel=1e-14)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.1, max_value=50.0))
def test_recurrence(x):
    assert abs(gamma_ratio(x + 1.0, x) - x) <= 1e-11 * x


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1 - 1e-3))
def test_reflection(x):
    lhs = math.exp(log_gamma(x) + log_gamma(1.0 - x))
    assert lhs == pytest.approx(math.pi / math.sin(math.pi * x), rel=1e-11)


def test_monotone_on_two_to_infinity():
    xs = np.linspace(2.0, 200.0, 2000)
    vals = np.array([log_gamma(x) for x in xs])
    assert np.all(np.diff(vals) > 0)
