import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gelfandlab.constants import (ParamPoint, constant_bundle, frac_lap_norm, frac_lap_norm_signed, hardy_constant,
                                  neumann_norm, nonlinear_coefficient, poisson_norm, yang_source_constant)
from gelfandlab.errors import DomainError


def _hardy_mp(mp, n, s):
    return 2 ** (2 * s) * mp.gamma((n + 2 * s) / 4) ** 2 / mp.gamma((n - 2 * s) / 4) ** 2


def _coeff_mp(mp, n, s):
    return 2 ** (2 * s) * mp.gamma(mp.mpf(n) / 2) * mp.gamma(1 + mp.mpf(s)) / mp.gamma((mp.mpf(n) - 2 * s) / 2)


def test_hardy_examples(mp):
    assert hardy_constant(10, 1) == pytest.approx(16.0, rel=1e-13)
    assert hardy_constant(12, 2) == pytest.approx(576.0, rel=1e-13)
    ref = float(8 * (mp.gamma(3.25) / mp.gamma(1.75)) ** 2)
    assert hardy_constant(10, 1.5) == pytest.approx(ref, rel=1e-13)
    assert ref == pytest.approx(61.5, abs=0.1)


def test_coefficient_examples():
    assert nonlinear_coefficient(10, 1) == pytest.approx(16.0, rel=1e-13)
    assert nonlinear_coefficient(12, 2) == pytest.approx(640.0, rel=1e-13)
    assert nonlinear_coefficient(3, 0.5) == pytest.approx(math.pi / 2, rel=1e-13)


def test_param_point_forms_agree():
    p = ParamPoint(10, 1.5)
    assert hardy_constant(p) == hardy_constant(10, 1.5)
    assert nonlinear_coefficient(p) == nonlinear_coefficient(10, 1.5)


@pytest.mark.parametrize("n, s", [(3, 1.5), (2, 1.0), (4, 2.0), (1, 0.6)])
def test_domain_errors(n, s):
    with pytest.raises(DomainError):
        hardy_constant(n, s)
    with pytest.raises(DomainError):
        nonlinear_coefficient(n, s)
    with pytest.raises(DomainError):
        ParamPoint(n, s)


def test_param_point_rejects_bad_order():
    for s in (0.0, -1.0, 2.5):
        with pytest.raises(DomainError):
            ParamPoint(10, s)


def test_bundle_examples():
    assert constant_bundle(3, 1.5).b == 0.0
    assert constant_bundle(2, 0.5).poisson_norm == pytest.approx(1 / (2 * math.pi), rel=1e-13)
    assert constant_bundle(10, 1).neumann_norm == pytest.approx(1.0, rel=1e-14)
    b = constant_bundle(10, 1.5)
    assert b.b == 0.0 and b.t == 0.5
    for k, v in b.as_dict().items():
        assert v is not None and math.isfinite(v) and (v > 0 or k == "b"), k


def test_bundle_marks_out_of_range_entries():
    b = constant_bundle(3, 1.5)
    assert b.hardy is None and b.coeff is None
    assert constant_bundle(12, 2).neumann_norm is None
    assert constant_bundle(10, 1).frac_lap_norm is None


@pytest.mark.parametrize("n", range(5, 17))
def test_order_two_cross_forms(n):
    assert hardy_constant(n, 2) == pytest.approx(n * n * (n - 4) ** 2 / 16.0, rel=1e-12)
    assert nonlinear_coefficient(n, 2) == pytest.approx(8.0 * (n - 2) * (n - 4), rel=1e-12)


def test_against_mpmath_grid(mp):
    for n in (2.5, 3, 5, 7.5, 10, 13, 40, 200):
        for s in (0.1, 0.5, 1.0, 1.25, 1.9, 2.0):
            if n <= 2 * s:
                continue
            assert hardy_constant(n, s) == pytest.approx(float(_hardy_mp(mp, n, s)), rel=1e-12)
            assert nonlinear_coefficient(n, s) == pytest.approx(float(_coeff_mp(mp, n, s)), rel=1e-12)


def test_normalisations_against_mpmath(mp):
    for n in (2, 3, 5, 10):
        for t in (0.25, 0.5, 0.75):
            ref = 2 ** (2 * t) * mp.gamma(n / 2 + t) * t / (mp.pi ** (n / 2) * mp.gamma(1 - t))
            assert frac_lap_norm(n, t) == pytest.approx(float(ref), rel=1e-12)
        for s in (0.5, 1.5):
            ref = mp.gamma(n / 2 + s) / (mp.gamma(s) * mp.pi ** (n / 2))
            assert poisson_norm(n, s) == pytest.approx(float(ref), rel=1e-12)
    for s in (0.5, 1.0, 1.5, 1.9):
        ref = mp.gamma(1 - s / 2) / (2 ** (s - 1) * mp.gamma(s / 2))
        assert neumann_norm(s) == pytest.approx(float(ref), rel=1e-12)


def test_frac_lap_norm_matches_abs_gamma_form(mp):
    # 2^{2t} Gamma(n/2+t) / (pi^{n/2} |Gamma(-t)|)
    for n, t in ((3, 0.5), (10, 0.75)):
        ref = 2 ** (2 * t) * mp.gamma(n / 2 + t) / (mp.pi ** (n / 2) * abs(mp.gamma(-t)))
        assert frac_lap_norm(n, t) == pytest.approx(float(ref), rel=1e-12)


def test_signed_continuation():
    assert frac_lap_norm_signed(10, 1.0) == 0.0
    assert frac_lap_norm_signed(10, 0.5) == pytest.approx(frac_lap_norm(10, 0.5), rel=1e-14)
    for s in (1.1, 1.5, 1.9):
        assert frac_lap_norm_signed(10, s) < 0


def test_yang_source_constant(mp):
    assert yang_source_constant(1.5) == pytest.approx(2.0, rel=1e-14)
    for s in (1.1, 1.7):
        ref = 2 ** (3 - 2 * s) * mp.gamma(2 - s) / mp.gamma(s)
        assert yang_source_constant(s) == pytest.approx(float(ref), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.2, max_value=1.95), st.floats(min_value=0.3, max_value=30.0))
def test_continuity(s, gap):
    n = 2 * s + gap
    h = 1e-7
    for f in (hardy_constant, nonlinear_coefficient):
        v = f(n, s)
        assert abs(f(n + h, s) - v) <= 1e-4 * abs(v)
        assert abs(f(n, s + h) - v) <= 1e-4 * abs(v)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=1.01, max_value=1.99), st.floats(min_value=0.1, max_value=30.0))
def test_composition_identity(s, gap):
    n = 2 * s + gap
    lhs = nonlinear_coefficient(n, s - 1.0) * 2 * s * (n - 2 * s)
    assert lhs == pytest.approx(nonlinear_coefficient(n, s), rel=1e-12)
