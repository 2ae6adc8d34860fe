import math
import random

import numpy as np
import pytest

from gelfandlab.constants import hardy_constant, nonlinear_coefficient
from gelfandlab.critdim import critical_curve, critical_dimension, fourth_order_threshold, g_value, quartic
from gelfandlab.errors import DomainError


def _g_mp(mp, x, s):
    x, s = mp.mpf(x), mp.mpf(s)
    f = mp.gamma((x + 2 * s) / 4) ** 2 / mp.gamma((x - 2 * s) / 4) ** 2 * mp.gamma((x - 2 * s) / 2) / mp.gamma(x / 2)
    return f - mp.gamma(1 + s)


def test_g_examples(mp):
    assert abs(g_value(10, 1)) <= 1e-13
    assert g_value(12, 2) == pytest.approx(-0.2, rel=1e-12)
    assert g_value(3 + 1e-6, 1.5) == pytest.approx(-math.gamma(2.5), rel=1e-5)
    for x, s in ((11.3, 1.5), (20, 1.2), (6, 2), (40, 1.9)):
        assert g_value(x, s) == pytest.approx(float(_g_mp(mp, x, s)), rel=1e-11, abs=1e-13)


def test_g_domain():
    with pytest.raises(DomainError):
        g_value(3.0, 1.5)
    with pytest.raises(DomainError):
        g_value(10.0, 2.5)


def test_critical_dimension_examples():
    r1 = critical_dimension(1.0)
    assert r1.root == pytest.approx(10.0, abs=1e-6)
    r2 = critical_dimension(2.0)
    assert abs(r2.root - 12.565) <= 5e-3
    r = critical_dimension(1.5)
    assert 10.0 < r.root < 12.57
    for res in (r1, r2, r):
        a, b = res.bracket
        assert a <= res.root <= b
        assert abs(res.residual) <= 1e-10


def test_critical_dimension_against_mp_root(mp):
    for s in (1.25, 1.5, 1.75):
        ref = mp.findroot(lambda x: _g_mp(mp, x, s), critical_dimension(s).root)
        assert critical_dimension(s).root == pytest.approx(float(ref), abs=1e-10)


@pytest.mark.parametrize("s", [0.5, 0.99, 2.01, -1.0])
def test_critical_dimension_domain(s):
    with pytest.raises(DomainError, match=r"\[1, 2\]"):
        critical_dimension(s)


def test_quartic_threshold():
    r = fourth_order_threshold()
    assert r.root == pytest.approx(12.5653, abs=1e-4)
    assert abs(quartic(r.root)) <= 1e-10
    assert quartic(12.5) == pytest.approx(-15.875, abs=1e-12)
    assert quartic(12.6) > 0
    # n^2 (n-4) - 128 (n-2) in factored form
    for x in (5.0, 12.0, 20.0):
        assert quartic(x) == pytest.approx(x * x * (x - 4) - 128 * (x - 2), rel=1e-14)
    assert critical_dimension(2.0).root == pytest.approx(r.root, abs=1e-6)
    assert r.root == pytest.approx(float(np.max(np.roots([1, -4, -128, 256]).real)), abs=1e-12)


def test_critical_curve_examples():
    rows = critical_curve(1, 2, 2)
    assert rows[0][0] == 1.0 and rows[0][1] == pytest.approx(10.0, abs=1e-9)
    assert rows[1][0] == 2.0 and rows[1][1] == pytest.approx(12.565, abs=5e-3)
    rows = critical_curve(1, 2, 11)
    assert len(rows) == 11 and all(10.0 - 1e-9 <= r[1] <= 12.57 for r in rows)
    rows = critical_curve(1.0, 1.0 + 1e-9, 2)
    assert rows[0][1] == pytest.approx(rows[1][1], abs=1e-6)


def test_critical_curve_monotone():
    n0 = [r[1] for r in critical_curve(1, 2, 21)]
    assert np.all(np.diff(n0) > 0)


@pytest.mark.parametrize("args", [(0.5, 2, 5), (1.5, 1.2, 5), (1, 2, 1), (1, 2.5, 3)])
def test_critical_curve_domain(args):
    with pytest.raises(DomainError):
        critical_curve(*args)


@pytest.mark.parametrize("s", [1.0, 1.3, 1.6, 2.0])
def test_sign_pattern_around_root(s):
    n0 = critical_dimension(s).root
    for x in np.linspace(2 * s, n0, 52)[1:-1]:
        assert g_value(x, s) < 0
    for x in np.linspace(n0, n0 + 2, 51)[1:]:
        assert g_value(x, s) > 0


def test_sign_matches_constant_comparison():
    rng = random.Random(7)
    for _ in range(100):
        s = rng.uniform(0.2, 2.0)
        n = 2 * s + rng.uniform(0.05, 30.0)
        g = g_value(n, s)
        d = hardy_constant(n, s) - nonlinear_coefficient(n, s)
        if abs(d) > 1e-9 * nonlinear_coefficient(n, s):
            assert np.sign(g) == np.sign(d)
