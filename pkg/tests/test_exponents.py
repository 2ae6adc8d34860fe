import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gelfandlab.critdim import critical_dimension
from gelfandlab.errors import DomainError, UnreachableTargetError
from gelfandlab.exponents import (alpha_bar, bootstrap_ladder, delta_gap, ladder_parameters, moser_cubic,
                                  moser_cubic_roots)


def test_cubic_roots(mp):
    r = moser_cubic_roots()
    assert abs(r.alpha_sharp - 0.517304) <= 1e-5
    assert abs(r.alpha_star - 2.53407) <= 1e-5
    assert r.alpha_neg == pytest.approx(-3.05138, abs=1e-5)
    assert r.alpha_neg < 0 < r.alpha_sharp < r.alpha_star
    assert abs(r.alpha_neg + r.alpha_sharp + r.alpha_star) <= 1e-12
    for x in (r.alpha_neg, r.alpha_sharp, r.alpha_star):
        assert abs(moser_cubic(x)) <= 1e-12
    ref = sorted(float(z.real) for z in mp.polyroots([1, 0, -8, 4]))
    assert [r.alpha_neg, r.alpha_sharp, r.alpha_star] == pytest.approx(ref, abs=1e-13)


def test_delta_examples():
    r = moser_cubic_roots()
    assert delta_gap(1.0) == pytest.approx(1.0, rel=1e-15)
    assert delta_gap(2.0) == pytest.approx(math.sqrt(1.5) - 1.0, rel=1e-14)
    assert abs(delta_gap(r.alpha_star)) <= 1e-9
    assert abs(delta_gap(r.alpha_sharp)) <= 1e-9
    for a in np.linspace(r.alpha_sharp, r.alpha_star, 52)[1:-1]:
        assert delta_gap(a) > 0
    with pytest.raises(DomainError):
        delta_gap(0.5)


def test_alpha_bar_examples():
    assert alpha_bar(10, 1.5) == pytest.approx(3.03407, abs=1e-5)
    assert alpha_bar(12, 2, "local") == pytest.approx(3.040884, abs=1e-5)
    assert alpha_bar(5, 2, "local") == pytest.approx(25 / 12, abs=1e-12)


def test_alpha_bar_domain():
    with pytest.raises(DomainError):
        alpha_bar(3, 1.5)
    with pytest.raises(DomainError):
        alpha_bar(10, 2.0)
    with pytest.raises(DomainError):
        alpha_bar(4, 2, "local")
    with pytest.raises(DomainError):
        ladder_parameters(10, 1.5, "other")


def test_ladder_examples():
    tr = bootstrap_ladder(10, 1, 2.4)
    assert tr.reached >= 2.4 and len(tr.steps) - 1 <= 5
    tr = bootstrap_ladder(12, 2, 3.04, "local")
    assert tr.steps[-1].rule == "dimension-factor"
    assert tr.steps[-1].source <= moser_cubic_roots().alpha_star
    with pytest.raises(UnreachableTargetError, match="target exceeds alpha_bar=3.03407"):
        bootstrap_ladder(10, 1.5, 3.5)


def test_ladder_trace_structure():
    tr = bootstrap_ladder(10, 1.5, 3.0)
    ex = tr.exponents()
    assert tr.steps[0].rule == "start"
    assert all(b > a for a, b in zip(ex, ex[1:]))
    for st_ in tr.steps[1:]:
        assert st_.source < tr.cap
        assert st_.rule in ("plus-half", "dimension-factor")
    r = moser_cubic_roots()
    assert r.alpha_sharp < ex[0] < min(10 / (20 - 3), 1.0)


@settings(max_examples=150, deadline=None)
@given(st.floats(min_value=1.0, max_value=1.99), st.floats(min_value=0.05, max_value=40.0),
       st.floats(min_value=0.0, max_value=1.0))
def test_ladder_reaches_every_admissible_target(s, gap, frac):
    n = 2 * s + gap
    factor, cap, start_hi = ladder_parameters(n, s)
    if not moser_cubic_roots().alpha_sharp < start_hi:
        with pytest.raises(DomainError):
            bootstrap_ladder(n, s, 1.0)
        return
    ab = alpha_bar(n, s)
    target = 0.6 + frac * (ab - 0.6) * 0.999
    tr = bootstrap_ladder(n, s, target)
    ex = tr.exponents()
    assert all(b > a for a, b in zip(ex, ex[1:]))
    assert tr.reached >= target and tr.reached < ab + 0.5
    with pytest.raises(UnreachableTargetError):
        bootstrap_ladder(n, s, ab)


def test_start_condition_holds_in_window():
    a_sharp = moser_cubic_roots().alpha_sharp
    for s in np.linspace(1.0, 1.99, 20):
        n0 = critical_dimension(s).root
        for n in np.linspace(2 * s, n0, 22)[1:-1]:
            assert n / (n - s) > 2 * a_sharp
