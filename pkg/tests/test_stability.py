import math

import numpy as np
import pytest

from gelfandlab.constants import hardy_constant, nonlinear_coefficient
from gelfandlab.critdim import critical_dimension
from gelfandlab.errors import DomainError
from gelfandlab.specfun import surface_area
from gelfandlab.stability import (CutoffFamily, cutoff_integral, cutoff_log_coefficient, f_eps,
                                  homogeneous_comparison, rellich_family_sign, rellich_gap, sphere_nodes)


@pytest.mark.parametrize("eps", [0.2, 0.05, 0.001])
def test_cutoff_plateau_and_support(eps):
    fam = CutoffFamily(eps)
    inside = np.geomspace(eps, 1 / eps, 200)
    assert np.all(fam(inside) == 1.0)
    assert np.all(fam(np.linspace(0, eps / 2, 50)) == 0.0)
    assert np.all(fam(np.geomspace(2 / eps, 1e3 / eps, 50)) == 0.0)
    r = np.geomspace(eps / 4, 4 / eps, 2000)
    v = fam(r)
    assert np.all((v >= 0) & (v <= 1))


def test_cutoff_derivatives_match_finite_differences():
    fam = CutoffFamily(0.1, width=0.7)
    r = np.array([0.06, 0.07, 0.08, 11.0, 13.0, 15.5])
    h = 1e-6
    d1 = (fam(r + h) - fam(r - h)) / (2 * h)
    d2 = (fam(r + h, 1) - fam(r - h, 1)) / (2 * h)
    assert np.allclose(fam(r, 1), d1, rtol=1e-6, atol=1e-6)
    assert np.allclose(fam(r, 2), d2, rtol=1e-5, atol=1e-4)


def test_cutoff_domain():
    for bad in (0.0, 1.0, -0.1):
        with pytest.raises(DomainError):
            CutoffFamily(bad)
    with pytest.raises(DomainError):
        CutoffFamily(0.1, width=0.0)
    with pytest.raises(DomainError):
        cutoff_log_coefficient([0.1, 0.01])
    with pytest.raises(DomainError):
        cutoff_log_coefficient([0.5, 0.1, 0.01])


def test_cutoff_log_coefficient():
    rows, slope = cutoff_log_coefficient([0.1, 0.01, 0.001])
    assert slope == pytest.approx(2.0, abs=0.05)
    assert [e for e, _ in rows] == [0.1, 0.01, 0.001]
    assert cutoff_integral(0.1) - cutoff_integral(0.2) == pytest.approx(2 * math.log(2), rel=0.05)


def test_cutoff_integral_independent_quadrature():
    from scipy import integrate

    fam = CutoffFamily(0.05)
    ref = sum(integrate.quad(lambda r: float(fam(r)) ** 2 / r, a, b, limit=200)[0]
              for a, b in ((0.025, 0.05), (0.05, 20.0), (20.0, 40.0)))
    assert cutoff_integral(0.05) == pytest.approx(ref, rel=1e-9)


def test_f_eps_log_bound():
    v = f_eps(10.0, 0.01)
    assert abs(v) <= 3 * math.log(10)
    # the middle plateaus are shifted by log t
    assert abs(f_eps(1.0, 0.01)) <= 1e-12
    with pytest.raises(DomainError):
        f_eps(0.0, 0.01)


def test_homogeneous_examples():
    assert homogeneous_comparison(13, 1.5).stable_possible
    assert not homogeneous_comparison(10, 1.5).stable_possible
    rep = homogeneous_comparison(10, 1)
    assert rep.lhs_coeff == pytest.approx(rep.rhs_coeff, rel=1e-10)


def test_homogeneous_closed_form_rhs():
    n, s = 11, 1.3
    rep = homogeneous_comparison(n, s, math.log(nonlinear_coefficient(n, s)))
    assert rep.rhs_coeff == pytest.approx(nonlinear_coefficient(n, s) * surface_area(n), rel=1e-13)
    assert rep.lhs_coeff == pytest.approx(hardy_constant(n, s) * surface_area(n), rel=1e-13)


def test_homogeneous_sampled_tau():
    n, s = 12, 1.5
    c, w = sphere_nodes(n, 24)
    assert w.sum() == pytest.approx(surface_area(n), rel=1e-13)
    lna = math.log(nonlinear_coefficient(n, s))
    ref = homogeneous_comparison(n, s)
    assert homogeneous_comparison(n, s, lambda x: lna + 0 * x, m=24).rhs_coeff == pytest.approx(ref.rhs_coeff,
                                                                                                 rel=1e-12)
    assert homogeneous_comparison(n, s, np.full(24, lna), m=24).rhs_coeff == pytest.approx(ref.rhs_coeff, rel=1e-12)
    # zonal polynomial: int_{S^{n-1}} c^2 = |S^{n-1}| / n
    rep = homogeneous_comparison(n, s, lambda x: np.log(x * x), m=24)
    assert rep.rhs_coeff == pytest.approx(surface_area(n) / n, rel=1e-12)
    with pytest.raises(DomainError):
        homogeneous_comparison(n, s, np.zeros(5), m=24)


def test_homogeneous_verdict_matches_critical_dimension():
    for s in np.linspace(1.0, 2.0, 5):
        n0 = critical_dimension(s).root
        for n in np.linspace(2 * s + 0.5, 16.0, 10):
            if abs(n - n0) < 1e-6:
                continue
            assert homogeneous_comparison(n, s).stable_possible == (n >= n0)


@pytest.mark.parametrize("n", range(5, 21))
def test_rellich_sign(n):
    res = rellich_family_sign(n)
    assert res.sign == np.sign(rellich_gap(n))
    assert (res.sign < 0) == (n <= 12)


def test_rellich_examples():
    assert rellich_gap(12) == -64.0
    assert rellich_gap(13) == pytest.approx(63.5625, abs=1e-12)
    assert rellich_gap(5) < 0
    assert rellich_family_sign(12).coefficient == pytest.approx(-64.0, rel=1e-6)
    assert rellich_family_sign(13).coefficient == pytest.approx(63.5625, rel=1e-6)


@pytest.mark.parametrize("n", [6, 12, 13, 16])
def test_rellich_invariant_under_width(n):
    a = rellich_family_sign(n, width=1.0).coefficient
    b = rellich_family_sign(n, width=0.5).coefficient
    assert b == pytest.approx(a, rel=2e-2)


def test_rellich_domain():
    with pytest.raises(DomainError):
        rellich_family_sign(4)
    with pytest.raises(DomainError):
        rellich_family_sign(7.5)
