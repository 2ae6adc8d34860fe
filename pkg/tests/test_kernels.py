import math
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from gelfandlab import kernels as k

X, W = k.gauss_legendre01(16)


@settings(max_examples=30, deadline=None)
@given(rho=st.floats(0.1, 3.0), r=st.floats(0.1, 3.0), n=st.integers(3, 12), t=st.floats(0.1, 0.9))
def test_angular_shell_backends_agree(rho, r, n, t):
    tm = 0.05
    a = k._angular_shell_nb(rho, r, float(n), t, tm, X, W)
    b = k._angular_shell_np(rho, r, float(n), t, tm, X, W)
    assert a == pytest.approx(b, rel=1e-12)


def test_angular_shell_against_quad():
    rho, r, n, t, tm = 1.0, 1.3, 6.0, 0.5, 0.1
    f = lambda th: math.sin(th) ** (n - 2) * (r * r + rho * rho - 2 * r * rho * math.cos(th)) ** (-(n + 2 * t) / 2)  # noqa: E731
    ref, _ = integrate.quad(f, tm, math.pi, epsabs=0, epsrel=1e-13)
    assert k.angular_shell(rho, r, n, t, tm, X, W) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("n,s", [(5, 0.5), (10, 1.5), (7, 1.9)])
def test_fall_keven_backends_agree(n, s):
    etas = np.linspace(-3, 3, 25) + 1e-3
    sn2 = 1.0
    a = k._fall_keven_nb(etas, float(n), s, sn2, X, W)
    b = k._fall_keven_np(etas, float(n), s, sn2, X, W)
    assert np.allclose(a, b, rtol=1e-11)
    assert np.allclose(a, k._fall_keven_np(-etas, float(n), s, sn2, X, W), rtol=1e-11)


def test_extension_sums_backends_agree():
    rng = np.random.default_rng(3)
    Q = np.sort(rng.uniform(0.01, 5, size=(4, 30)), axis=1)
    Wt = rng.uniform(0, 0.2, size=Q.shape)
    M = rng.normal(size=Q.shape)
    Mr = rng.normal(size=Q.shape)
    ref = rng.normal(size=4)
    ys = np.geomspace(1e-3, 3, 7)
    a = k._extension_sums_nb(Q, Wt, M, Mr, ref, ys, 10.0, 1.5)
    b = k._extension_sums_np(Q, Wt, M, Mr, ref, ys, 10.0, 1.5)
    assert np.allclose(a, b, rtol=1e-10, atol=1e-14 * np.abs(b).max())


def test_extension_kernel_derivatives_against_fd():
    n, s, q, y, h = 10.0, 1.5, 0.7, 0.9, 1e-4
    P = lambda yy: k._ext_kernels_np(q, yy, n, s)[0]  # noqa: E731
    _, dy, lap, _ = k._ext_kernels_np(q, y, n, s)
    assert dy == pytest.approx((P(y + h) - P(y - h)) / (2 * h), rel=1e-6)


def test_graded_breaks():
    br = k.graded_breaks(1.0, 3.0, 3)
    assert np.allclose(br, [1.0, 1.25, 1.5, 2.0, 3.0])


def test_numpy_fallback_env():
    env = dict(os.environ, GLAB_NUMBA="0")
    code = "import gelfandlab as g; print(g.backend(), g.critical_dimension(1.0).root)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    name, root = out.stdout.split()
    assert name == "numpy"
    assert float(root) == pytest.approx(10.0, abs=1e-8)
