"""Hot quadrature loops, compiled with numba when available.

Every public kernel has a numba body (``_nb``) and a vectorised numpy body
(``_np``); the module-level name points at one of them according to
``GLAB_NUMBA``.  Both take the same arguments and agree to rounding.
"""
import math
from functools import lru_cache

import numpy as np

from ._accel import NUMBA_ENABLED, njit, prange

__all__ = [
    "gauss_legendre01",
    "graded_breaks",
    "angular_shell",
    "fall_keven",
    "extension_sums",
]


@lru_cache(maxsize=64)
def gauss_legendre01(m):
    """Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(int(m))
    return 0.5 * (x + 1.0), 0.5 * w


def graded_breaks(a, b, levels):
    """a, a + (b-a) 2^-levels, ..., a + (b-a)/2, b."""
    fr = np.concatenate(([0.0], 2.0 ** -np.arange(levels, 0, -1), [1.0]))
    return a + (b - a) * fr


# --------------------------------------------------------------------------
# angular shell: int_{theta_min}^{pi} sin^{n-2} th (r^2 + rho^2 - 2 r rho cos th)^{-(n+2t)/2} dth

_SHELL_LEVELS = 6


@njit(cache=True)
def _angular_shell_nb(rho, r, n, t, theta_min, x01, w01):
    expo = -0.5 * (n + 2.0 * t)
    span = math.pi - theta_min
    total = 0.0
    lo = theta_min
    for k in range(_SHELL_LEVELS + 1):
        if k < _SHELL_LEVELS:
            hi = theta_min + span * 2.0 ** (k - _SHELL_LEVELS)
        else:
            hi = math.pi
        h = hi - lo
        for i in range(x01.size):
            th = lo + h * x01[i]
            d2 = r * r + rho * rho - 2.0 * r * rho * math.cos(th)
            total += h * w01[i] * math.sin(th) ** (n - 2.0) * d2 ** expo
        lo = hi
    return total


def _angular_shell_np(rho, r, n, t, theta_min, x01, w01):
    br = graded_breaks(theta_min, math.pi, _SHELL_LEVELS)
    h = np.diff(br)
    th = br[:-1, None] + h[:, None] * x01[None, :]
    d2 = r * r + rho * rho - 2.0 * r * rho * np.cos(th)
    vals = np.sin(th) ** (n - 2.0) * d2 ** (-0.5 * (n + 2.0 * t))
    return float(np.sum(h[:, None] * w01[None, :] * vals))


# --------------------------------------------------------------------------
# symmetrised Fall kernel  Keven(eta) = e^{lam eta} K(e^eta),
# K(tau) = |S^{n-2}| int_0^pi sin^{n-2} phi (tau^2 + 1 - 2 tau cos phi)^{-lam} dphi

_FALL_LEVELS = 40


@njit(cache=True)
def _fall_keven_one(eta, n, lam, sn2, x01, w01):
    tau = math.exp(-abs(eta))  # Keven is even; evaluate on tau <= 1
    width = max(abs(eta), 1e-300)
    total = 0.0
    lo = 0.0
    # panels [0, w], [w, 2w], [2w, 4w], ... up to pi
    hi = min(width, math.pi)
    for _ in range(_FALL_LEVELS):
        h = hi - lo
        for i in range(x01.size):
            ph = lo + h * x01[i]
            d2 = (1.0 - tau) ** 2 + 2.0 * tau * (1.0 - math.cos(ph))
            total += h * w01[i] * math.sin(ph) ** (n - 2.0) * d2 ** (-lam)
        if hi >= math.pi:
            break
        lo = hi
        hi = min(2.0 * hi, math.pi)
    return sn2 * tau ** lam * total


@njit(cache=True, parallel=True)
def _fall_keven_nb(etas, n, s, sn2, x01, w01):
    lam = 0.5 * (n + 2.0 * s)
    out = np.empty(etas.size)
    for j in prange(etas.size):
        out[j] = _fall_keven_one(etas[j], n, lam, sn2, x01, w01)
    return out


def _fall_keven_np(etas, n, s, sn2, x01, w01):
    lam = 0.5 * (n + 2.0 * s)
    etas = np.asarray(etas, dtype=float)
    out = np.empty(etas.size)
    for j, eta in enumerate(etas):
        tau = math.exp(-abs(eta))
        w = max(abs(eta), 1e-300)
        br = [0.0]
        hi = min(w, math.pi)
        while True:
            br.append(hi)
            if hi >= math.pi or len(br) > _FALL_LEVELS:
                break
            hi = min(2.0 * hi, math.pi)
        br = np.asarray(br)
        h = np.diff(br)
        ph = br[:-1, None] + h[:, None] * x01[None, :]
        d2 = (1.0 - tau) ** 2 + 2.0 * tau * (1.0 - np.cos(ph))
        vals = np.sin(ph) ** (n - 2.0) * d2 ** (-lam)
        out[j] = sn2 * tau ** lam * np.sum(h[:, None] * w01[None, :] * vals)
    return out


# --------------------------------------------------------------------------
# extension sums over the source-distance nodes q (one node set per row rho_i)
#   out[c, i, j] = sum_k W[i,k] Q[i,k]^{n-1} K_c(Q[i,k], y_j) D_c[i,k]
# with K = (P, P, dP/dy, Delta_b P, d/dy Delta_b P) for the unnormalised
# kernel P = y^{2s} (y^2 + q^2)^{-(n/2+s)}, D_c = M - ref except D_1 = dM/drho.

@njit(cache=True, parallel=True)
def _extension_sums_nb(Q, W, M, Mr, ref, ys, n, s):
    # y-only factors are pulled out of the q loop; Delta_b P = 2 dP/dy / y
    nr, nq = Q.shape
    ny = ys.size
    out = np.zeros((5, nr, ny))
    e = -(0.5 * n + s)
    for i in prange(nr):
        wk = np.empty(nq)
        m = np.empty(nq)
        q2 = np.empty(nq)
        for k in range(nq):
            q = Q[i, k]
            wk[k] = W[i, k] * q ** (n - 1.0)
            m[k] = M[i, k] - ref[i]
            q2[k] = q * q
        for j in range(ny):
            y = ys[j]
            y2 = y * y
            v0 = 0.0
            v1 = 0.0
            v2 = 0.0
            v4 = 0.0
            for k in range(nq):
                a = q2[k] + y2
                ia = 1.0 / a
                P = wk[k] * math.exp(e * math.log(a))
                c = q2[k]
                poly = (n * n * y2 * y2 - 4.0 * n * s * c * y2 + 2.0 * n * y2 * y2
                        + 4.0 * s * s * c * c - 4.0 * s * c * c - 8.0 * s * c * y2)
                v0 += P * m[k]
                v1 += P * Mr[i, k]
                v2 += P * (2.0 * s * c - n * y2) * ia * m[k]
                v4 += P * poly * ia * ia * m[k]
            f = y ** (2.0 * s)
            out[0, i, j] = f * v0
            out[1, i, j] = f * v1
            out[2, i, j] = f * v2 / y
            out[3, i, j] = 2.0 * f * v2 / y2
            out[4, i, j] = 2.0 * f * v4 / (y2 * y)
    return out


def _ext_kernels_np(q, y, n, s):
    q2 = q * q
    y2 = y * y
    a = q2 + y2
    P = y ** (2.0 * s) * a ** (-(0.5 * n + s))
    num = 2.0 * s * q2 - n * y2
    dy = P * num / (y * a)
    lap = 2.0 * P * num / (y2 * a)
    poly = (n * n * y2 * y2 - 4.0 * n * s * q2 * y2 + 2.0 * n * y2 * y2
            + 4.0 * s * s * q2 * q2 - 4.0 * s * q2 * q2 - 8.0 * s * q2 * y2)
    dlap = 2.0 * P * poly / (y2 * y * a * a)
    return P, dy, lap, dlap


def _extension_sums_np(Q, W, M, Mr, ref, ys, n, s):
    # one (ny, nq) kernel table per row, then matrix-vector products
    nr = Q.shape[0]
    out = np.empty((5, nr, ys.size))
    for i in range(nr):
        q = Q[i]
        P, dy, lap, dlap = _ext_kernels_np(q[None, :], ys[:, None], n, s)
        wk = W[i] * q ** (n - 1.0)
        d = (M[i] - ref[i]) * wk
        out[0, i] = P @ d
        out[1, i] = P @ (Mr[i] * wk)
        out[2, i] = dy @ d
        out[3, i] = lap @ d
        out[4, i] = dlap @ d
    return out


if NUMBA_ENABLED:
    angular_shell = _angular_shell_nb
    fall_keven = _fall_keven_nb
    extension_sums = _extension_sums_nb
else:
    angular_shell = _angular_shell_np
    fall_keven = _fall_keven_np
    extension_sums = _extension_sums_np
