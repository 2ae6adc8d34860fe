"""Time the numba and numpy bodies of the three quadrature kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

The numba bodies are compiled once before timing.  With GLAB_NUMBA=0 the
``_nb`` functions are plain Python and the comparison is skipped.
"""
import argparse
import timeit

import numpy as np

from gelfandlab import kernels as k
from gelfandlab._accel import NUMBA_ENABLED


def cases():
    x, w = k.gauss_legendre01(16)
    rng = np.random.default_rng(0)
    rhos = np.linspace(0.1, 3.0, 200)
    etas = np.linspace(-6, 6, 801) + 1e-3
    Q = np.sort(rng.uniform(0.01, 20, size=(96, 400)), axis=1)
    W = rng.uniform(0, 0.05, size=Q.shape)
    M = rng.normal(size=Q.shape)
    Mr = rng.normal(size=Q.shape)
    ref = rng.normal(size=96)
    ys = np.geomspace(1e-3, 3, 96)

    def shell(f):
        return lambda: [f(r, 1.0, 10.0, 0.75, 0.01, x, w) for r in rhos]

    return {
        "angular_shell x200": (shell(k._angular_shell_nb), shell(k._angular_shell_np)),
        "fall_keven x801": (lambda: k._fall_keven_nb(etas, 10.0, 1.5, 1.0, x, w),
                            lambda: k._fall_keven_np(etas, 10.0, 1.5, 1.0, x, w)),
        "extension_sums 96x96x400": (lambda: k._extension_sums_nb(Q, W, M, Mr, ref, ys, 10.0, 1.5),
                                     lambda: k._extension_sums_np(Q, W, M, Mr, ref, ys, 10.0, 1.5)),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not NUMBA_ENABLED:
        print("numba disabled (GLAB_NUMBA=0); nothing to compare")
        return
    print(f"{'kernel':<28s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'speedup':>8s}")
    for name, (fnb, fnp) in cases().items():
        fnb()  # compile
        tnb = min(timeit.repeat(fnb, number=1, repeat=args.repeat)) * 1e3
        tnp = min(timeit.repeat(fnp, number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<28s} {tnb:11.2f} {tnp:11.2f} {tnp / tnb:8.1f}")


if __name__ == "__main__":
    main()
