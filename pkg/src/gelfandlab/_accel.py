"""Numba switch.

Set ``GLAB_NUMBA=0`` to force the pure-numpy kernels (useful for debugging and
for the benchmark comparison).  ``GLAB_THREADS`` caps the numba worker count.
"""
import os

_flag = os.environ.get("GLAB_NUMBA", "1").strip().lower()
_requested = _flag not in ("0", "false", "no", "off")

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    _numba = None

NUMBA_ENABLED = bool(_requested and _numba is not None)

if NUMBA_ENABLED:
    njit = _numba.njit
    prange = _numba.prange
    _threads = os.environ.get("GLAB_THREADS")
    if _threads:
        _numba.set_num_threads(max(1, min(int(_threads), _numba.config.NUMBA_NUM_THREADS)))
else:
    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f

    prange = range


def backend():
    return "numba" if NUMBA_ENABLED else "numpy"
