"""Numba switch.

Kernels are written once as plain Python loops and compiled with ``numba.njit``
when numba is importable and ``BRANDRANK_DISABLE_NUMBA`` is unset (or ``0``).
Otherwise callers take the vectorized numpy path in :mod:`brandrank.kernels`.
"""

import os

_FLAG = "BRANDRANK_DISABLE_NUMBA"


def _disabled_by_env():
    return os.environ.get(_FLAG, "").strip().lower() not in ("", "0", "false", "no")


try:
    if _disabled_by_env():
        raise ImportError("numba disabled by " + _FLAG)
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    _njit = None
    HAVE_NUMBA = False


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if HAVE_NUMBA:
        return _njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def use_numba():
    return HAVE_NUMBA
