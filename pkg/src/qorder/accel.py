"""Numba acceleration switch for the hot kernels.

The inner loops in :mod:`qorder._kernels` are compiled with numba's ``@njit``
when possible.  Set ``QO_NO_NUMBA=1`` in the environment (before importing
qorder) to force the pure-numpy fallback paths; the fallback is also selected
automatically when numba is not installed.
"""

import os

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    numba = None
    HAS_NUMBA = False

DISABLED = os.environ.get("QO_NO_NUMBA", "") not in ("", "0")
ENABLED = HAS_NUMBA and not DISABLED


def njit(func):
    """Compile ``func`` with numba when acceleration is enabled, else return it unchanged."""
    if ENABLED:
        return numba.njit(cache=True)(func)
    return func


def jit_compile(func):
    """Compile ``func`` with numba regardless of the env flag (benchmark use).

    Returns None when numba is unavailable.
    """
    if not HAS_NUMBA:
        return None
    return numba.njit(cache=True)(func)
