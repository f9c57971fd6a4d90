"""Selects numba-compiled kernels or the pure-numpy fallback.

Set ``LATTICESUM_DISABLE_NUMBA=1`` to force the numpy path.  The choice is
made once, at import time.
"""

import os

_FALSY = {"", "0", "false", "no", "off"}

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_AVAILABLE = numba is not None
NUMBA_DISABLED = os.environ.get("LATTICESUM_DISABLE_NUMBA", "").strip().lower() not in _FALSY
USE_NUMBA = NUMBA_AVAILABLE and not NUMBA_DISABLED


def njit(func):
    """``numba.njit(cache=True)`` when numba is importable, identity otherwise."""
    if not NUMBA_AVAILABLE:
        return func
    return numba.njit(cache=True)(func)
