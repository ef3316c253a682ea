"""
Numba switch. Set GRIDBTW_DISABLE_NUMBA=1 to run every kernel as plain
Python over numpy arrays (useful for debugging, or where numba is missing).
"""

import os

_disabled = os.environ.get("GRIDBTW_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _disabled:
        raise ImportError
    from numba import njit

    JIT_ENABLED = True
except ImportError:
    JIT_ENABLED = False

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper


def python_impl(func):
    """Return the uncompiled Python body of a kernel."""
    return getattr(func, "py_func", func)
