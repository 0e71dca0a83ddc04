"""Optional numba acceleration.

Kernels in :mod:`oddspec._kernels` are written once as plain Python and
compiled with ``numba.njit`` when numba is importable.  Setting the
environment variable ``ODDSPEC_DISABLE_NUMBA=1`` (read at import time) forces
the pure-numpy / pure-Python path everywhere.
"""

from __future__ import annotations

import os

_FLAG = "ODDSPEC_DISABLE_NUMBA"

try:
    import numba
    has_numba = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    has_numba = False


def _env_disabled() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() not in ("", "0", "false", "no")


USE_NUMBA = has_numba and not _env_disabled()


def try_jit(fn=None, **kwargs):
    """Compile ``fn`` with ``numba.njit`` if available, else return it unchanged.

    Works both bare (``@try_jit``) and with options (``@try_jit(cache=True)``).
    """
    def wrap(f):
        if not has_numba:
            return f
        opts = {"nogil": True, "cache": False}
        opts.update(kwargs)
        return numba.njit(**opts)(f)

    if fn is None:
        return wrap
    return wrap(fn)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
