"""Numba switch for the hot kernels.

Set ``EXTTSP_NO_NUMBA=1`` to run the pure-numpy fallbacks even when numba is
installed. Both paths sum edge contributions in the same order, so results
are bit-identical.
"""

import os

ENV_FLAG = "EXTTSP_NO_NUMBA"

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional extra
    numba = None

HAVE_NUMBA = numba is not None


def numba_disabled() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


USE_NUMBA = HAVE_NUMBA and not numba_disabled()

numba_default = {
    "nopython": True,
    "nogil": True,
    "cache": True,
    "fastmath": False,
    "boundscheck": False,
}


def njit(fn):
    """Compile ``fn`` with numba, or return it unchanged when numba is missing."""
    if numba is None:
        return fn
    return numba.jit(**numba_default)(fn)
