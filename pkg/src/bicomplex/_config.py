"""Backend selection for the numeric kernels.

Set ``BICOMPLEX_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when
numba is importable.
"""
import os

_FALSY = {"", "0", "false", "no", "off"}


def numba_disabled():
    return os.environ.get("BICOMPLEX_DISABLE_NUMBA", "").strip().lower() not in _FALSY


try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not numba_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"
