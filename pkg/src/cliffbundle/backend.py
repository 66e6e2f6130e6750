"""Numba / numpy backend selection for the hot kernels.

The batched arithmetic kernels in :mod:`cliffbundle.cayley` exist in two
flavours: a numba ``@njit`` loop and a pure-numpy einsum path.  The active
one is picked once at import time from the ``CLIFFBUNDLE_BACKEND``
environment variable:

    CLIFFBUNDLE_BACKEND=numba    force numba (error if not installed)
    CLIFFBUNDLE_BACKEND=numpy    force the pure-numpy fallback
    unset / auto                 numba when importable, else numpy

``benchmarks/bench_backends.py`` compares the two.
"""

import os

try:
    import numba
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

_requested = os.environ.get("CLIFFBUNDLE_BACKEND", "auto").lower()

if _requested == "numba":
    if not HAS_NUMBA:
        raise ImportError("CLIFFBUNDLE_BACKEND=numba but numba is not installed")
    USE_NUMBA = True
elif _requested == "numpy":
    USE_NUMBA = False
elif _requested == "auto":
    USE_NUMBA = HAS_NUMBA
else:
    raise ValueError(f"unknown CLIFFBUNDLE_BACKEND value: {_requested!r}")


def backend_name() -> str:
    """Identifier recorded in verification reports."""
    return "numba" if USE_NUMBA else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` when the numba backend is active, identity otherwise.

    Kernels decorated with this are always *defined*; only compilation is
    skipped on the numpy backend (callers must not rely on jitted speed).
    """
    if USE_NUMBA:
        return numba.njit(*args, **kwargs)
    if args and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(fn):
        return fn

    return wrap
