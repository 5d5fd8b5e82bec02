"""Optional numba acceleration with a pure-numpy fallback.

The hot geometry kernels in :mod:`fmcwsim.kernels` exist in two versions: a
scalar-loop one compiled with ``numba.njit`` and a vectorized numpy one.  The
active backend is chosen once at import time:

* ``FMCWSIM_DISABLE_NUMBA=1`` forces the numpy path,
* ``NUMBA_DISABLE_JIT=1`` is honoured the same way (numba would run the
  scalar loops uncompiled, which is far slower than the numpy fallback),
* a missing numba install falls back silently.

``benchmarks/bench_kernels.py`` times one backend against the other.
"""

import os

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        # No-op decorator so the scalar kernels stay importable.
        def wrap(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return wrap


def _truthy(name):
    return os.environ.get(name, "").strip().lower() not in ("", "0", "false", "no")


NUMBA_ENABLED = HAS_NUMBA and not _truthy("FMCWSIM_DISABLE_NUMBA") and not _truthy("NUMBA_DISABLE_JIT")


def active_backend():
    """Name of the kernel backend selected at import time."""
    return "numba" if NUMBA_ENABLED else "numpy"
