"""Numeric kernel backends.

The hot kernels (scaled complementary error function, reduced interaction
kernel, adaptive window quadrature) exist twice: a jitted numba version and
a vectorized pure-numpy version.  Selection, at import time:

* ``HOLLOWCORE_BACKEND=numba`` (default) -- jitted kernels; falls back to
  numpy with a warning if numba cannot be imported.
* ``HOLLOWCORE_BACKEND=numpy`` -- vectorized kernels, no JIT involved.

``benchmarks/bench_backends.py`` times one against the other.
"""

from __future__ import annotations

import os
import warnings

_requested = os.environ.get("HOLLOWCORE_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(
        f"HOLLOWCORE_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numba":
    try:
        from . import numba_impl as _impl
    except ImportError as exc:  # pragma: no cover - depends on environment
        warnings.warn(f"numba backend unavailable ({exc}); "
                      "falling back to the pure-numpy kernels")
        from . import numpy_impl as _impl
else:
    from . import numpy_impl as _impl

BACKEND = _impl.NAME
erfcx = _impl.erfcx
potential_reduced = _impl.potential_reduced
potential_antideriv_reduced = _impl.potential_antideriv_reduced
integrate_windows = _impl.integrate_windows

__all__ = [
    "BACKEND",
    "erfcx",
    "potential_reduced",
    "potential_antideriv_reduced",
    "integrate_windows",
]
