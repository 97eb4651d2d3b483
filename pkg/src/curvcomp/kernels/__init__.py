"""Backend selection for the numeric hot kernels.

``CURVCOMP_BACKEND`` picks the implementation:

* ``auto`` (default) — numba when importable, else pure numpy;
* ``numba`` — require the compiled backend;
* ``numpy`` — force the pure-numpy fallback.

The choice is made once at import time so a process is internally
consistent; reports produced under the same environment are reproducible.
"""

from __future__ import annotations

import os

from ..errors import InputError


def _select():
    name = os.environ.get("CURVCOMP_BACKEND", "auto").strip().lower()
    if name in ("", "auto"):
        try:
            from . import numba_impl as impl
        except ImportError:
            from . import numpy_impl as impl
        return impl
    if name == "numba":
        from . import numba_impl as impl
        return impl
    if name == "numpy":
        from . import numpy_impl as impl
        return impl
    raise InputError(f"unknown CURVCOMP_BACKEND {name!r} (expected auto, numba or numpy)")


_impl = _select()

fourier_eval = _impl.fourier_eval
rolling_extrema = _impl.rolling_extrema


def backend_name() -> str:
    """Name of the active kernel backend ('numba' or 'numpy')."""
    return _impl.BACKEND
