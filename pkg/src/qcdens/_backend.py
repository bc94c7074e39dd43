"""Backend selection for the hot estimator sums.

QCDENS_BACKEND=numpy forces the pure-numpy path; QCDENS_BACKEND=numba
requires numba (import error propagates). Unset, numba is used when
available and numpy otherwise.
"""

from __future__ import annotations

import os

_requested = os.environ.get("QCDENS_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ValueError("QCDENS_BACKEND must be 'numba' or 'numpy', got %r" % (_requested,))

if _requested == "numpy":
    from . import _impl_numpy as impl
    BACKEND = "numpy"
elif _requested == "numba":
    from . import _impl_numba as impl
    BACKEND = "numba"
else:
    try:
        from . import _impl_numba as impl
        BACKEND = "numba"
    except ImportError:
        from . import _impl_numpy as impl
        BACKEND = "numpy"


def backend_name() -> str:
    """Name of the active backend, 'numba' or 'numpy'."""
    return BACKEND
