"""Kernel backend selection.

Two interchangeable kernel implementations exist: a numba-jitted one and a
pure-numpy one.  Both compute exactly the same integers; only speed differs.
The environment variable PIMCHECK_BACKEND forces a choice ("numba" or
"numpy").  Unset, numba is used when it imports, numpy otherwise.
"""

import os

_requested = os.environ.get("PIMCHECK_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(
        "PIMCHECK_BACKEND must be 'numba' or 'numpy', got %r" % _requested
    )

if _requested == "numpy":
    from . import _kernels_numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as _impl

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from . import _kernels_numpy as _impl

        BACKEND = "numpy"

matmul_mod = _impl.matmul_mod
rref_mod = _impl.rref_mod
charpoly_mod = _impl.charpoly_mod
polymul_mod = _impl.polymul_mod
polyrem_mod = _impl.polyrem_mod
reduce_rows_mod = _impl.reduce_rows_mod
scan_idempotents = _impl.scan_idempotents
