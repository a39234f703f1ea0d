"""Kernel backend selection.

Set FFZEROS_BACKEND=numba or FFZEROS_BACKEND=numpy to force a backend.
The default ("auto") prefers the jitted kernels and falls back to the
pure-numpy twins when numba is unavailable.  Both backends expose the
same five kernels with identical contracts; integer results are equal
exactly and float results to roundoff.
"""

from __future__ import annotations

import os

_requested = os.environ.get("FFZEROS_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise ImportError(
        f"FFZEROS_BACKEND must be 'numba', 'numpy' or 'auto', got {_requested!r}"
    )

if _requested in ("auto", "numba"):
    try:
        from . import _kernels_numba as kernels
    except ImportError:
        if _requested == "numba":
            raise
        from . import _kernels_numpy as kernels
else:
    from . import _kernels_numpy as kernels

BACKEND = kernels.BACKEND_NAME


def warmup():
    """Touch every kernel once so jit compilation happens up front."""
    import numpy as np

    from . import algebra

    K = algebra.field_make(2)
    add_t = K.add_table
    mul_t = K.mul_table
    g = np.array([1, 1], dtype=np.int64)
    red = np.array([1, 1], dtype=np.int64)
    perm = kernels.residue_mul_perm(2, 2, g, red, add_t, mul_t)
    kernels.cycle_dlog(perm, 1, 3)
    w = np.ones((1, 3), dtype=np.float64)
    om = np.exp(2j * np.pi * np.arange(3) / 3)
    kernels.char_sums(w, np.array([1], dtype=np.int64), om)
    acc = np.zeros(3, dtype=np.int64)
    kernels.conv_sparse_acc(
        acc,
        np.ones(3, dtype=np.int64),
        np.array([1], dtype=np.int64),
        np.array([2], dtype=np.int64),
    )
    cs = np.array([[1.0 + 0j, 0.0, 1.0]])
    kernels.aberth_batch(cs, 1.0, 1e-13, 50, 2)
