"""Backend selection for the hot loops.

Compiled numba kernels are used when numba imports cleanly, unless the
environment variable ``WALKCOVER_PURE_NUMPY`` is set to a non-empty value
other than ``0``. Both backends produce bit-identical output.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_numpy

_flag = os.environ.get("WALKCOVER_PURE_NUMPY", "")
PURE_NUMPY_REQUESTED = _flag not in ("", "0")

_impl = _kernels_numpy
BACKEND = "numpy"
if not PURE_NUMPY_REQUESTED:
    try:
        from . import _kernels_numba
    except ImportError:  # numba missing or broken
        pass
    else:
        _impl = _kernels_numba
        BACKEND = "numba"

REACHED = _kernels_numpy.REACHED
EXHAUSTED = _kernels_numpy.EXHAUSTED
STUCK = _kernels_numpy.STUCK


def vecmat(indptr, indices, data, v):
    return _impl.vecmat(indptr, indices, data, np.ascontiguousarray(v, dtype=np.float64))


def absorbed_start_mass(indptr, indices, data, v0, start_states, need, max_steps):
    masses, status = _impl.absorbed_start_mass(
        indptr, indices, data,
        np.ascontiguousarray(v0, dtype=np.float64),
        np.asarray(start_states, dtype=np.int64),
        float(need), int(max_steps),
    )
    return masses, int(status)


def simulate_batch(nbr, cdf, start, d0, uniforms, need):
    return _impl.simulate_batch(
        np.ascontiguousarray(nbr, dtype=np.int64),
        np.ascontiguousarray(cdf, dtype=np.float64),
        int(start), int(d0),
        np.ascontiguousarray(uniforms, dtype=np.float64),
        float(need),
    )
