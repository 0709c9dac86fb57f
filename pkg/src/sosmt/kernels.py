"""Hot Pareto kernels, compiled when available.

The Cython build (``sosmt._ckernels``) is used unless it is missing or the
environment variable ``SOSMT_PURE_PYTHON`` is set to a non-empty value, in
which case the numpy implementations in ``sosmt._pykernels`` are used.
``BACKEND`` names the active implementation.
"""

import os

import numpy as np

from . import _pykernels

if os.environ.get("SOSMT_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"
    else:
        BACKEND = "cython"


def _matrix(F):
    F = np.ascontiguousarray(F, dtype=np.float64)
    if F.ndim != 2:
        raise ValueError(f"expected a 2-D objective matrix, got shape {F.shape}")
    return F


def nondominated_ranks(F, backend=None):
    """Front index for each row of ``F`` (minimization); 0 is the first front."""
    return _pick(backend).nondominated_ranks(_matrix(F))


def crowding_distance(F, backend=None):
    return _pick(backend).crowding_distance(_matrix(F))


def hv2d(P, ref=(1.0, 1.0), backend=None):
    P = np.ascontiguousarray(P, dtype=np.float64).reshape(-1, 2)
    return float(_pick(backend).hv2d(P, float(ref[0]), float(ref[1])))


def mean_min_distance(A, B, backend=None):
    return float(_pick(backend).mean_min_distance(_matrix(A), _matrix(B)))


def _pick(backend):
    if backend is None:
        return _impl
    if backend == "python":
        return _pykernels
    if backend == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown kernel backend {backend!r}")
