"""Backend selection for the hot sign-table kernels.

The numba path is used unless ``CHIROTREE_DISABLE_NUMBA`` is set to a truthy
value (or numba fails to import).  :func:`use_backend` switches at runtime;
the benchmark and the backend-agreement tests rely on it.
"""
import os

import numpy as np

from . import _kernels_numpy

_TRUTHY = {"1", "true", "yes", "on"}

try:
    from . import _kernels_numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _kernels_numba = None

_backend = None


def _default_backend():
    if _kernels_numba is None:
        return "numpy"
    if os.environ.get("CHIROTREE_DISABLE_NUMBA", "").strip().lower() in _TRUTHY:
        return "numpy"
    return "numba"


def backend():
    global _backend
    if _backend is None:
        _backend = _default_backend()
    return _backend


def use_backend(name):
    """Select ``"numba"`` or ``"numpy"``; returns the previous backend."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and _kernels_numba is None:
        raise RuntimeError("numba is not available")
    prev = backend()
    _backend = name
    return prev


def _impl():
    return _kernels_numba if backend() == "numba" else _kernels_numpy


def _opt(arr):
    arr = [int(v) for v in arr]
    return None if arr[0] < 0 else tuple(arr)


def interiority_subset(C):
    return _opt(_impl().interiority_subset(C))


def transitivity_subset(C):
    return _opt(_impl().transitivity_subset(C))


def crossing_matrix(C, I, J):
    I = np.ascontiguousarray(I, np.int64)
    J = np.ascontiguousarray(J, np.int64)
    return np.asarray(_impl().crossing_matrix(C, I, J), bool)


def maximal_cliques(adj):
    """Maximal cliques of a boolean adjacency matrix, as Python-int bitmasks."""
    m = adj.shape[0]
    if backend() == "numba" and m <= 64:
        weights = np.uint64(1) << np.arange(m, dtype=np.uint64)
        N = np.zeros(m, np.uint64)
        for v in range(m):
            N[v] = np.bitwise_or.reduce(weights[adj[v]], initial=np.uint64(0))
        return [int(c) for c in _kernels_numba.maximal_cliques(N, m)]
    N = [sum(1 << u for u in np.nonzero(adj[v])[0].tolist()) for v in range(m)]
    return _kernels_numpy.maximal_cliques(N, m)


def is_module(C, member):
    return bool(_impl().is_module(C, np.ascontiguousarray(member, bool)))


def first_module(C):
    idx = _impl().first_module(C)
    return tuple(int(i) for i in idx) if len(idx) else None


def all_modules(C):
    return [int(m) for m in _impl().all_modules(C)]


def is_quasi_module(C, member):
    return bool(_impl().is_quasi_module(C, np.ascontiguousarray(member, bool)))


def quasi_modules(C, min_size):
    return [int(m) for m in _impl().quasi_modules(C, int(min_size))]
