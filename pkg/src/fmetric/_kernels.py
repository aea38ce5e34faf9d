"""Numeric kernels with a numba fast path and a pure-numpy fallback.

The backend is chosen once at import: numba when importable, unless the
FMETRIC_NO_NUMBA environment variable is set to a truthy value. Both
paths perform the identical float operations (one add per candidate, an
exact elementwise min), so their outputs are bitwise equal; tests assert
that. set_backend() exists for benchmarks and tests.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag instead
    njit = None
    HAS_NUMBA = False


def _resolve_backend(env: str | None, has_numba: bool = HAS_NUMBA) -> str:
    if env is not None and env.strip().lower() not in ("", "0", "false", "no"):
        return "numpy"
    return "numba" if has_numba else "numpy"


def relax_sweep_numpy(sp: np.ndarray, dist: np.ndarray) -> np.ndarray:
    """One relaxation sweep: out[i,j] = min(sp[i,j], min_k sp[i,k] + dist[k,j]).

    Extends candidate chains by a single edge on the right, so every
    candidate value is a left-to-right associated sum of edge weights.
    """
    out = sp.copy()
    n = sp.shape[0]
    for k in range(n):
        np.minimum(out, sp[:, k : k + 1] + dist[k : k + 1, :], out=out)
    return out


if HAS_NUMBA:

    @njit(cache=True)
    def _relax_sweep_jit(sp, dist):  # pragma: no cover - compiled
        n = sp.shape[0]
        out = np.empty_like(sp)
        for i in range(n):
            for j in range(n):
                best = sp[i, j]
                for k in range(n):
                    v = sp[i, k] + dist[k, j]
                    if v < best:
                        best = v
                out[i, j] = best
        return out

    def relax_sweep_numba(sp: np.ndarray, dist: np.ndarray) -> np.ndarray:
        return _relax_sweep_jit(np.ascontiguousarray(sp), np.ascontiguousarray(dist))

else:
    relax_sweep_numba = relax_sweep_numpy

_BACKENDS = {"numpy": relax_sweep_numpy, "numba": relax_sweep_numba}
_active = _resolve_backend(os.environ.get("FMETRIC_NO_NUMBA"))


def active_backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}, expected 'numba' or 'numpy'")
    if name == "numba" and not HAS_NUMBA:
        raise ValueError("numba backend requested but numba is not installed")
    _active = name


def relax_sweep(sp: np.ndarray, dist: np.ndarray) -> np.ndarray:
    return _BACKENDS[_active](sp, dist)


def minplus_closure(dist: np.ndarray) -> np.ndarray:
    """All-pairs minimal chain sums by repeated one-edge relaxation.

    Simple chains through n points use at most n-1 edges, so n-2 sweeps
    reach the fixpoint; longer walks can never round below a simple
    chain (appending a nonnegative edge never decreases a rounded sum).
    Converges in one sweep on a true metric.
    """
    sp = dist.copy()
    n = dist.shape[0]
    for _ in range(max(0, n - 2)):
        new = relax_sweep(sp, dist)
        if np.array_equal(new, sp):
            break
        sp = new
    return sp


def warmup() -> None:
    """Force JIT compilation so later timings exclude compile time."""
    d = np.array([[0.0, 1.0, 3.0], [1.0, 0.0, 1.0], [3.0, 1.0, 0.0]])
    minplus_closure(d)
