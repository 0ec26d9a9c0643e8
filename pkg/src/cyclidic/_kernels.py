"""Batched hot loops: inner products, reflections and chart projection.

Two implementations live here. The numba ones are used when numba imports
and ``CYCLIDIC_DISABLE_NUMBA`` is unset (or ``0``); otherwise the pure numpy
versions are bound. Both are exported under explicit names so the benchmark
and the tests can compare them.
"""
import os

import numpy as np

ETA = np.array([1.0, 1.0, 1.0, 1.0, -1.0, -1.0])

_disabled = os.environ.get("CYCLIDIC_DISABLE_NUMBA", "0").lower() not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAS_NUMBA = numba is not None
USE_NUMBA = HAS_NUMBA and not _disabled


# ---- numpy reference path ----

def inner_rows_np(X, Y):
    return np.einsum("...i,i,...i->...", X, ETA, Y)


def reflect_rows_np(a, X):
    aa = inner_rows_np(a, a)
    return X - np.multiply.outer(2.0 * inner_rows_np(X, a) / aa, a)


def reflect_grid_np(A, X):
    # (T,6) complexes applied to (R,6) vectors -> (T,R,6)
    XA = (X * ETA) @ A.T                   # (R,T)
    AA = inner_rows_np(A, A)               # (T,)
    coef = 2.0 * XA.T / AA[:, None]        # (T,R)
    return X[None, :, :] - coef[:, :, None] * A[:, None, :]


def project_points_np(V, tol=1e-10):
    V = np.atleast_2d(V)
    w = V[:, 3] + V[:, 4]
    scale = np.linalg.norm(V, axis=1)
    flags = np.abs(w) < tol * scale
    safe = np.where(flags, 1.0, w)
    pts = V[:, :3] / safe[:, None]
    pts[flags] = np.nan
    return pts, flags


# ---- numba path ----

if HAS_NUMBA:
    @numba.njit(cache=True, fastmath=False)
    def inner_rows_nb(X, Y):
        n = X.shape[0]
        out = np.empty(n)
        for k in range(n):
            out[k] = (X[k, 0] * Y[k, 0] + X[k, 1] * Y[k, 1] + X[k, 2] * Y[k, 2]
                      + X[k, 3] * Y[k, 3] - X[k, 4] * Y[k, 4] - X[k, 5] * Y[k, 5])
        return out

    @numba.njit(cache=True)
    def _dot6(x, y):
        return (x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3]
                - x[4] * y[4] - x[5] * y[5])

    @numba.njit(cache=True)
    def reflect_rows_nb(a, X):
        n = X.shape[0]
        out = np.empty_like(X)
        aa = _dot6(a, a)
        for k in range(n):
            c = 2.0 * _dot6(X[k], a) / aa
            for i in range(6):
                out[k, i] = X[k, i] - c * a[i]
        return out

    @numba.njit(cache=True)
    def reflect_grid_nb(A, X):
        T = A.shape[0]
        R = X.shape[0]
        out = np.empty((T, R, 6))
        for t in range(T):
            aa = _dot6(A[t], A[t])
            for r in range(R):
                c = 2.0 * _dot6(X[r], A[t]) / aa
                for i in range(6):
                    out[t, r, i] = X[r, i] - c * A[t, i]
        return out

    @numba.njit(cache=True)
    def project_points_nb(V, tol):
        n = V.shape[0]
        pts = np.empty((n, 3))
        flags = np.zeros(n, dtype=np.bool_)
        for k in range(n):
            w = V[k, 3] + V[k, 4]
            s = 0.0
            for i in range(6):
                s += V[k, i] * V[k, i]
            if abs(w) < tol * np.sqrt(s):
                flags[k] = True
                pts[k, 0] = np.nan
                pts[k, 1] = np.nan
                pts[k, 2] = np.nan
            else:
                pts[k, 0] = V[k, 0] / w
                pts[k, 1] = V[k, 1] / w
                pts[k, 2] = V[k, 2] / w
        return pts, flags


def _c(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def inner_rows(X, Y):
    """Row-wise (4,2) inner product of two ``(n, 6)`` arrays."""
    if USE_NUMBA:
        return inner_rows_nb(_c(np.atleast_2d(X)), _c(np.atleast_2d(Y)))
    return inner_rows_np(np.atleast_2d(X), np.atleast_2d(Y))


def reflect_rows(a, X):
    """Reflect every row of ``X`` in the hyperplane ``a``-perp."""
    if USE_NUMBA:
        return reflect_rows_nb(_c(a), _c(np.atleast_2d(X)))
    return reflect_rows_np(np.asarray(a, float), np.atleast_2d(X))


def reflect_grid(A, X):
    """Apply each complex in ``A`` (T, 6) to each vector in ``X`` (R, 6)."""
    if USE_NUMBA:
        return reflect_grid_nb(_c(np.atleast_2d(A)), _c(np.atleast_2d(X)))
    return reflect_grid_np(np.atleast_2d(A), np.atleast_2d(X))


def project_points(V, tol=1e-10):
    """Euclidean positions of point-sphere rows; flags rows at infinity."""
    if USE_NUMBA:
        return project_points_nb(_c(np.atleast_2d(V)), tol)
    return project_points_np(V, tol)


def backend():
    return "numba" if USE_NUMBA else "numpy"
