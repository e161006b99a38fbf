"""Numba-jitted implementations of the hot kernels.

Same contracts as `_kernels_numpy`; plain loops under @njit. No prange:
deterministic summation order is part of the contract.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _scatter_add_2d(values, rows, out):
    for t in range(values.shape[0]):
        r = rows[t]
        for j in range(values.shape[1]):
            out[r, j] += values[t, j]


def scatter_add(values: np.ndarray, rows: np.ndarray, size: int) -> np.ndarray:
    flat = values.reshape(values.shape[0], -1)
    out = np.zeros((size, flat.shape[1]), dtype=values.dtype)
    _scatter_add_2d(flat, rows, out)
    return out.reshape((size,) + values.shape[1:])


@njit(cache=True)
def _segment_softmax(scores, indptr):
    out = np.empty_like(scores)
    for s in range(indptr.shape[0] - 1):
        lo, hi = indptr[s], indptr[s + 1]
        if hi == lo:
            continue
        m = scores[lo]
        for t in range(lo + 1, hi):
            if scores[t] > m:
                m = scores[t]
        z = 0.0
        for t in range(lo, hi):
            out[t] = np.exp(scores[t] - m)
            z += out[t]
        for t in range(lo, hi):
            out[t] /= z
    return out


def segment_softmax(scores: np.ndarray, indptr: np.ndarray, rows: np.ndarray) -> np.ndarray:
    return _segment_softmax(scores, indptr)


@njit(cache=True)
def _normal_matvec(v, src, tgt, n_nodes, lam):
    y = np.zeros(n_nodes, dtype=v.dtype)
    for e in range(v.shape[0]):
        y[tgt[e]] += v[e]
        y[src[e]] -= v[e]
    out = np.empty_like(v)
    for e in range(v.shape[0]):
        out[e] = y[tgt[e]] - y[src[e]] + lam * v[e]
    return out


def normal_matvec(v: np.ndarray, src: np.ndarray, tgt: np.ndarray, n_nodes: int,
                  lam: float) -> np.ndarray:
    return _normal_matvec(v, src, tgt, n_nodes, lam)


@njit(cache=True)
def _cg_normal_solve(b, src, tgt, n_nodes, lam, tol, maxiter):
    x = np.zeros_like(b)
    r = b.copy()
    p = r.copy()
    rs = 0.0
    for e in range(r.shape[0]):
        rs += r[e] * r[e]
    bnorm = np.sqrt(rs)
    if bnorm == 0.0:
        return x, 0, True
    threshold = (tol * bnorm) ** 2
    it = 0
    while it < maxiter:
        if rs <= threshold:
            return x, it, True
        ap = _normal_matvec(p, src, tgt, n_nodes, lam)
        pap = 0.0
        for e in range(p.shape[0]):
            pap += p[e] * ap[e]
        alpha = rs / pap
        rs_new = 0.0
        for e in range(x.shape[0]):
            x[e] += alpha * p[e]
            r[e] -= alpha * ap[e]
            rs_new += r[e] * r[e]
        beta = rs_new / rs
        for e in range(p.shape[0]):
            p[e] = r[e] + beta * p[e]
        rs = rs_new
        it += 1
    return x, it, rs <= threshold


def cg_normal_solve(b: np.ndarray, src: np.ndarray, tgt: np.ndarray, n_nodes: int,
                    lam: float, tol: float, maxiter: int) -> tuple[np.ndarray, int, bool]:
    x, it, ok = _cg_normal_solve(b, src, tgt, n_nodes, lam, tol, maxiter)
    return x, int(it), bool(ok)
