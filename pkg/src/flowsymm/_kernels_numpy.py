"""Vectorized numpy implementations of the hot kernels.

Reference backend: always available, used when FLOWSYMM_BACKEND=numpy or
when numba cannot be imported. Segment reductions go through ufunc.at,
which is correct but slower than the jitted loops.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"


def scatter_add(values: np.ndarray, rows: np.ndarray, size: int) -> np.ndarray:
    """Sum `values[t]` into an output of leading dimension `size` at index `rows[t]`."""
    out = np.zeros((size,) + values.shape[1:], dtype=values.dtype)
    np.add.at(out, rows, values)
    return out


def segment_softmax(scores: np.ndarray, indptr: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Stabilized softmax of `scores` within each CSR segment given by `indptr`/`rows`."""
    nseg = indptr.shape[0] - 1
    seg_max = np.full(nseg, -np.inf, dtype=scores.dtype)
    np.maximum.at(seg_max, rows, scores)
    ex = np.exp(scores - seg_max[rows])
    seg_sum = np.zeros(nseg, dtype=scores.dtype)
    np.add.at(seg_sum, rows, ex)
    return ex / seg_sum[rows]


def normal_matvec(v: np.ndarray, src: np.ndarray, tgt: np.ndarray, n_nodes: int,
                  lam: float) -> np.ndarray:
    """(B_missᵀ B_miss + λI) v using only the edge endpoint arrays."""
    y = np.zeros(n_nodes, dtype=v.dtype)
    np.add.at(y, tgt, v)
    np.add.at(y, src, -v)
    return (y[tgt] - y[src]) + lam * v


def cg_normal_solve(b: np.ndarray, src: np.ndarray, tgt: np.ndarray, n_nodes: int,
                    lam: float, tol: float, maxiter: int) -> tuple[np.ndarray, int, bool]:
    """Conjugate gradients on (B_missᵀ B_miss + λI) x = b, matrix never formed.

    Returns (solution, iterations, converged). Convergence means
    ‖r‖₂ ≤ tol·‖b‖₂.
    """
    x = np.zeros_like(b)
    r = b.copy()
    p = r.copy()
    rs = float(r @ r)
    bnorm = float(np.sqrt(b @ b))
    if bnorm == 0.0:
        return x, 0, True
    threshold = (tol * bnorm) ** 2
    it = 0
    while it < maxiter:
        if rs <= threshold:
            return x, it, True
        ap = normal_matvec(p, src, tgt, n_nodes, lam)
        alpha = rs / float(p @ ap)
        x = x + alpha * p
        r = r - alpha * ap
        rs_new = float(r @ r)
        p = r + (rs_new / rs) * p
        rs = rs_new
        it += 1
    return x, it, rs <= threshold
