"""Minimum-norm balanced completion anchoring the correction pipeline.

Solves B_miss δ = c − B_obs f̂_obs for the smallest-norm δ via rank-revealing
least squares, then lifts it onto the missing coordinates. Observed entries
of the anchor equal the observation bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import IncidenceSystem, Observation, empirical_imbalance

RANK_TOL = 1e-10
BALANCE_TOL = 1e-8


@dataclass(frozen=True)
class AnchorCompletion:
    delta0: np.ndarray
    f0: np.ndarray
    residual_norm: float
    consistency_warning: bool


def compute_anchor(sys: IncidenceSystem, obs: Observation,
                   rank_tol: float = RANK_TOL) -> AnchorCompletion:
    """Minimum-2-norm least-squares completion of the balance equation.

    Singular values below rank_tol·σ_max are treated as zero. Inconsistent
    systems (including the degenerate all-observed case) return the
    least-squares anchor with `consistency_warning` set instead of raising.
    """
    c_hat = empirical_imbalance(sys, obs)
    rhs = obs.c - c_hat
    if sys.m_miss == 0:
        delta0 = np.zeros(0, dtype=np.float64)
        f0 = obs.f_hat.copy()
    else:
        delta0, *_ = np.linalg.lstsq(sys.B_miss, rhs, rcond=rank_tol)
        f0 = obs.f_hat.copy()
        f0[sys.miss_idx] = obs.f_hat[sys.miss_idx] + delta0
    residual = float(np.linalg.norm(sys.B_miss @ delta0 - rhs))
    warn = residual > BALANCE_TOL * (1.0 + float(np.linalg.norm(obs.c)))
    return AnchorCompletion(delta0=delta0, f0=f0, residual_norm=residual,
                            consistency_warning=warn)
