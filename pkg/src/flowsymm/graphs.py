"""Flow graphs, oriented incidence matrices, and observed/missing partitions.

Sign convention: B[target, e] = +1 and B[source, e] = -1, so (Bf)_v is the
net inflow at node v and positive injection entries mark sinks. Edge order
everywhere is the input edge-list order; all matrices index edges by it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np


class GraphStructureError(ValueError):
    """Raised for structurally invalid graphs (bad ids, self-loops, duplicates)."""


@dataclass(frozen=True)
class FlowGraph:
    """Directed multigraph with per-edge features.

    Undirected networks are stored with an arbitrary fixed orientation per
    edge (directed=False) and signed flows; the incidence algebra treats
    both kinds identically.
    """

    node_count: int
    edges: tuple[tuple[int, int, bool], ...]
    edge_features: np.ndarray

    def __post_init__(self):
        if self.node_count < 1:
            raise GraphStructureError("node_count must be >= 1")
        if len(self.edges) == 0:
            raise GraphStructureError("edge list must be non-empty")
        object.__setattr__(self, "edges", tuple((int(s), int(t), bool(d)) for s, t, d in self.edges))
        for s, t, _ in self.edges:
            if not (0 <= s < self.node_count and 0 <= t < self.node_count):
                raise GraphStructureError(f"edge ({s},{t}) has node id outside [0,{self.node_count})")
        if len(set(self.edges)) != len(self.edges):
            raise GraphStructureError("duplicate (source, target, directed) triple")
        feats = np.asarray(self.edge_features, dtype=np.float64)
        if feats.ndim != 2 or feats.shape[0] != len(self.edges):
            raise GraphStructureError(
                f"edge_features must be ({len(self.edges)}, d), got {feats.shape}"
            )
        object.__setattr__(self, "edge_features", feats)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def n(self) -> int:
        return self.node_count

    @property
    def feature_dim(self) -> int:
        return self.edge_features.shape[1]

    @cached_property
    def src(self) -> np.ndarray:
        return np.array([e[0] for e in self.edges], dtype=np.int64)

    @cached_property
    def tgt(self) -> np.ndarray:
        return np.array([e[1] for e in self.edges], dtype=np.int64)


@dataclass(frozen=True)
class IncidenceSystem:
    """Incidence matrix plus the observed/missing selector algebra.

    Satisfies B = B_obs S_obs + B_miss S_miss, S_obs S_missᵀ = 0 and
    S_obsᵀS_obs + S_missᵀS_miss = I exactly (selectors are 0/1 matrices).
    `degenerate` flags an all-observed partition (m_miss = 0).
    """

    B: np.ndarray
    observed_mask: np.ndarray
    S_obs: np.ndarray = field(repr=False)
    S_miss: np.ndarray = field(repr=False)
    B_obs: np.ndarray = field(repr=False)
    B_miss: np.ndarray = field(repr=False)
    obs_idx: np.ndarray
    miss_idx: np.ndarray
    src: np.ndarray
    tgt: np.ndarray
    degenerate: bool

    @property
    def n(self) -> int:
        return self.B.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    @property
    def m_obs(self) -> int:
        return self.obs_idx.shape[0]

    @property
    def m_miss(self) -> int:
        return self.miss_idx.shape[0]

    @property
    def miss_src(self) -> np.ndarray:
        """Source nodes of missing edges (triplet view for matrix-free solves)."""
        return self.src[self.miss_idx]

    @property
    def miss_tgt(self) -> np.ndarray:
        return self.tgt[self.miss_idx]


@dataclass(frozen=True)
class Observation:
    """Partial flow snapshot: readings on observed edges, zeros elsewhere,
    plus the prescribed per-node injections."""

    f_hat: np.ndarray
    c: np.ndarray
    observed_mask: np.ndarray

    def __post_init__(self):
        f_hat = np.asarray(self.f_hat, dtype=np.float64)
        c = np.asarray(self.c, dtype=np.float64)
        mask = np.asarray(self.observed_mask, dtype=bool)
        if f_hat.shape != mask.shape:
            raise ValueError("f_hat and observed_mask must have equal length")
        if np.any(f_hat[~mask] != 0.0):
            raise ValueError("f_hat must be exactly zero on missing edges")
        object.__setattr__(self, "f_hat", f_hat)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "observed_mask", mask)

    @property
    def f_obs(self) -> np.ndarray:
        return self.f_hat[self.observed_mask]


def build_incidence(graph: FlowGraph) -> np.ndarray:
    """Oriented incidence matrix, columns in edge-list order."""
    B = np.zeros((graph.node_count, graph.m), dtype=np.float64)
    for e, (s, t, _) in enumerate(graph.edges):
        if s == t:
            raise GraphStructureError(f"self-loop at node {s} (edge {e}) not supported")
        B[s, e] = -1.0
        B[t, e] = +1.0
    return B


def _endpoints_from_incidence(B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    src = np.argmin(B, axis=0).astype(np.int64)
    tgt = np.argmax(B, axis=0).astype(np.int64)
    return src, tgt


def partition_edges(B: np.ndarray, observed_mask: np.ndarray) -> IncidenceSystem:
    """Split B into observed/missing restrictions with 0/1 selector matrices.

    Selector rows follow ascending edge order. An all-observed mask is legal
    and yields a system flagged `degenerate` (empty missing side).
    """
    B = np.asarray(B, dtype=np.float64)
    mask = np.asarray(observed_mask, dtype=bool)
    n, m = B.shape
    if mask.shape != (m,):
        raise ValueError(f"mask length {mask.shape} does not match edge count {m}")
    colsum = np.abs(B).sum(axis=0)
    if not (np.all(colsum == 2.0) and np.all(B.sum(axis=0) == 0.0)):
        raise GraphStructureError("every B column must contain exactly one -1 and one +1")
    obs_idx = np.flatnonzero(mask)
    miss_idx = np.flatnonzero(~mask)
    S_obs = np.zeros((obs_idx.size, m), dtype=np.float64)
    S_obs[np.arange(obs_idx.size), obs_idx] = 1.0
    S_miss = np.zeros((miss_idx.size, m), dtype=np.float64)
    S_miss[np.arange(miss_idx.size), miss_idx] = 1.0
    src, tgt = _endpoints_from_incidence(B)
    return IncidenceSystem(
        B=B,
        observed_mask=mask,
        S_obs=S_obs,
        S_miss=S_miss,
        B_obs=B[:, obs_idx],
        B_miss=B[:, miss_idx],
        obs_idx=obs_idx,
        miss_idx=miss_idx,
        src=src,
        tgt=tgt,
        degenerate=miss_idx.size == 0,
    )


def empirical_imbalance(sys: IncidenceSystem, obs: Observation) -> np.ndarray:
    """Per-node imbalance implied by the observed readings: B_obs (S_obs f_hat)."""
    if obs.f_hat.shape[0] != sys.m:
        raise ValueError("observation length does not match system edge count")
    return sys.B_obs @ obs.f_hat[sys.obs_idx]
