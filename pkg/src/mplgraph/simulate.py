"""Synthetic benchmark instances: graph generators, precision matrices drawn
from the graph-constrained Wishart prior, Gaussian data, and the rank-based
Gaussianizing transform used for real-data ingestion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri
from scipy.stats import rankdata

from .errors import ConstantColumn
from .graph import Graph, num_edges
from .gwishart import GWishartParams, sample_gwishart

# density regimes: n_e = round-half-up of max(a*p, b*p(p-1)/2)
_REGIMES = {"sparse": (0.5, 0.005), "dense": (2.0, 0.05)}
_KINDS = ("random", "cluster", "scale-free")


@dataclass
class InstanceSpec:
    """One benchmark cell: graph kind, density regime, dimensions, seed."""

    p: int
    graph_kind: str = "random"
    density_regime: str = "sparse"
    n: int = 100
    seed: int = 0
    clusters: int | None = None

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"p must be >= 2, got {self.p}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.graph_kind not in _KINDS:
            raise ValueError(f"unknown graph kind {self.graph_kind!r}")
        if self.density_regime not in _REGIMES:
            raise ValueError(f"unknown density regime {self.density_regime!r}")
        if self.clusters is not None and self.clusters < 1:
            raise ValueError("cluster count must be >= 1")

    @property
    def k_clusters(self) -> int:
        if self.clusters is not None:
            return self.clusters
        return 8 if self.p >= 1000 else 2


def n_edges_for(spec: InstanceSpec) -> int:
    """Target edge count for the spec's density regime (trees always p-1)."""
    if spec.graph_kind == "scale-free":
        return spec.p - 1
    a, b = _REGIMES[spec.density_regime]
    x = max(a * spec.p, b * spec.p * (spec.p - 1) / 2.0)
    return int(math.floor(x + 0.5))  # round half up reproduces the 0.5% cell


def default_n_obs(p: int, level: str = "high") -> int:
    """Benchmark observation counts: 20*log10(p) (low) or 350*log10(p) (high),
    with the stated large-p override of 400 for the low setting."""
    if level == "low":
        if p >= 1000:
            return 400
        return math.ceil(20 * math.log10(p))
    if level == "high":
        return math.ceil(350 * math.log10(p))
    raise ValueError(f"unknown level {level!r}")


def _cluster_partition(p: int, k: int) -> list[np.ndarray]:
    """Contiguous node groups, as even as possible."""
    sizes = [p // k + (1 if r < p % k else 0) for r in range(k)]
    out = []
    start = 0
    for s in sizes:
        out.append(np.arange(start, start + s))
        start += s
    return out


def gen_graph(spec: InstanceSpec, rng: np.random.Generator) -> Graph:
    """Generate the true graph for a spec.

    random: n_e distinct edges uniform without replacement.
    cluster: the same, restricted to within-group pairs.
    scale-free: a preferential-attachment tree (one new node, one edge per
    step, target chosen with probability proportional to degree).
    """
    p = spec.p
    ne = n_edges_for(spec)
    if spec.graph_kind == "random":
        ks = rng.choice(num_edges(p), size=ne, replace=False)
        ei, ej = np.triu_indices(p, k=1)
        return Graph.from_edges(p, zip(ei[ks].tolist(), ej[ks].tolist()))
    if spec.graph_kind == "cluster":
        groups = _cluster_partition(p, spec.k_clusters)
        pool = []
        for grp in groups:
            for ai in range(grp.size):
                for bi in range(ai + 1, grp.size):
                    pool.append((int(grp[ai]), int(grp[bi])))
        if ne > len(pool):
            raise ValueError(
                f"{ne} edges exceed within-cluster capacity {len(pool)}")
        ks = rng.choice(len(pool), size=ne, replace=False)
        return Graph.from_edges(p, [pool[k] for k in sorted(ks.tolist())])
    # scale-free: preferential-attachment spanning tree
    targets = np.empty(p - 1, dtype=np.int64)
    repeats = [0]  # one entry per edge endpoint; node 0 seeds the tree
    for t in range(1, p):
        pick = repeats[int(rng.integers(len(repeats)))]
        targets[t - 1] = pick
        repeats.append(pick)
        repeats.append(t)
    edges = [(min(t, int(targets[t - 1])), max(t, int(targets[t - 1])))
             for t in range(1, p)]
    return Graph.from_edges(p, edges)


def gen_instance(spec: InstanceSpec, rng: np.random.Generator | None = None):
    """Full synthetic instance: (graph, precision matrix, n x p data matrix).

    K is drawn from the graph-constrained Wishart prior with shape 3 and
    identity scale; rows of X are i.i.d. zero-mean Gaussian with covariance
    K^{-1} via its Cholesky factor.
    """
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    g = gen_graph(spec, rng)
    # cluster graphs at large p have dense blocks and converge slowly, so the
    # sweep budget here is far above the sampler default
    k = sample_gwishart(g, GWishartParams(3.0, np.eye(spec.p)), rng,
                        max_iter=20000)
    sigma = np.linalg.inv(k)
    sigma = (sigma + sigma.T) / 2.0
    chol = np.linalg.cholesky(sigma)
    x = rng.standard_normal((spec.n, spec.p)) @ chol.T
    return g, k, x


def nonparanormal_transform(x: np.ndarray) -> np.ndarray:
    """Rank-based per-column mapping to Gaussian margins.

    Each column is replaced by the normal quantile of its truncated empirical
    CDF, rank r of n -> Phi^{-1}(r / (n + 1)) with average ranks for ties,
    then centered to zero mean. Invariant to strictly monotone per-column
    pre-transforms.
    """
    x = np.asarray(x, dtype=np.float64)
    n, p = x.shape
    out = np.empty_like(x)
    for c in range(p):
        col = x[:, c]
        if np.unique(col).size < 2:
            raise ConstantColumn(f"column {c} has fewer than 2 distinct values")
        z = ndtri(rankdata(col, method="average") / (n + 1))
        out[:, c] = z - z.mean()
    return out


def write_data_csv(x: np.ndarray, path) -> None:
    """Data CSV: header X1..Xp, then n rows of comma-separated reals."""
    x = np.asarray(x)
    p = x.shape[1]
    with open(path, "w") as fh:
        fh.write(",".join(f"X{c + 1}" for c in range(p)) + "\n")
        for row in x:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def read_data_csv(path) -> np.ndarray:
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("X"):
            raise ValueError(f"bad data header: {header!r}")
        rows = [[float(v) for v in line.strip().split(",")]
                for line in fh if line.strip()]
    return np.array(rows)


def write_manifest(spec: InstanceSpec, ne: int, path) -> None:
    """Plain key=value manifest describing a generated instance."""
    with open(path, "w") as fh:
        fh.write(f"p={spec.p}\n")
        fh.write(f"n={spec.n}\n")
        fh.write(f"kind={spec.graph_kind}\n")
        fh.write(f"regime={spec.density_regime}\n")
        fh.write(f"seed={spec.seed}\n")
        fh.write(f"n_e={ne}\n")


def read_manifest(path) -> dict:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                key, val = line.split("=", 1)
                out[key] = val
    return out
