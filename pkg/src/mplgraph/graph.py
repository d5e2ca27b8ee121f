"""Undirected simple graphs on labeled nodes, canonical edge indexing, and the
Bernoulli-product graph prior.

Edges are pairs (i, j) with 0 <= i < j < p and are addressed by a canonical
linear index in lexicographic order, which fixes tie-breaking for event
selection and makes seeded runs reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def num_edges(p: int) -> int:
    """Number of possible edges on p nodes."""
    return p * (p - 1) // 2


def edge_index(p: int, i: int, j: int) -> int:
    """Canonical linear index of edge (i, j), 0-based, i < j, lexicographic."""
    if not (0 <= i < j < p):
        raise IndexError(f"invalid edge ({i}, {j}) for p={p}")
    return i * p - i * (i + 1) // 2 + (j - i - 1)


def edge_pairs(p: int) -> tuple[np.ndarray, np.ndarray]:
    """Arrays (ei, ej) mapping canonical edge index -> endpoints."""
    iu = np.triu_indices(p, k=1)
    return iu[0].astype(np.int64), iu[1].astype(np.int64)


def edge_index_matrix(p: int) -> np.ndarray:
    """Symmetric p x p lookup from node pair to canonical edge index (-1 on diagonal)."""
    idx = np.full((p, p), -1, dtype=np.int64)
    ei, ej = edge_pairs(p)
    k = np.arange(ei.size, dtype=np.int64)
    idx[ei, ej] = k
    idx[ej, ei] = k
    return idx


def incident_edge_indices(p: int, i: int, j: int) -> np.ndarray:
    """Canonical indices of the 2p-3 edges incident to node i or node j.

    Includes (i, j) itself exactly once; these are the entries a rate table
    must refresh after flipping (i, j).
    """
    ks = []
    for a in range(p):
        if a != i:
            ks.append(edge_index(p, min(i, a), max(i, a)))
    for a in range(p):
        if a != j and a != i:
            ks.append(edge_index(p, min(j, a), max(j, a)))
    return np.unique(np.asarray(ks, dtype=np.int64))


class Graph:
    """Undirected simple graph stored as a symmetric boolean adjacency matrix."""

    __slots__ = ("p", "adjacency")

    def __init__(self, p: int, adjacency: np.ndarray | None = None, validate: bool = True):
        if p < 1:
            raise ValueError(f"node count must be >= 1, got {p}")
        self.p = int(p)
        if adjacency is None:
            adjacency = np.zeros((p, p), dtype=bool)
        else:
            adjacency = np.asarray(adjacency, dtype=bool)
            if validate:
                if adjacency.shape != (p, p):
                    raise ValueError("adjacency shape does not match p")
                if not np.array_equal(adjacency, adjacency.T):
                    raise ValueError("adjacency must be symmetric")
                if adjacency.diagonal().any():
                    raise ValueError("self-loops are not allowed")
        self.adjacency = adjacency

    @classmethod
    def empty(cls, p: int) -> "Graph":
        return cls(p)

    @classmethod
    def complete(cls, p: int) -> "Graph":
        adj = np.ones((p, p), dtype=bool)
        np.fill_diagonal(adj, False)
        return cls(p, adj, validate=False)

    @classmethod
    def from_edges(cls, p: int, edges) -> "Graph":
        g = cls(p)
        for (i, j) in edges:
            if not (0 <= i < j < p):
                raise IndexError(f"invalid edge ({i}, {j}) for p={p}")
            g.adjacency[i, j] = True
            g.adjacency[j, i] = True
        return g

    @classmethod
    def from_edge_vector(cls, p: int, vec: np.ndarray) -> "Graph":
        vec = np.asarray(vec, dtype=bool)
        if vec.size != num_edges(p):
            raise ValueError("edge vector has wrong length")
        ei, ej = edge_pairs(p)
        adj = np.zeros((p, p), dtype=bool)
        adj[ei[vec], ej[vec]] = True
        adj[ej[vec], ei[vec]] = True
        return cls(p, adj, validate=False)

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i, j])

    def neighbors(self, h: int) -> np.ndarray:
        """Sorted (ascending) array of nodes adjacent to h."""
        return np.flatnonzero(self.adjacency[h])

    @property
    def neighbor_sets(self) -> list[np.ndarray]:
        return [self.neighbors(h) for h in range(self.p)]

    def edges(self) -> list[tuple[int, int]]:
        """Edges in canonical (lexicographic) order."""
        ei, ej = np.nonzero(np.triu(self.adjacency, k=1))
        return list(zip(ei.tolist(), ej.tolist()))

    def edge_vector(self) -> np.ndarray:
        """Boolean indicator over canonical edge indices."""
        ei, ej = edge_pairs(self.p)
        return self.adjacency[ei, ej]

    def copy(self) -> "Graph":
        return Graph(self.p, self.adjacency.copy(), validate=False)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.p == other.p and np.array_equal(
            self.adjacency, other.adjacency)

    def __repr__(self):
        return f"Graph(p={self.p}, edges={self.edge_count})"


def flip_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Return a copy of g with edge e toggled.

    Only the adjacency entries of the two endpoints change; flipping the same
    edge twice is the identity.
    """
    i, j = e
    if not (0 <= i < j < g.p):
        raise IndexError(f"invalid edge ({i}, {j}) for p={g.p}")
    out = g.copy()
    v = not out.adjacency[i, j]
    out.adjacency[i, j] = v
    out.adjacency[j, i] = v
    return out


@dataclass
class GraphPrior:
    """Bernoulli-product prior on graphs: P(G) proportional to
    beta^|E| * (1-beta)^|non-edges|, with optional per-edge overrides.
    """

    beta: float = 0.2
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must be in (0, 1), got {self.beta}")
        for e, b in self.overrides.items():
            if not 0.0 < b < 1.0:
                raise ValueError(f"beta for edge {e} must be in (0, 1), got {b}")

    def edge_beta(self, e: tuple[int, int]) -> float:
        return self.overrides.get(tuple(e), self.beta)

    def log_birth_ratios(self, p: int) -> np.ndarray:
        """log(beta_e / (1 - beta_e)) per canonical edge index."""
        out = np.full(num_edges(p), math.log(self.beta) - math.log1p(-self.beta))
        for e, b in self.overrides.items():
            i, j = e
            out[edge_index(p, i, j)] = math.log(b) - math.log1p(-b)
        return out


def log_prior_ratio(prior: GraphPrior, e: tuple[int, int], birth: bool = True) -> float:
    """Log prior ratio for toggling edge e: log(beta/(1-beta)) for a birth and
    its negative for a death. Independent of the current graph."""
    b = prior.edge_beta(e)
    r = math.log(b) - math.log1p(-b)
    return r if birth else -r


def write_edge_list(g: Graph, path) -> None:
    """Edge-list text format: header `p=<int>`, then one `i j` pair per line,
    1-based, i < j, canonical order."""
    with open(path, "w") as fh:
        fh.write(f"p={g.p}\n")
        for (i, j) in g.edges():
            fh.write(f"{i + 1} {j + 1}\n")


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("p="):
            raise ValueError(f"bad edge-list header: {header!r}")
        p = int(header[2:])
        edges = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            a, b = line.split()
            edges.append((int(a) - 1, int(b) - 1))
    return Graph.from_edges(p, edges)
