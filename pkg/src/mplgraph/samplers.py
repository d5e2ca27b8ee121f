"""Birth-death and reversible-jump chains over the graph space.

Both chains share one state layout: the adjacency matrix, per-node log scores,
and the toggled-score table maintained by the compiled kernels. The birth-death
chain is continuous-time (states weighted by exponential waiting times); the
reversible-jump chain is discrete-time (unit weights). Edge-inclusion
probabilities are accumulated as running sums, never by storing sampled graphs.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import (DegenerateChain, EmptyChain, PositiveDefinitenessViolated,
                     SampleSizeTooSmall)
from .graph import (Graph, GraphPrior, edge_index, edge_index_matrix,
                    edge_pairs, incident_edge_indices, log_prior_ratio,
                    num_edges)
from .mpl import SufficientStats, log_bayes_factor


@dataclass
class RateTable:
    """Per-edge birth/death rates in canonical order plus their running sum."""

    rates: np.ndarray
    rate_sum: float

    def copy(self) -> "RateTable":
        return RateTable(self.rates.copy(), self.rate_sum)


@dataclass
class WaitingTime:
    """Mean holding time of the current state: 1 / sum of rates."""

    value: float


@dataclass
class TraceRecord:
    iteration: int
    edge_count: int
    total_logmpl: float
    wall_seconds: float


@dataclass
class ChainResult:
    """Waiting-time-weighted edge accumulators and per-checkpoint trace."""

    p: int
    edge_weight_sum: np.ndarray
    total_weight: float
    iterations: int
    burn_in: int
    trace: list[TraceRecord] = field(default_factory=list)
    samples: list[Graph] | None = None
    algorithm: str = "bd"
    seed: int | None = None


@dataclass
class ChainConfig:
    iterations: int
    burn_in: int | None = None
    seed: int = 0
    init_graph: Graph | None = None
    thinning: int = 0
    checkpoint_every: int | None = None
    proposal_kind: str = "uniform"

    def resolve(self) -> "ChainConfig":
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        burn = self.iterations // 2 if self.burn_in is None else self.burn_in
        if not 0 <= burn < self.iterations:
            raise ValueError("need iterations > burn_in >= 0")
        ck = self.checkpoint_every
        if ck is None:
            ck = max(1, self.iterations // 100)
        if ck < 1:
            raise ValueError("checkpoint_every must be >= 1")
        if self.proposal_kind not in ("uniform", "two-step"):
            raise ValueError(f"unknown proposal kind {self.proposal_kind!r}")
        return ChainConfig(self.iterations, burn, self.seed, self.init_graph,
                           self.thinning, ck, self.proposal_kind)


def _edge_rate(stats: SufficientStats, g: Graph, prior: GraphPrior,
               e: tuple[int, int]) -> float:
    """Fresh evaluation of min{exp(log BF + log prior ratio), 1} for one edge."""
    birth = not g.has_edge(*e)
    lr = log_bayes_factor(stats, g, e) + log_prior_ratio(prior, e, birth)
    if math.isnan(lr):
        return 0.0
    return 1.0 if lr >= 0.0 else math.exp(lr)


class ChainState:
    """Mutable sampler state: graph, node scores, toggled-score table, rates."""

    def __init__(self, stats: SufficientStats, graph: Graph | None,
                 prior: GraphPrior):
        self.stats = stats
        self.prior = prior
        p = stats.p
        g = Graph.empty(p) if graph is None else graph
        if g.p != p:
            raise ValueError("graph and stats dimensions disagree")
        self.adj = np.ascontiguousarray(g.adjacency.copy())
        self.node_lm, self.delta = K._init_tables(stats.U, stats.n, self.adj)
        if not np.all(np.isfinite(self.node_lm)):
            bad = int(np.flatnonzero(~np.isfinite(self.node_lm))[0])
            if stats.n < g.neighbors(bad).size + 1:
                raise SampleSizeTooSmall(
                    f"initial neighborhood of node {bad} too large for n={stats.n}")
            raise PositiveDefinitenessViolated(
                f"Gram submatrix for node {bad} is not positive definite")
        self.ei, self.ej = edge_pairs(p)
        self.eidx = edge_index_matrix(p)
        self.lpb = prior.log_birth_ratios(p)
        self.edge_on = np.ascontiguousarray(g.edge_vector())
        self.rates = np.empty(num_edges(p))
        rate_sum = K._rates_full(self.node_lm, self.delta, self.adj, self.lpb,
                                 self.ei, self.ej, self.rates)
        # fstate: [rate_sum, total_logmpl, cumulative weight]
        self.fstate = np.array([rate_sum, float(self.node_lm.sum()), 0.0])
        self.istate = np.array([g.edge_count], dtype=np.int64)

    @property
    def p(self) -> int:
        return self.stats.p

    @property
    def rate_sum(self) -> float:
        return float(self.fstate[0])

    @property
    def total_logmpl(self) -> float:
        return float(self.fstate[1])

    @property
    def edge_count(self) -> int:
        return int(self.istate[0])

    @property
    def graph(self) -> Graph:
        return Graph(self.p, self.adj.copy(), validate=False)

    def rate_table(self) -> RateTable:
        return RateTable(self.rates.copy(), self.rate_sum)


_NO_WEIGHT = np.zeros(0)


def compute_all_rates(stats: SufficientStats, g: Graph,
                      prior: GraphPrior) -> RateTable:
    """Rate table for every canonical edge of the current graph."""
    return ChainState(stats, g, prior).rate_table()


def update_rates(table: RateTable, stats: SufficientStats, g_post_flip: Graph,
                 prior: GraphPrior, e_flipped: tuple[int, int]) -> RateTable:
    """Incremental rate maintenance: recompute exactly the 2p-3 entries
    incident to the flipped edge's endpoints; everything else is untouched."""
    i, j = e_flipped
    p = g_post_flip.p
    out = table.copy()
    ks = incident_edge_indices(p, i, j)
    ei, ej = edge_pairs(p)
    for k in ks:
        new = _edge_rate(stats, g_post_flip, prior, (int(ei[k]), int(ej[k])))
        out.rate_sum += new - out.rates[k]
        out.rates[k] = new
    return out


def bd_step(state: ChainState, rng: np.random.Generator):
    """One birth-death event: waiting time, inverse-CDF edge selection over
    canonical order with a single uniform draw, then flip and refresh."""
    if state.rate_sum <= 0.0:
        raise DegenerateChain("all birth/death rates are zero")
    w = WaitingTime(1.0 / state.rate_sum)
    u = rng.random(1)
    done, k = K._bd_chunk(state.stats.U, state.stats.n, state.adj,
                          state.node_lm, state.delta, state.rates,
                          state.edge_on, state.lpb, state.ei, state.ej,
                          state.eidx, u, 0, 1, False, _NO_WEIGHT, _NO_WEIGHT,
                          state.fstate, state.istate)
    e = (int(state.ei[k]), int(state.ej[k]))
    return state, w, e


def rj_step(state: ChainState, prior: GraphPrior, proposal_kind: str,
            rng: np.random.Generator):
    """One reversible-jump iteration (three uniform draws per step)."""
    if proposal_kind not in ("uniform", "two-step"):
        raise ValueError(f"unknown proposal kind {proposal_kind!r}")
    u = rng.random(3)
    K._rj_chunk(state.stats.U, state.stats.n, state.adj, state.node_lm,
                state.delta, state.edge_on, prior.log_birth_ratios(state.p),
                state.ei, state.ej, u, 0, 1, False, _NO_WEIGHT, _NO_WEIGHT,
                state.fstate, state.istate, proposal_kind == "two-step")
    return state


def run_chain(algorithm: str, stats: SufficientStats, prior: GraphPrior,
              config: ChainConfig) -> ChainResult:
    """Execute S birth-death or reversible-jump iterations.

    Post-burn-in states are accumulated into per-edge weight sums with
    W = waiting time (bd) or W = 1 (rj); the trace is recorded every
    checkpoint_every iterations. A chain whose rates all vanish raises
    DegenerateChain carrying the partial result.
    """
    if algorithm not in ("bd", "rj"):
        raise ValueError(f"unknown algorithm {algorithm!r}")
    cfg = config.resolve()
    state = ChainState(stats, cfg.init_graph, prior)
    if algorithm == "bd" and state.rate_sum <= 0.0:
        raise DegenerateChain("all birth/death rates are zero at the start",
                              iteration=0)
    s_total = cfg.iterations
    rng = np.random.default_rng(cfg.seed)
    draws_per_step = 1 if algorithm == "bd" else 3
    uniforms = rng.random(draws_per_step * s_total)
    m = num_edges(stats.p)
    edge_weight = np.zeros(m)
    t_on = np.zeros(m)
    trace: list[TraceRecord] = []
    samples: list[Graph] | None = [] if cfg.thinning > 0 else None
    two_step = cfg.proposal_kind == "two-step"

    boundaries = {s_total, cfg.burn_in}
    boundaries.update(range(cfg.checkpoint_every, s_total, cfg.checkpoint_every))
    if cfg.thinning > 0:
        boundaries.update(range(cfg.burn_in, s_total, cfg.thinning))
    boundaries = sorted(b for b in boundaries if 0 < b <= s_total)

    t0 = time.perf_counter()
    result = ChainResult(p=stats.p, edge_weight_sum=edge_weight,
                         total_weight=0.0, iterations=s_total,
                         burn_in=cfg.burn_in, trace=trace, samples=samples,
                         algorithm=algorithm, seed=cfg.seed)
    done = 0
    for b in boundaries:
        if done == cfg.burn_in:
            t_on[:] = 0.0  # accumulation starts at cumulative weight zero
        accumulate = done >= cfg.burn_in
        n_steps = b - done
        if algorithm == "bd":
            steps, _ = K._bd_chunk(stats.U, stats.n, state.adj, state.node_lm,
                                   state.delta, state.rates, state.edge_on,
                                   state.lpb, state.ei, state.ej, state.eidx,
                                   uniforms, done, n_steps, accumulate,
                                   edge_weight, t_on, state.fstate,
                                   state.istate)
        else:
            steps, _, _ = K._rj_chunk(stats.U, stats.n, state.adj,
                                      state.node_lm, state.delta,
                                      state.edge_on, state.lpb, state.ei,
                                      state.ej, uniforms, 3 * done, n_steps,
                                      accumulate, edge_weight, t_on,
                                      state.fstate, state.istate, two_step)
        done += steps
        wall = time.perf_counter() - t0
        if steps < n_steps:
            trace.append(TraceRecord(done, state.edge_count,
                                     state.total_logmpl, wall))
            _finalize(result, state, edge_weight, t_on)
            raise DegenerateChain(
                f"all rates vanished at iteration {done}", iteration=done,
                partial_result=result)
        if done % cfg.checkpoint_every == 0 or done == s_total:
            trace.append(TraceRecord(done, state.edge_count,
                                     state.total_logmpl, wall))
        if (samples is not None and done >= cfg.burn_in
                and (done - cfg.burn_in) % cfg.thinning == 0):
            samples.append(state.graph)
    _finalize(result, state, edge_weight, t_on)
    return result


def _finalize(result: ChainResult, state: ChainState, edge_weight: np.ndarray,
              t_on: np.ndarray) -> None:
    cum_w = float(state.fstate[2])
    on = state.edge_on
    edge_weight[on] += cum_w - t_on[on]
    t_on[on] = cum_w
    result.total_weight = cum_w


def edge_inclusion(result: ChainResult) -> np.ndarray:
    """Estimated per-edge inclusion probabilities in canonical order."""
    if result.total_weight <= 0.0:
        raise EmptyChain("no post-burn-in weight accumulated")
    probs = result.edge_weight_sum / result.total_weight
    return np.clip(probs, 0.0, 1.0)


def select_graph(probs: np.ndarray, p: int, v: float = 0.5) -> Graph:
    """Median-probability-style selection: keep edges with prob >= v."""
    if not 0.0 < v < 1.0:
        raise ValueError(f"threshold must be in (0, 1), got {v}")
    probs = np.asarray(probs)
    if probs.size != num_edges(p):
        raise ValueError("probability vector has wrong length")
    return Graph.from_edge_vector(p, probs >= v)


def write_trace_csv(trace: list[TraceRecord], path) -> None:
    """Trace CSV: iteration, edge_count, total_logmpl, wall_seconds."""
    with open(path, "w") as fh:
        fh.write("iteration,edge_count,total_logmpl,wall_seconds\n")
        for r in trace:
            fh.write(f"{r.iteration},{r.edge_count},{r.total_logmpl!r},"
                     f"{r.wall_seconds!r}\n")


def read_trace_csv(path) -> list[TraceRecord]:
    out = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "iteration,edge_count,total_logmpl,wall_seconds":
            raise ValueError(f"bad trace header: {header!r}")
        for line in fh:
            it, ec, lm, w = line.strip().split(",")
            out.append(TraceRecord(int(it), int(ec), float(lm), float(w)))
    return out


def write_probs_csv(probs: np.ndarray, p: int, path) -> None:
    """Edge-probability CSV: header `i,j,prob`, 1-based pairs with prob > 0."""
    ei, ej = edge_pairs(p)
    with open(path, "w") as fh:
        fh.write("i,j,prob\n")
        for k in np.flatnonzero(probs > 0.0):
            fh.write(f"{ei[k] + 1},{ej[k] + 1},{float(probs[k])!r}\n")


def read_probs_csv(path, p: int) -> np.ndarray:
    probs = np.zeros(num_edges(p))
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "i,j,prob":
            raise ValueError(f"bad probability header: {header!r}")
        for line in fh:
            i, j, v = line.strip().split(",")
            probs[edge_index(p, int(i) - 1, int(j) - 1)] = float(v)
    return probs
