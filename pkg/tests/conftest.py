import itertools

import numpy as np
import pytest
from scipy.special import logsumexp

import mplgraph as m


def enumerate_posterior(stats, prior):
    """Exact pseudo-posterior over all graphs on stats.p nodes.

    Returns (edge_marginals, log_weights, edge_vectors); feasible only for
    tiny p (2^(p(p-1)/2) graphs).
    """
    p = stats.p
    ne = m.num_edges(p)
    lb = np.log(prior.beta) - np.log1p(-prior.beta)
    log_w = np.empty(2 ** ne)
    vecs = np.zeros((2 ** ne, ne), dtype=bool)
    for b in range(2 ** ne):
        vec = np.array([(b >> t) & 1 for t in range(ne)], dtype=bool)
        g = m.Graph.from_edge_vector(p, vec)
        log_w[b] = (m.total_log_pseudo_likelihood(stats, g)
                    + lb * int(vec.sum()))
        vecs[b] = vec
    w = np.exp(log_w - logsumexp(log_w))
    return w @ vecs, log_w, vecs


def random_graph(p, ne, rng):
    ks = rng.choice(m.num_edges(p), size=ne, replace=False)
    vec = np.zeros(m.num_edges(p), dtype=bool)
    vec[ks] = True
    return m.Graph.from_edge_vector(p, vec)


@pytest.fixture
def small_stats():
    rng = np.random.default_rng(42)
    x = rng.standard_normal((60, 5))
    return m.SufficientStats.from_data(x)
