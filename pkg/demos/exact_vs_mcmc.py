"""Validate both chains against brute force: on p=4 all 64 graphs can be
enumerated, so the exact pseudo-posterior edge marginals are available and the
samplers should land on them.

Run with: python3 demos/exact_vs_mcmc.py
"""

import numpy as np
from scipy.special import logsumexp

import mplgraph as m

rng = np.random.default_rng(0)
p = 4
x = rng.standard_normal((80, p))
stats = m.SufficientStats.from_data(x)
prior = m.GraphPrior()

# Exact marginals: weight every graph by prior x pseudo-likelihood.
ne = m.num_edges(p)
lb = np.log(prior.beta) - np.log1p(-prior.beta)
log_w = np.empty(2 ** ne)
vecs = np.zeros((2 ** ne, ne), dtype=bool)
for b in range(2 ** ne):
    vec = np.array([(b >> t) & 1 for t in range(ne)], dtype=bool)
    g = m.Graph.from_edge_vector(p, vec)
    log_w[b] = m.total_log_pseudo_likelihood(stats, g) + lb * vec.sum()
    vecs[b] = vec
exact = np.exp(log_w - logsumexp(log_w)) @ vecs

print("edge      exact     bd        rj")
estimates = {}
for alg, iters in (("bd", 200_000), ("rj", 400_000)):
    res = m.run_chain(alg, stats, prior,
                      m.ChainConfig(iterations=iters, seed=3))
    estimates[alg] = m.edge_inclusion(res)

ei, ej = m.edge_pairs(p)
for k in range(ne):
    print(f"({ei[k]}, {ej[k]})    {exact[k]:.4f}    "
          f"{estimates['bd'][k]:.4f}    {estimates['rj'][k]:.4f}")
for alg in ("bd", "rj"):
    print(f"{alg} max |error|: {np.max(np.abs(estimates[alg] - exact)):.5f}")
