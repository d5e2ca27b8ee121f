"""End-to-end walkthrough: simulate a sparse instance, run the birth-death
chain, and score the recovered graph against the truth.

Run with: python3 demos/quickstart.py
"""

import numpy as np

import mplgraph as m

# A p=10 random sparse instance: 5 true edges, 350 observations.
spec = m.InstanceSpec(p=10, graph_kind="random", density_regime="sparse",
                      n=350, seed=1)
g_true, k_true, x = m.gen_instance(spec)
print(f"truth: {g_true} with edges {g_true.edges()}")

# The sampler only ever sees (n, p, X'X).
stats = m.SufficientStats.from_data(x)
prior = m.GraphPrior(beta=0.2)

result = m.run_chain("bd", stats, prior,
                     m.ChainConfig(iterations=50_000, seed=7))
probs = m.edge_inclusion(result)

print("\nedge-inclusion probabilities (true edges marked *):")
ei, ej = m.edge_pairs(10)
for k in np.argsort(-probs)[:10]:
    star = "*" if g_true.has_edge(int(ei[k]), int(ej[k])) else " "
    print(f"  ({ei[k]}, {ej[k]}) {star} {probs[k]:.3f}")

g_hat = m.select_graph(probs, 10, v=0.5)
se = m.ScoredEdges(g_true.edge_vector(), probs)
print(f"\nselected: {g_hat}")
print(f"AUC-ROC {m.auc_roc(se):.3f}  AUC-PR {m.auc_pr(se):.3f}  "
      f"F1@0.5 {m.f1_at(se):.3f}")
