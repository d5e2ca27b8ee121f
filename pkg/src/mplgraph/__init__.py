"""Bayesian structure learning for Gaussian graphical models via marginal
pseudo-likelihood MCMC (birth-death and reversible-jump chains)."""

from .errors import (ConstantColumn, DegenerateChain, DegenerateLabels,
                     EmptyChain, MplGraphError, NonConvergence,
                     PositiveDefinitenessViolated, SampleSizeTooSmall)
from .graph import (Graph, GraphPrior, edge_index, edge_pairs, flip_edge,
                    incident_edge_indices, log_prior_ratio, num_edges,
                    read_edge_list, write_edge_list)
from .gwishart import (GWishartParams, estimate_precision, read_precision_csv,
                       sample_gwishart, sample_wishart, write_precision_csv)
from .metrics import (ScoredEdges, auc_pr, auc_roc, convergence_time, f1_at,
                      pr_plus_minus, read_report_csv, write_report_csv)
from .mpl import (MplCache, SufficientStats, build_cache, log_bayes_factor,
                  log_node_mpl, refresh_cache, total_log_pseudo_likelihood)
from .samplers import (ChainConfig, ChainResult, ChainState, RateTable,
                       TraceRecord, WaitingTime, bd_step, compute_all_rates,
                       edge_inclusion, read_probs_csv, read_trace_csv,
                       rj_step, run_chain, select_graph, update_rates,
                       write_probs_csv, write_trace_csv)
from .simulate import (InstanceSpec, default_n_obs, gen_graph, gen_instance,
                       n_edges_for, nonparanormal_transform, read_data_csv,
                       read_manifest, write_data_csv, write_manifest)

__version__ = "0.1.0"

__all__ = [
    "ChainConfig", "ChainResult", "ChainState", "ConstantColumn",
    "DegenerateChain", "DegenerateLabels", "EmptyChain", "GWishartParams",
    "Graph", "GraphPrior", "InstanceSpec", "MplCache", "MplGraphError",
    "NonConvergence", "PositiveDefinitenessViolated", "RateTable",
    "SampleSizeTooSmall", "ScoredEdges", "SufficientStats", "TraceRecord",
    "WaitingTime", "auc_pr", "auc_roc", "bd_step", "build_cache",
    "compute_all_rates", "convergence_time", "default_n_obs",
    "edge_inclusion", "edge_index", "edge_pairs", "estimate_precision",
    "f1_at", "flip_edge", "gen_graph", "gen_instance",
    "incident_edge_indices", "log_bayes_factor", "log_node_mpl",
    "log_prior_ratio", "n_edges_for", "nonparanormal_transform", "num_edges",
    "pr_plus_minus", "read_data_csv", "read_edge_list", "read_manifest",
    "read_precision_csv", "read_probs_csv", "read_report_csv",
    "read_trace_csv", "refresh_cache", "rj_step", "run_chain",
    "sample_gwishart", "sample_wishart", "select_graph",
    "total_log_pseudo_likelihood", "update_rates", "write_data_csv",
    "write_edge_list", "write_manifest", "write_precision_csv",
    "write_probs_csv", "write_report_csv", "write_trace_csv",
]
