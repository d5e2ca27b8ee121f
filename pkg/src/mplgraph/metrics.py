"""Graph-recovery scoring over canonical edge vectors.

Thresholding is inclusive (score >= v counts as predicted) everywhere,
matching graph selection. AUC-PR is the average-precision estimator: the sum
over distinct descending thresholds of precision times the recall increment.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .errors import DegenerateLabels


@dataclass
class ScoredEdges:
    """Truth indicator and scores over canonical edge order."""

    truth: np.ndarray
    scores: np.ndarray

    def __post_init__(self):
        self.truth = np.asarray(self.truth, dtype=bool)
        self.scores = np.asarray(self.scores, dtype=np.float64)
        if self.truth.shape != self.scores.shape or self.truth.ndim != 1:
            raise ValueError("truth and scores must be equal-length vectors")
        if np.any(self.scores < 0) or np.any(self.scores > 1):
            raise ValueError("scores must lie in [0, 1]")


def _counts(se: ScoredEdges) -> tuple[int, int]:
    npos = int(se.truth.sum())
    return npos, se.truth.size - npos


def auc_roc(se: ScoredEdges) -> float:
    """Area under the ROC curve; the tie-corrected rank statistic."""
    npos, nneg = _counts(se)
    if npos == 0 or nneg == 0:
        raise DegenerateLabels("need at least one positive and one negative")
    ranks = rankdata(se.scores, method="average")
    return float((ranks[se.truth].sum() - npos * (npos + 1) / 2.0)
                 / (npos * nneg))


def auc_pr(se: ScoredEdges) -> float:
    """Average precision over distinct descending score thresholds."""
    npos, _ = _counts(se)
    if npos == 0:
        raise DegenerateLabels("need at least one positive")
    order = np.argsort(-se.scores, kind="stable")
    scores = se.scores[order]
    truth = se.truth[order]
    tp = np.cumsum(truth)
    idx = np.arange(scores.size)
    # last position of each distinct-threshold block
    last = np.flatnonzero(np.append(scores[1:] != scores[:-1], True))
    tp_b = tp[last]
    n_b = idx[last] + 1
    recall = tp_b / npos
    precision = tp_b / n_b
    d_recall = np.diff(np.concatenate(([0.0], recall)))
    return float(np.sum(precision * d_recall))


def f1_at(se: ScoredEdges, v: float = 0.5) -> float:
    """F1 of the thresholded prediction set (score >= v); 0 when undefined."""
    if not 0.0 < v < 1.0:
        raise ValueError(f"threshold must be in (0, 1), got {v}")
    pred = se.scores >= v
    tp = int((pred & se.truth).sum())
    fp = int((pred & ~se.truth).sum())
    fn = int((~pred & se.truth).sum())
    if 2 * tp + fp + fn == 0:
        return 0.0
    return 2.0 * tp / (2 * tp + fp + fn)


def pr_plus_minus(se: ScoredEdges) -> tuple[float, float]:
    """Mean score over true edges and over true non-edges."""
    npos, nneg = _counts(se)
    if npos == 0 or nneg == 0:
        raise DegenerateLabels("need at least one positive and one negative")
    return (float(se.scores[se.truth].mean()),
            float(se.scores[~se.truth].mean()))


def convergence_time(trace) -> float:
    """Earliest recorded time from which every later value stays within 0.01
    (absolute) of the final value."""
    trace = list(trace)
    if not trace:
        raise ValueError("trace must be non-empty")
    times = np.array([t for t, _ in trace])
    vals = np.array([v for _, v in trace])
    final = vals[-1]
    inside = np.abs(vals - final) <= 0.01 + 1e-12
    # last index before which some value leaves the band
    bad = np.flatnonzero(~inside)
    start = 0 if bad.size == 0 else bad[-1] + 1
    return float(times[start])


def write_report_csv(rows: list[dict], path) -> None:
    """Metrics report CSV, one row per (instance, algorithm, replication)."""
    cols = ["auc_roc", "auc_pr", "f1", "pr_plus", "pr_minus", "conv_seconds",
            "iterations", "seed"]
    with open(path, "w") as fh:
        fh.write(",".join(cols) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row.get(c)) for c in cols) + "\n")


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def read_report_csv(path) -> list[dict]:
    with open(path) as fh:
        cols = fh.readline().strip().split(",")
        out = []
        for line in fh:
            vals = line.strip().split(",")
            row = {}
            for c, v in zip(cols, vals):
                if v == "":
                    row[c] = None
                elif c in ("iterations", "seed"):
                    row[c] = int(v)
                else:
                    row[c] = float(v)
            out.append(row)
    return out
