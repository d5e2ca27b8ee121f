import numpy as np
import pytest

import mplgraph as m


def brute_auc_roc(truth, scores):
    pos = scores[truth]
    neg = scores[~truth]
    total = 0.0
    for a in pos:
        for b in neg:
            if a > b:
                total += 1.0
            elif a == b:
                total += 0.5
    return total / (pos.size * neg.size)


def brute_auc_pr(truth, scores):
    npos = truth.sum()
    total = 0.0
    prev_recall = 0.0
    for v in sorted(set(scores), reverse=True):
        pred = scores >= v
        tp = (pred & truth).sum()
        precision = tp / pred.sum()
        recall = tp / npos
        total += precision * (recall - prev_recall)
        prev_recall = recall
    return total


def brute_f1(truth, scores, v):
    pred = scores >= v
    tp = (pred & truth).sum()
    fp = (pred & ~truth).sum()
    fn = (~pred & truth).sum()
    return 0.0 if 2 * tp + fp + fn == 0 else 2 * tp / (2 * tp + fp + fn)


def random_instance(rng):
    size = int(rng.integers(5, 501))
    truth = rng.random(size) < rng.uniform(0.1, 0.9)
    if not truth.any():
        truth[0] = True
    if truth.all():
        truth[0] = False
    # quantize some scores to force ties
    scores = np.round(rng.random(size), int(rng.integers(1, 4)))
    return m.ScoredEdges(truth, scores)


def test_against_brute_force_oracles():
    rng = np.random.default_rng(123)
    for _ in range(100):
        se = random_instance(rng)
        assert m.auc_roc(se) == pytest.approx(
            brute_auc_roc(se.truth, se.scores), abs=1e-12)
        assert m.auc_pr(se) == pytest.approx(
            brute_auc_pr(se.truth, se.scores), abs=1e-12)
        for v in (0.3, 0.5, 0.7):
            assert m.f1_at(se, v) == pytest.approx(
                brute_f1(se.truth, se.scores, v), abs=1e-12)
        pp, pm = m.pr_plus_minus(se)
        assert pp == pytest.approx(se.scores[se.truth].mean(), abs=1e-12)
        assert pm == pytest.approx(se.scores[~se.truth].mean(), abs=1e-12)


def test_perfect_and_inverted_separation():
    truth = np.array([True, True, False, False])
    se = m.ScoredEdges(truth, np.array([0.9, 0.8, 0.2, 0.1]))
    assert m.auc_roc(se) == 1.0
    assert m.auc_pr(se) == 1.0
    assert m.f1_at(se, 0.5) == 1.0
    se_bad = m.ScoredEdges(truth, np.array([0.1, 0.2, 0.8, 0.9]))
    assert m.auc_roc(se_bad) == 0.0


def test_constant_scores_auc():
    truth = np.array([True, False, True, False, False])
    se = m.ScoredEdges(truth, np.full(5, 0.5))
    assert m.auc_roc(se) == pytest.approx(0.5)
    assert m.auc_pr(se) == pytest.approx(0.4)  # prevalence


def test_degenerate_labels_raise():
    with pytest.raises(m.DegenerateLabels):
        m.auc_roc(m.ScoredEdges(np.array([True, True]), np.array([0.5, 0.6])))
    with pytest.raises(m.DegenerateLabels):
        m.auc_pr(m.ScoredEdges(np.array([False, False]),
                               np.array([0.5, 0.6])))


def test_scores_validation():
    with pytest.raises(ValueError):
        m.ScoredEdges(np.array([True, False]), np.array([0.5, 1.2]))
    with pytest.raises(ValueError):
        m.ScoredEdges(np.array([True, False]), np.array([0.5]))


def test_f1_inclusive_threshold():
    truth = np.array([True, False])
    se = m.ScoredEdges(truth, np.array([0.5, 0.1]))
    assert m.f1_at(se, 0.5) == 1.0  # score exactly at v counts as predicted
    with pytest.raises(ValueError):
        m.f1_at(se, 1.0)


def test_convergence_time_band():
    trace = [(0.0, 0.5), (1.0, 0.795), (2.0, 0.81), (3.0, 0.80)]
    # value at t=1 is within 0.01 of the final 0.80 -> convergence at t=1
    assert m.convergence_time(trace) == 1.0
    # an excursion resets convergence to after the excursion
    trace2 = trace + [(4.0, 0.5), (5.0, 0.80)]
    assert m.convergence_time(trace2) == 5.0
    # constant trace converges at its first timestamp
    assert m.convergence_time([(2.0, 1.0), (3.0, 1.0)]) == 2.0
    with pytest.raises(ValueError):
        m.convergence_time([])


def test_report_csv_roundtrip(tmp_path):
    rows = [{"auc_roc": 0.9, "auc_pr": 0.85, "f1": 0.8, "pr_plus": 0.7,
             "pr_minus": 0.05, "conv_seconds": 1.25, "iterations": 1000,
             "seed": 7},
            {"auc_roc": 1.0, "auc_pr": 1.0, "f1": 1.0, "pr_plus": 0.99,
             "pr_minus": 0.0, "conv_seconds": None, "iterations": 50,
             "seed": 8}]
    path = tmp_path / "report.csv"
    m.write_report_csv(rows, path)
    header = path.read_text().splitlines()[0]
    assert header == ("auc_roc,auc_pr,f1,pr_plus,pr_minus,conv_seconds,"
                      "iterations,seed")
    assert m.read_report_csv(path) == rows
