import numpy as np
import pytest

import mplgraph as m
from mplgraph.graph import edge_index_matrix


def test_num_edges():
    assert m.num_edges(2) == 1
    assert m.num_edges(5) == 10
    assert m.num_edges(100) == 4950


def test_edge_index_lexicographic():
    p = 7
    ei, ej = m.edge_pairs(p)
    for k in range(m.num_edges(p)):
        assert m.edge_index(p, int(ei[k]), int(ej[k])) == k
    # first and last
    assert m.edge_index(p, 0, 1) == 0
    assert m.edge_index(p, p - 2, p - 1) == m.num_edges(p) - 1


def test_edge_index_rejects_bad_pairs():
    with pytest.raises(IndexError):
        m.edge_index(5, 3, 3)
    with pytest.raises(IndexError):
        m.edge_index(5, 4, 2)
    with pytest.raises(IndexError):
        m.edge_index(5, -1, 2)


def test_edge_index_matrix_roundtrip():
    p = 6
    mat = edge_index_matrix(p)
    assert mat[2, 4] == m.edge_index(p, 2, 4) == mat[4, 2]
    assert (np.diag(mat) == -1).all()


def test_incident_edge_indices_count():
    p = 30
    ks = m.incident_edge_indices(p, 3, 17)
    assert ks.size == 2 * p - 3
    assert m.edge_index(p, 3, 17) in ks
    ei, ej = m.edge_pairs(p)
    for k in ks:
        assert 3 in (ei[k], ej[k]) or 17 in (ei[k], ej[k])


def test_graph_construction_and_vector():
    g = m.Graph.from_edges(4, [(0, 1), (2, 3)])
    assert g.edge_count == 2
    assert g.has_edge(0, 1) and g.has_edge(1, 0) is False or g.has_edge(1, 0)
    vec = g.edge_vector()
    assert vec[m.edge_index(4, 0, 1)] and vec[m.edge_index(4, 2, 3)]
    assert m.Graph.from_edge_vector(4, vec) == g


def test_graph_validation():
    adj = np.zeros((3, 3), dtype=bool)
    adj[0, 1] = True  # asymmetric
    with pytest.raises(ValueError):
        m.Graph(3, adj)
    adj2 = np.eye(3, dtype=bool)
    with pytest.raises(ValueError):
        m.Graph(3, adj2)


def test_neighbors_sorted():
    g = m.Graph.from_edges(5, [(0, 4), (0, 2), (0, 1)])
    assert g.neighbors(0).tolist() == [1, 2, 4]


def test_flip_edge_involution():
    g = m.Graph.from_edges(4, [(0, 1)])
    g2 = m.flip_edge(g, (2, 3))
    assert g2.has_edge(2, 3) and not g.has_edge(2, 3)
    assert m.flip_edge(g2, (2, 3)) == g


def test_complete_graph():
    g = m.Graph.complete(5)
    assert g.edge_count == 10
    assert g.edge_vector().all()


def test_prior_ratio():
    prior = m.GraphPrior(beta=0.2)
    r = m.log_prior_ratio(prior, (0, 1), birth=True)
    assert r == pytest.approx(np.log(0.2 / 0.8))
    assert m.log_prior_ratio(prior, (0, 1), birth=False) == pytest.approx(-r)


def test_prior_overrides():
    prior = m.GraphPrior(beta=0.2, overrides={(0, 1): 0.9})
    lb = prior.log_birth_ratios(3)
    assert lb[m.edge_index(3, 0, 1)] == pytest.approx(np.log(9.0))
    assert lb[m.edge_index(3, 0, 2)] == pytest.approx(np.log(0.25))


def test_prior_validation():
    with pytest.raises(ValueError):
        m.GraphPrior(beta=0.0)
    with pytest.raises(ValueError):
        m.GraphPrior(beta=1.0)


def test_edge_list_roundtrip(tmp_path):
    g = m.Graph.from_edges(6, [(0, 5), (1, 2), (3, 4)])
    path = tmp_path / "g.txt"
    m.write_edge_list(g, path)
    text = path.read_text()
    assert text.splitlines()[0] == "p=6"
    assert "1 6" in text  # 1-based pairs
    assert m.read_edge_list(path) == g
