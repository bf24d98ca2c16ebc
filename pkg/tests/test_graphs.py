import networkx as nx
import numpy as np
import pytest

from cartwl.errors import BudgetExceeded, InvalidGraphSpec
from cartwl.graphs import (UNREACHABLE, BinaryRelation, Graph, bfs_distances, cartesian_product, complete, cycle,
                           graph_isomorphic, hamming, hypercube, is_connected, named_graph, path, petersen,
                           random_connected, shrikhande, star)
from oracles import adjacency_lists, bfs


def test_graph_rejects_loops_and_asymmetry():
    adj = np.zeros((2, 2), dtype=bool)
    adj[0, 1] = True
    with pytest.raises(ValueError):
        Graph(2, adj)
    with pytest.raises(ValueError):
        Graph(2, np.eye(2, dtype=bool))


def test_edge_count_is_half_the_ordered_pairs():
    g = hamming(2, 4)
    assert g.edge_count == 48
    assert len(g.ordered_edges()) == 96


@pytest.mark.parametrize("g", [hamming(2, 4), shrikhande()])
def test_srg_16_6(g):
    assert g.n == 16 and g.edge_count == 48
    assert set(g.degrees().tolist()) == {6}


def test_shrikhande_connection_set():
    g = shrikhande()
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    for a in range(4):
        for b in range(4):
            nb = {((v // 4 - a) % 4, (v % 4 - b) % 4) for v in g.neighbors(a * 4 + b)}
            assert nb == conn


def test_complete_one():
    g = complete(1)
    assert g.n == 1 and g.edge_count == 0


def test_named_graph_specs():
    assert named_graph("hamming:2,4") == hamming(2, 4)
    assert named_graph("hamming", 2, 4) == hamming(2, 4)
    assert named_graph("star:3") == star(3)
    assert named_graph("petersen").edge_count == 15
    for bad in ("nope", "hamming:2", "cycle:x", "complete:-1"):
        with pytest.raises(InvalidGraphSpec):
            named_graph(bad)


def test_petersen_is_the_networkx_petersen():
    assert graph_isomorphic(petersen(), Graph.from_edges(10, nx.petersen_graph().edges()))


def test_random_connected_is_deterministic_and_connected():
    a, b = random_connected(9, 42), random_connected(9, 42)
    assert a == b
    assert is_connected(a)
    with pytest.raises(InvalidGraphSpec):
        random_connected(5, -1)


def test_bfs_distances_examples():
    assert bfs_distances(cycle(5)).dist[0, 2] == 2
    d = bfs_distances(hamming(2, 4))
    off = d.dist[~np.eye(16, dtype=bool)]
    assert set(off.tolist()) == {1, 2} and d.diameter == 2
    assert bfs_distances(Graph.empty(2)).dist[0, 1] == UNREACHABLE


@pytest.mark.parametrize("g", [path(6), petersen(), random_connected(10, 3), hypercube(3)])
def test_bfs_matches_reference(g):
    assert bfs_distances(g).dist.tolist() == bfs(adjacency_lists(g))


def test_is_connected_examples():
    assert is_connected(path(4))
    assert not is_connected(Graph.empty(2))
    assert is_connected(hamming(3, 2))


def test_binary_relation_views_agree():
    r = BinaryRelation.from_pairs(3, [(0, 1), (2, 2)])
    assert r.pairs == {(0, 1), (2, 2)}
    assert (0, 1) in r and (1, 0) not in r
    assert len(r) == 2
    assert r.transpose().pairs == {(1, 0), (2, 2)}


def test_product_of_two_k2_is_the_square():
    g, ps = cartesian_product([complete(2), complete(2)])
    assert graph_isomorphic(g, cycle(4))
    # vertices 00, 01, 10, 11: edges along the second coordinate have color 1
    assert ps.edge_color(0, 1) == 1 and ps.edge_color(0, 2) == 0
    assert ps.edge_color(1, 3) == 0 and ps.edge_color(2, 3) == 1


def test_product_k4_k4_is_hamming():
    g, _ = cartesian_product([complete(4), complete(4)])
    assert g == hamming(2, 4)


def test_product_k3_k5_edge_count():
    g, _ = cartesian_product([complete(3), complete(5)])
    assert g.n == 15 and g.edge_count == 45


def test_product_edge_rule():
    fs = [path(3), cycle(4), complete(2)]
    g, ps = cartesian_product(fs)
    c = ps.coordinates
    for u in range(g.n):
        for v in range(g.n):
            diff = np.flatnonzero(c[u] != c[v])
            expect = len(diff) == 1 and fs[diff[0]].adjacency[c[u][diff[0]], c[v][diff[0]]]
            assert g.adjacency[u, v] == expect
            assert (ps.edge_factor[u, v] >= 0) == expect
    assert ps.index_of(c[17]) == 17


def test_product_needs_factors():
    with pytest.raises(ValueError):
        cartesian_product([])


def test_graph_isomorphic_examples():
    assert graph_isomorphic(cycle(4), cartesian_product([complete(2), complete(2)])[0])
    assert not graph_isomorphic(path(3), cycle(3))
    assert not graph_isomorphic(shrikhande(), hamming(2, 4), max_n=16)
    with pytest.raises(BudgetExceeded):
        graph_isomorphic(shrikhande(), hamming(2, 4))


def test_graph_isomorphic_agrees_with_networkx():
    rng = np.random.default_rng(5)
    for _ in range(40):
        g = random_connected(7, int(rng.integers(1000)))
        h = g.relabeled(rng.permutation(7)) if rng.random() < 0.5 else random_connected(7, int(rng.integers(1000)))
        expect = nx.is_isomorphic(nx.from_numpy_array(g.adjacency.astype(int)),
                                  nx.from_numpy_array(h.adjacency.astype(int)))
        assert graph_isomorphic(g, h) == expect
