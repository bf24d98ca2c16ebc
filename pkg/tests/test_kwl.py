import itertools

import numpy as np
import pytest

from cartwl._partition import is_coarser_or_equal, same_partition
from cartwl.cc import algebraically_isomorphic, wl
from cartwl.corpus import atlas_graphs
from cartwl.errors import BudgetExceeded
from cartwl.graphs import complete, cycle, hamming, path, petersen, random_connected, shrikhande, star
from cartwl.kwl import k_wl, pair_partition, project, project_by_images, wl_m_closed, wl_m_equivalent
from oracles import adjacency_lists, naive_k_wl, same_partition as dict_same_partition


def equality_patterns(n, k):
    seen = set()
    for x in itertools.product(range(n), repeat=k):
        seen.add(tuple(x[i] == x[j] for i in range(k) for j in range(k)))
    return len(seen)


@pytest.mark.parametrize("n,k", [(4, 3), (5, 4), (3, 3), (2, 4)])
def test_complete_graph_rank_is_atomic(n, k):
    assert k_wl(complete(n), k).rank == equality_patterns(n, k)


@pytest.mark.parametrize("g", [path(4), cycle(5), star(3), random_connected(6, 2), random_connected(5, 9)])
def test_three_wl_matches_reference(g):
    kc = k_wl(g, 3)
    ref = naive_k_wl(adjacency_lists(g), 3)
    tuples = list(itertools.product(range(g.n), repeat=3))
    mine = {x: int(c) for x, c in zip(tuples, kc.color)}
    assert dict_same_partition(mine, ref)


def test_hamming_and_shrikhande_traces():
    h, s = hamming(2, 4), shrikhande()
    assert k_wl(h, 2).trace == k_wl(s, 2).trace
    a, b = k_wl(h, 3), k_wl(s, 3)
    assert a.trace != b.trace
    # ranks from the dictionary-based reference refinement
    assert (a.rank, b.rank) == (15, 31)


def test_trace_ends_at_the_final_rank():
    kc = k_wl(petersen(), 3)
    assert kc.trace[-1].rank == kc.rank
    assert list(kc.trace[-1].frequencies) == sorted(kc.frequencies().tolist())


def test_projection_of_two_wl_is_the_closure():
    for g in (petersen(), path(5), random_connected(7, 4)):
        assert same_partition(pair_partition(k_wl(g, 2)), wl(g).color)


def test_projection_of_three_wl_refines_the_closure():
    for g in atlas_graphs(5, min_n=2):
        assert is_coarser_or_equal(wl(g).color, pair_partition(k_wl(g, 3)))


def test_hamming_three_projection_equals_closure():
    g = hamming(2, 4)
    assert same_partition(pair_partition(k_wl(g, 3)), wl(g).color)


@pytest.mark.parametrize("K", [[1], [2], [1, 2], [1, 3], [2, 3], [1, 2, 3]])
def test_padded_projection_matches_class_images(K):
    for g in (path(4), star(3), random_connected(5, 1)):
        kc = k_wl(g, 3)
        assert same_partition(project(kc, K), project_by_images(kc, K))


def test_bad_index_sets():
    kc = k_wl(path(3), 2)
    for K in ([], [0], [3], [2, 1], [1, 1]):
        with pytest.raises(ValueError):
            project(kc, K)
    with pytest.raises(ValueError):
        k_wl(path(3), 1)


def test_equivalence_examples():
    assert wl_m_equivalent(shrikhande(), hamming(2, 4), 2)
    assert not wl_m_equivalent(shrikhande(), hamming(2, 4), 3)
    for m in (2, 3, 4):
        assert wl_m_equivalent(petersen() if m < 4 else path(6), petersen() if m < 4 else path(6), m)


def test_equivalence_for_m_2_agrees_with_algebraic_isomorphism():
    graphs = [g for g in atlas_graphs(6, min_n=6)][::4]
    for a, b in itertools.combinations(graphs[:30], 2):
        alg = algebraically_isomorphic(wl(a), wl(b), tags=("E",)) is not None
        assert wl_m_equivalent(a, b, 2) == alg


def test_equivalence_under_relabeling():
    rng = np.random.default_rng(1)
    g = random_connected(7, 3)
    for _ in range(3):
        h = g.relabeled(rng.permutation(7))
        assert k_wl(g, 3).trace == k_wl(h, 3).trace
        assert wl_m_equivalent(g, h, 3)


def test_closedness_examples():
    assert wl_m_closed(hamming(2, 4), 3)
    assert wl_m_closed(path(5), 2)
    g = random_connected(20, 0)
    assert wl(g).rank == 400
    assert wl_m_closed(g, 6)


def test_closedness_shortcut_agrees_with_the_full_run():
    for g in (path(5), random_connected(6, 3)):
        assert wl_m_closed(g, 4, shortcut=False) == wl_m_closed(g, 4)


def test_budget_refusal_names_the_tuple_count():
    with pytest.raises(BudgetExceeded) as info:
        k_wl(random_connected(20, 1), 7)
    assert info.value.required == 20**7
    with pytest.raises(BudgetExceeded):
        wl_m_equivalent(path(10), path(10), 4, budget=1000)


def test_json_and_binary_export(tmp_path):
    kc = k_wl(path(3), 3)
    d = kc.to_json()
    assert d["n"] == 3 and d["k"] == 3 and d["rank"] == kc.rank and d["trace"]
    out = tmp_path / "colors.bin"
    kc.write_colors(out)
    raw = out.read_bytes()
    assert len(raw) == 4 * 27
    assert np.array_equal(np.frombuffer(raw, dtype="<u4"), kc.color)
