"""Built-in graph corpus: all small graphs, seeded random graphs, named graphs and random products."""

from __future__ import annotations

import itertools
from functools import lru_cache

import networkx as nx
import numpy as np

from .graphs import (Graph, cartesian_product, complete, cycle, graph_isomorphic, hamming, hypercube,
                     is_connected, path, petersen, random_connected, shrikhande, star)

ATLAS_MAX_N = 7
PRIME_ORACLE_MAX_N = 8


def _from_nx(h: nx.Graph) -> Graph:
    return Graph.from_edges(h.number_of_nodes(), h.edges())


@lru_cache(maxsize=None)
def atlas_graphs(max_n: int = ATLAS_MAX_N, min_n: int = 1) -> tuple[Graph, ...]:
    """Every graph on ``min_n..max_n`` vertices up to isomorphism (``max_n <= 7``)."""
    if max_n > ATLAS_MAX_N:
        raise ValueError(f"the graph atlas stops at {ATLAS_MAX_N} vertices")
    return tuple(_from_nx(h) for h in nx.graph_atlas_g() if min_n <= h.number_of_nodes() <= max_n)


def named_corpus() -> list[tuple[str, Graph]]:
    return [
        ("hamming:2,4", hamming(2, 4)),
        ("shrikhande", shrikhande()),
        ("hypercube:3", hypercube(3)),
        ("petersen", petersen()),
        ("cycle:5", cycle(5)),
        ("cycle:6", cycle(6)),
        ("path:5", path(5)),
        ("complete:5", complete(5)),
        ("star:3", star(3)),
    ]


def random_graphs(n: int, count: int, seed: int = 0) -> list[Graph]:
    return [random_connected(n, seed + i) for i in range(count)]


def corpus(max_n: int = 8, seed: int = 0, random_count: int = 20) -> list[tuple[str, Graph]]:
    """Atlas graphs up to 7 vertices, seeded random connected graphs on 8, and the named graphs."""
    out = [(f"atlas:{i}", g) for i, g in enumerate(atlas_graphs(min(max_n, ATLAS_MAX_N)))]
    if max_n >= 8:
        out += [(f"random_connected:8,{seed + i}", g) for i, g in enumerate(random_graphs(8, random_count, seed))]
    out += [(name, g) for name, g in named_corpus() if g.n <= max_n]
    return out


# --- primality for small graphs, independent of the factorizer ---------------------


@lru_cache(maxsize=None)
def _connected_graphs_on(m: int) -> tuple[Graph, ...]:
    pairs = list(itertools.combinations(range(m), 2))
    out = []
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(m, [p for b, p in enumerate(pairs) if mask >> b & 1])
        if is_connected(g):
            out.append(g)
    return tuple(out)


def is_prime_small(g: Graph) -> bool:
    """Cartesian primality of a connected graph on at most 8 vertices.

    Any nontrivial product of order at most 8 has a factor of order 2, that is
    ``K_2``, so ``g`` is composite exactly when it is ``K_2`` times a connected
    graph on ``n / 2`` vertices.
    """
    if g.n > PRIME_ORACLE_MAX_N:
        raise ValueError(f"small primality test covers at most {PRIME_ORACLE_MAX_N} vertices")
    if not is_connected(g) or g.n < 2:
        raise ValueError("primality is defined here for connected graphs on at least 2 vertices")
    if g.n % 2:
        return True
    k2 = complete(2)
    for h in _connected_graphs_on(g.n // 2):
        if h.n < 2:
            continue
        prod, _ = cartesian_product([k2, h])
        if prod.edge_count == g.edge_count and graph_isomorphic(prod, g):
            return False
    return True


def random_prime_graph(rng: np.random.Generator, n: int) -> Graph:
    while True:
        g = random_connected(n, int(rng.integers(2**63)))
        if is_prime_small(g):
            return g


def random_products(count: int, seed: int = 0, max_factor: int = 8,
                    max_points: int = 512) -> list[list[Graph]]:
    """Seeded lists of 2 or 3 connected prime factors on 2..max_factor vertices each.

    Factor orders are redrawn until the product has at most ``max_points`` vertices.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        k = int(rng.integers(2, 4))
        while True:
            sizes = rng.integers(2, max_factor + 1, size=k)
            if int(np.prod(sizes)) <= max_points:
                break
        out.append([random_prime_graph(rng, int(s)) for s in sizes])
    return out


def match_up_to_isomorphism(a: list[Graph], b: list[Graph]) -> bool:
    """Whether two graph lists are equal as multisets of isomorphism classes."""
    if len(a) != len(b):
        return False
    left = list(b)
    for g in a:
        for i, h in enumerate(left):
            if g.n == h.n and g.edge_count == h.edge_count and graph_isomorphic(g, h):
                del left[i]
                break
        else:
            return False
    return True


def product_check_instances() -> list[tuple[str, list[Graph]]]:
    """Products of primes mixing blocks of WL-equivalent factors with other factors."""
    k2, k3, p3, c5 = complete(2), complete(3), path(3), cycle(5)
    return [
        ("K3 x K3 x C5", [k3, k3, c5]),
        ("K3 x K5", [k3, complete(5)]),
        ("K4 x K4", [complete(4), complete(4)]),
        ("K2 x K2 x K3", [k2, k2, k3]),
        ("K3 x K3 x K2", [k3, k3, k2]),
        ("K2 x K2 x C5", [k2, k2, c5]),
        ("P3 x P3 x K2", [p3, p3, k2]),
        ("C5 x K2", [c5, k2]),
        ("P3 x K3", [p3, k3]),
        ("C5 x C5 x K2", [c5, c5, k2]),
    ]
