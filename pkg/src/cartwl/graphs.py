"""Simple undirected graphs, distances, named families and the Cartesian product."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import BudgetExceeded, InvalidGraphSpec

UNREACHABLE = -1


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """A finite simple undirected graph on vertices ``0..n-1``."""

    n: int
    adjacency: np.ndarray

    def __post_init__(self):
        adj = np.asarray(self.adjacency, dtype=bool)
        if adj.shape != (self.n, self.n):
            raise ValueError(f"adjacency must be {self.n}x{self.n}, got {adj.shape}")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diagonal(adj)):
            raise ValueError("graph must not contain loops")
        object.__setattr__(self, "adjacency", _frozen(adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u, v] = adj[v, u] = True
        return cls(n, adj)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, np.zeros((n, n), dtype=bool))

    @cached_property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Unordered edges as pairs ``u < v`` in lexicographic order."""
        us, vs = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(us.tolist(), vs.tolist()))

    def ordered_edges(self) -> np.ndarray:
        """All ordered adjacent pairs, shape ``(2|E|, 2)``, row-major order."""
        return np.argwhere(self.adjacency)

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self.adjacency[v]).tolist()

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def relabeled(self, perm: Sequence[int]) -> "Graph":
        """The graph with vertex ``v`` renamed to ``perm[v]``."""
        perm = np.asarray(perm)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        return Graph(self.n, self.adjacency[np.ix_(inv, inv)])

    def induced(self, vertices: Sequence[int]) -> "Graph":
        idx = np.asarray(vertices, dtype=np.int64)
        return Graph(len(idx), self.adjacency[np.ix_(idx, idx)])

    def edge_relation(self) -> "BinaryRelation":
        return BinaryRelation(self.n, self.adjacency)

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.adjacency, other.adjacency)
        )

    def __hash__(self):
        return hash((self.n, np.packbits(self.adjacency).tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"


@dataclass(frozen=True, eq=False)
class BinaryRelation:
    """A relation on ``{0..n-1}``; dense boolean matrix with a set view."""

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=bool)
        if m.shape != (self.n, self.n):
            raise ValueError(f"relation matrix must be {self.n}x{self.n}")
        object.__setattr__(self, "matrix", _frozen(m))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "BinaryRelation":
        m = np.zeros((n, n), dtype=bool)
        for a, b in pairs:
            m[a, b] = True
        return cls(n, m)

    @classmethod
    def identity(cls, n: int) -> "BinaryRelation":
        return cls(n, np.eye(n, dtype=bool))

    @classmethod
    def full(cls, n: int) -> "BinaryRelation":
        return cls(n, np.ones((n, n), dtype=bool))

    @cached_property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(map(tuple, np.argwhere(self.matrix).tolist()))

    def __contains__(self, pair) -> bool:
        a, b = pair
        return bool(self.matrix[a, b])

    def __len__(self) -> int:
        return int(self.matrix.sum())

    def transpose(self) -> "BinaryRelation":
        return BinaryRelation(self.n, self.matrix.T)

    def __and__(self, other: "BinaryRelation") -> "BinaryRelation":
        return BinaryRelation(self.n, self.matrix & other.matrix)

    def __or__(self, other: "BinaryRelation") -> "BinaryRelation":
        return BinaryRelation(self.n, self.matrix | other.matrix)

    def __eq__(self, other):
        return (
            isinstance(other, BinaryRelation)
            and self.n == other.n
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.n, np.packbits(self.matrix).tobytes()))


@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    dist: np.ndarray  # UNREACHABLE marks pairs in different components

    @property
    def diameter(self) -> int:
        return int(self.dist.max()) if self.n else 0

    def relation(self, d: int) -> BinaryRelation:
        """The distance-``d`` relation ``{(u, v) : dist(u, v) = d}``."""
        return BinaryRelation(self.n, self.dist == d)

    def __getitem__(self, uv):
        return int(self.dist[uv])


def bfs_distances(g: Graph) -> DistanceMatrix:
    if g.n == 0:
        return DistanceMatrix(0, _frozen(np.zeros((0, 0), dtype=np.int64)))
    d = shortest_path(csr_matrix(g.adjacency.astype(np.int8)), unweighted=True, directed=False)
    out = np.where(np.isinf(d), UNREACHABLE, d).astype(np.int64)
    return DistanceMatrix(g.n, _frozen(out))


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    count, _ = connected_components(csr_matrix(g.adjacency.astype(np.int8)), directed=False)
    return count == 1


def components(g: Graph) -> np.ndarray:
    """Component label of each vertex; labels ordered by smallest vertex."""
    if g.n == 0:
        return np.zeros(0, dtype=np.int64)
    _, labels = connected_components(csr_matrix(g.adjacency.astype(np.int8)), directed=False)
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    rank = np.empty(len(order), dtype=np.int64)
    rank[order] = np.arange(len(order))
    return rank[labels]


# --- named graphs -------------------------------------------------------------


def complete(n: int) -> Graph:
    return Graph(n, ~np.eye(n, dtype=bool))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidGraphSpec(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise InvalidGraphSpec(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def hamming(d: int, q: int) -> Graph:
    if d < 1 or q < 1:
        raise InvalidGraphSpec(f"hamming needs d, q >= 1, got ({d}, {q})")
    coords = np.array(list(itertools.product(range(q), repeat=d)), dtype=np.int64)
    diff = (coords[:, None, :] != coords[None, :, :]).sum(axis=2)
    return Graph(len(coords), diff == 1)


def hypercube(d: int) -> Graph:
    return hamming(d, 2)


def shrikhande() -> Graph:
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    adj = np.zeros((16, 16), dtype=bool)
    for a, b in itertools.product(range(4), repeat=2):
        for da, db in conn:
            adj[a * 4 + b, ((a + da) % 4) * 4 + (b + db) % 4] = True
    return Graph(16, adj)


def star(leaves: int) -> Graph:
    """``K_{1,leaves}`` with center 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    """Kneser graph on the 2-subsets of a 5-set, subsets in lexicographic order."""
    subsets = list(itertools.combinations(range(5), 2))
    edges = [(i, j) for i, a in enumerate(subsets) for j, b in enumerate(subsets) if i < j and not set(a) & set(b)]
    return Graph.from_edges(10, edges)


def random_connected(n: int, seed: int) -> Graph:
    """G(n, 1/2) conditioned on connectivity by rejection; deterministic per seed."""
    if n < 1:
        raise InvalidGraphSpec(f"random_connected needs n >= 1, got {n}")
    if not 0 <= seed < 2**64:
        raise InvalidGraphSpec(f"seed must be an unsigned 64-bit integer, got {seed}")
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, 1)
    while True:
        adj = np.zeros((n, n), dtype=bool)
        adj[iu] = rng.random(len(iu[0])) < 0.5
        g = Graph(n, adj | adj.T)
        if is_connected(g):
            return g


_NAMED = {
    "complete": (complete, 1),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "hypercube": (hypercube, 1),
    "hamming": (hamming, 2),
    "shrikhande": (shrikhande, 0),
    "star": (star, 1),
    "petersen": (petersen, 0),
    "random_connected": (random_connected, 2),
}


def named_graph(name: str, *params: int) -> Graph:
    """Build a named graph, e.g. ``named_graph("hamming", 2, 4)``.

    A single string in ``name:p1,p2`` form is accepted as well.
    """
    if ":" in name and not params:
        name, _, rest = name.partition(":")
        try:
            params = tuple(int(p) for p in rest.split(",") if p.strip())
        except ValueError:
            raise InvalidGraphSpec(f"non-integer parameter in {rest!r}") from None
    name = name.strip().replace("-", "_")
    if name not in _NAMED:
        raise InvalidGraphSpec(f"unknown graph name {name!r}; known: {sorted(_NAMED)}")
    fn, arity = _NAMED[name]
    if len(params) != arity:
        raise InvalidGraphSpec(f"{name} takes {arity} parameter(s), got {len(params)}")
    if any(p < 0 for p in params):
        raise InvalidGraphSpec(f"{name}: negative parameter in {params}")
    return fn(*params)


# --- Cartesian product --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ProductStructure:
    """Coordinates and factor edge coloring of a Cartesian product.

    ``edge_factor[u, v]`` is the index of the factor along which the edge
    ``(u, v)`` runs, and -1 for non-adjacent pairs.
    """

    factors: tuple[Graph, ...]
    coordinates: np.ndarray
    edge_factor: np.ndarray

    def edge_color(self, u: int, v: int) -> int:
        c = int(self.edge_factor[u, v])
        if c < 0:
            raise KeyError((u, v))
        return c

    def factor_relation(self, i: int) -> BinaryRelation:
        """The relation ``c_i``: edges along factor ``i``."""
        return BinaryRelation(len(self.coordinates), self.edge_factor == i)

    def index_of(self, coords: Sequence[int]) -> int:
        idx = 0
        for c, f in zip(coords, self.factors):
            idx = idx * f.n + int(c)
        return idx


def cartesian_product(factors: Sequence[Graph]) -> tuple[Graph, ProductStructure]:
    """Cartesian product with row-major vertex order (first factor most significant)."""
    factors = tuple(factors)
    if not factors:
        raise ValueError("cartesian_product needs at least one factor")
    for i, f in enumerate(factors):
        if f.n < 1:
            raise ValueError(f"factor {i} has no vertices")
    sizes = [f.n for f in factors]
    total = int(np.prod(sizes))
    edge_factor = np.full((total, total), -1, dtype=np.int64)
    for i, f in enumerate(factors):
        left = int(np.prod(sizes[:i]))
        right = int(np.prod(sizes[i + 1 :]))
        block = np.kron(np.eye(left, dtype=np.int8), np.kron(f.adjacency.astype(np.int8), np.eye(right, dtype=np.int8)))
        edge_factor[block.astype(bool)] = i
    coords = np.array(list(itertools.product(*[range(s) for s in sizes])), dtype=np.int64)
    coords = coords.reshape(total, len(factors))
    structure = ProductStructure(factors, _frozen(coords), _frozen(edge_factor))
    return Graph(total, edge_factor >= 0), structure


# --- isomorphism oracle -------------------------------------------------------

ISO_MAX_N = 12


def _vertex_refinement(adjs: list[np.ndarray]) -> list[np.ndarray]:
    """Joint 1-dimensional color refinement so colors are comparable across graphs."""
    sizes = [a.shape[0] for a in adjs]
    colors = [a.sum(axis=1).astype(np.int64) for a in adjs]
    while True:
        sigs = []
        for a, col in zip(adjs, colors):
            for v in range(a.shape[0]):
                sigs.append((int(col[v]), tuple(sorted(col[a[v]].tolist()))))
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        flat = np.array([table[s] for s in sigs], dtype=np.int64)
        new, pos = [], 0
        for s in sizes:
            new.append(flat[pos : pos + s])
            pos += s
        old_count = len(np.unique(np.concatenate(colors))) if sum(sizes) else 0
        colors = new
        if len(table) == old_count:
            return colors


def graph_isomorphic(g1: Graph, g2: Graph, max_n: int = ISO_MAX_N) -> bool:
    """Exact isomorphism test by refinement plus backtracking; small graphs only."""
    if max(g1.n, g2.n) > max_n:
        raise BudgetExceeded("graph_isomorphic vertex count", max(g1.n, g2.n), max_n)
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    if g1.n == 0:
        return True
    if sorted(g1.degrees().tolist()) != sorted(g2.degrees().tolist()):
        return False
    c1, c2 = _vertex_refinement([g1.adjacency, g2.adjacency])
    if sorted(c1.tolist()) != sorted(c2.tolist()):
        return False
    a1, a2 = g1.adjacency, g2.adjacency
    # most constrained vertices first: small color classes, then neighbors of placed ones
    class_size = {c: int((c1 == c).sum()) for c in set(c1.tolist())}
    order: list[int] = []
    remaining = set(range(g1.n))
    while remaining:
        def key(v):
            linked = sum(1 for u in order if a1[u, v])
            return (-linked, class_size[int(c1[v])], v)

        v = min(remaining, key=key)
        order.append(v)
        remaining.remove(v)
    candidates = {v: np.flatnonzero(c2 == c1[v]).tolist() for v in range(g1.n)}
    image = [-1] * g1.n
    used = [False] * g2.n

    def extend(depth: int) -> bool:
        if depth == len(order):
            return True
        v = order[depth]
        for w in candidates[v]:
            if used[w]:
                continue
            if any(a1[u, v] != a2[image[u], w] for u in order[:depth]):
                continue
            image[v] = w
            used[w] = True
            if extend(depth + 1):
                return True
            used[w] = False
        image[v] = -1
        return False

    return extend(0)
