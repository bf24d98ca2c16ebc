"""Edge relations behind Cartesian prime factorization, and the factorizer itself.

Edges are handled in two indexings: ordered edges ``g.ordered_edges()`` (both
orientations, row-major) for the relations, and unordered edges ``g.edges()``
for the class computation, since both relations are orientation-invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._partition import equivalence_classes, relabel_first_seen
from .cc.closure import wl
from .cc.parabolic import PartialParabolic
from .errors import CertificationError, DisconnectedGraphError
from .extension import cylinder_mask
from .graphio import serialize_graph6
from .graphs import BinaryRelation, Graph, bfs_distances, cartesian_product

ROW_CHUNK = 512


@dataclass(frozen=True, eq=False)
class EdgeRelation:
    """A relation on the ordered edges of a graph.

    ``edges[i]`` is the ordered pair ``(x, y)``; ``matrix[i, j]`` says whether
    edge ``i`` is related to edge ``j``.
    """

    edges: np.ndarray
    matrix: np.ndarray

    @cached_property
    def pairs(self) -> frozenset[tuple[int, int]]:
        a, b = np.nonzero(self.matrix)
        return frozenset(zip(a.tolist(), b.tolist()))

    def __len__(self) -> int:
        return int(self.matrix.sum())

    def __or__(self, other: "EdgeRelation") -> "EdgeRelation":
        if not np.array_equal(self.edges, other.edges):
            raise ValueError("edge relations over different edge lists")
        return EdgeRelation(self.edges, self.matrix | other.matrix)

    def __eq__(self, other):
        return (isinstance(other, EdgeRelation) and np.array_equal(self.edges, other.edges)
                and np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash((self.edges.tobytes(), np.packbits(self.matrix).tobytes()))

    def point_mask(self, n: int) -> np.ndarray:
        """The relation as pairs of points of ``Omega^2``, point ``(x, y)`` at ``x * n + y``."""
        pts = self.edges[:, 0] * n + self.edges[:, 1]
        out = np.zeros((n * n, n * n), dtype=bool)
        a, b = np.nonzero(self.matrix)
        out[pts[a], pts[b]] = True
        return out


def _require_connected(g: Graph) -> np.ndarray:
    d = bfs_distances(g)
    if g.n and np.any(d.dist < 0):
        raise DisconnectedGraphError()
    return d.dist


def _theta_block(dist: np.ndarray, x, y, x2, y2) -> np.ndarray:
    cross = dist[x[:, None], y2[None, :]] + dist[y[:, None], x2[None, :]]
    straight = dist[x[:, None], x2[None, :]] + dist[y[:, None], y2[None, :]]
    return cross != straight


def theta_relation(g: Graph) -> EdgeRelation:
    """Edge pairs with ``d(x, y') + d(y, x') != d(x, x') + d(y, y')``."""
    dist = _require_connected(g)
    e = g.ordered_edges()
    x, y = e[:, 0], e[:, 1]
    return EdgeRelation(e, _theta_block(dist, x, y, x, y))


def common_neighbor_counts(g: Graph) -> np.ndarray:
    a = g.adjacency.astype(np.int64)
    return a @ a


def s_prime(g: Graph) -> frozenset[int]:
    """Colors ``t`` of ``WL(g)`` with ``sum of c[r, s, t]`` over edge colors ``r, s`` equal to 1."""
    _require_connected(g)
    cc = wl(g)
    edge_colors = cc.tags["E"]
    total = np.zeros(cc.rank, dtype=np.int64)
    for (r, s, t), c in cc.tensor.entries.items():
        if r in edge_colors and s in edge_colors:
            total[t] += c
    return frozenset(np.flatnonzero(total == 1).tolist())


def _tau_from(e: np.ndarray, s_mask: np.ndarray) -> np.ndarray:
    x, y = e[:, 0], e[:, 1]
    return (x[:, None] == x[None, :]) & s_mask[y[:, None], y[None, :]]


def tau_relation(g: Graph) -> EdgeRelation:
    """Edge pairs ``(x, y), (x, y')`` where ``x`` is the only common neighbor of ``y`` and ``y'``.

    This includes ``y = y'`` when ``y`` is a leaf.
    """
    _require_connected(g)
    e = g.ordered_edges()
    return EdgeRelation(e, _tau_from(e, common_neighbor_counts(g) == 1))


def tau_relation_from_closure(g: Graph) -> EdgeRelation:
    """The same relation, with the common-neighbor condition read off the intersection numbers."""
    cc = wl(g)
    e = g.ordered_edges()
    return EdgeRelation(e, _tau_from(e, cc.relation(s_prime(g))))


def s_abcd(g: Graph, a: int, b: int, c: int, d: int) -> BinaryRelation:
    """Point pairs ``((x, y), (x', y'))`` of ``Omega^2`` with
    ``d(x, y') = a``, ``d(y, x') = b``, ``d(x, x') = c`` and ``d(y, y') = d``."""
    dist = _require_connected(g)
    mask = (cylinder_mask(dist == a, 1, 2) & cylinder_mask(dist == b, 2, 1)
            & cylinder_mask(dist == c, 1, 1) & cylinder_mask(dist == d, 2, 2))
    return BinaryRelation(g.n * g.n, mask)


def _restrict_to_edges(g: Graph, point_mask: np.ndarray) -> EdgeRelation:
    e = g.ordered_edges()
    pts = e[:, 0] * g.n + e[:, 1]
    return EdgeRelation(e, point_mask[np.ix_(pts, pts)])


def theta_from_cylinders(g: Graph) -> EdgeRelation:
    """Union of ``s(a, b, c, d)`` over ``a + b != c + d``, restricted to edge pairs."""
    dist = _require_connected(g)
    n = g.n
    values = range(int(dist.max()) + 1)
    cyl = {(v, i, j): cylinder_mask(dist == v, i, j) for v in values for i in (1, 2) for j in (1, 2)}
    out = np.zeros((n * n, n * n), dtype=bool)
    for a in values:
        for b in values:
            ab = cyl[a, 1, 2] & cyl[b, 2, 1]
            if not ab.any():
                continue
            for c in values:
                abc = ab & cyl[c, 1, 1]
                if not abc.any():
                    continue
                for d in values:
                    if a + b != c + d:
                        out |= abc & cyl[d, 2, 2]
    return _restrict_to_edges(g, out)


def tau_from_cylinders(g: Graph) -> EdgeRelation:
    """``cyl of 1_Omega at (1, 1)`` intersected with ``cyl of s' at (2, 2)``, on edge pairs."""
    cc = wl(g)
    mask = cylinder_mask(np.eye(g.n, dtype=bool), 1, 1) & cylinder_mask(cc.relation(s_prime(g)), 2, 2)
    return _restrict_to_edges(g, mask)


def _smallest_member(labels: np.ndarray) -> np.ndarray:
    low = np.full(int(labels.max()) + 1, len(labels), dtype=np.int64)
    np.minimum.at(low, labels, np.arange(len(labels)))
    return low[labels]


def _edge_classes(g: Graph, dist: np.ndarray) -> np.ndarray:
    """Class id of every unordered edge under the closure of theta and tau."""
    und = np.array(g.edges(), dtype=np.int64).reshape(-1, 2)
    m = len(und)
    x, y = und[:, 0], und[:, 1]
    rep = np.arange(m)
    for start in range(0, m, ROW_CHUNK):
        rows = np.arange(start, min(start + ROW_CHUNK, m))
        blk = _theta_block(dist, x[rows], y[rows], x, y)
        a, b = np.nonzero(blk)
        left = np.concatenate([np.arange(m), rows[a]])
        right = np.concatenate([rep, b])
        rep = _smallest_member(equivalence_classes(m, left, right))
    # tau on unordered edges: {x, y} ~ {x, y'} when x is the unique common neighbor of y, y'
    cn = common_neighbor_counts(g)
    index = {(u, v): i for i, (u, v) in enumerate(und.tolist())}
    left, right = [np.arange(m)], [rep]
    for v in range(g.n):
        nb = np.flatnonzero(g.adjacency[v])
        ids = np.array([index[min(v, u), max(v, u)] for u in nb], dtype=np.int64)
        i, j = np.nonzero(cn[np.ix_(nb, nb)] == 1)
        left.append(ids[i])
        right.append(ids[j])
    return equivalence_classes(m, np.concatenate(left), np.concatenate(right))


def product_relation(g: Graph) -> tuple[EdgeRelation, PartialParabolic]:
    """``Theta | tau`` on ordered edges, and its equivalence classes on unordered edges."""
    dist = _require_connected(g)
    rel = theta_relation(g) | tau_relation(g)
    labels = _edge_classes(g, dist)
    return rel, PartialParabolic(len(labels), labels)


def ordered_edge_classes(g: Graph, unordered_labels: np.ndarray) -> np.ndarray:
    """Spread unordered-edge class ids onto ``g.ordered_edges()``."""
    index = {e: i for i, e in enumerate(g.edges())}
    e = g.ordered_edges()
    return np.array([unordered_labels[index[min(u, v), max(u, v)]] for u, v in e.tolist()], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class FactorizationReport:
    num_factors: int
    edge_class: dict[tuple[int, int], int]  # unordered edge (u < v) -> class id
    factors: tuple[Graph, ...]
    coordinates: np.ndarray  # vertex -> factor-vertex ids, shape (n, num_factors)
    certified: bool

    def to_json(self) -> dict:
        return {
            "num_factors": self.num_factors,
            "factor_orders": [f.n for f in self.factors],
            "factor_graph6": [serialize_graph6(f).decode() for f in self.factors],
            "edge_classes": [[u, v, c] for (u, v), c in sorted(self.edge_class.items())],
            "certified": self.certified,
        }


def _spanning_components(n: int, und: np.ndarray, keep: np.ndarray) -> np.ndarray:
    sub = und[keep]
    return equivalence_classes(n, sub[:, 0], sub[:, 1]) if len(sub) else np.arange(n)


def prime_factorize(g: Graph) -> FactorizationReport:
    """Split a connected graph into Cartesian prime factors and certify the coordinates."""
    if g.n < 2:
        raise ValueError(f"factorization needs at least 2 vertices, got {g.n}")
    dist = _require_connected(g)
    labels = _edge_classes(g, dist)
    und = np.array(g.edges(), dtype=np.int64)
    k = int(labels.max()) + 1
    factors, layers = [], []
    for i in range(k):
        comp = _spanning_components(g.n, und, labels == i)
        layer = np.flatnonzero(comp == comp[0])
        pos = np.full(g.n, -1, dtype=np.int64)
        pos[layer] = np.arange(len(layer))
        edges = und[(labels == i) & (pos[und[:, 0]] >= 0)]
        factors.append(Graph.from_edges(len(layer), zip(pos[edges[:, 0]].tolist(), pos[edges[:, 1]].tolist())))
        layers.append(pos)
    coords = np.empty((g.n, k), dtype=np.int64)
    for i in range(k):
        if k == 1:
            coords[:, 0] = layers[0]
            continue
        co = _spanning_components(g.n, und, labels != i)
        co, count = relabel_first_seen(co)
        layer = np.flatnonzero(layers[i] >= 0)
        hit = np.full(count, -1, dtype=np.int64)
        hit[co[layer]] = layers[i][layer]
        if len(np.unique(co[layer])) != len(layer) or np.any(hit < 0):
            raise CertificationError(f"co-layer components do not meet factor {i} once each")
        coords[:, i] = hit[co]
    _certify(g, factors, coords)
    edge_class = {(u, v): int(c) for (u, v), c in zip(g.edges(), labels)}
    return FactorizationReport(k, edge_class, tuple(factors), coords, True)


def _certify(g: Graph, factors: list[Graph], coords: np.ndarray) -> None:
    prod, structure = cartesian_product(factors)
    if prod.n != g.n:
        raise CertificationError(f"factor orders multiply to {prod.n}, graph has {g.n} vertices")
    idx = np.zeros(g.n, dtype=np.int64)
    for i, f in enumerate(factors):
        idx = idx * f.n + coords[:, i]
    if len(np.unique(idx)) != g.n:
        raise CertificationError("coordinate map is not injective")
    if not np.array_equal(prod.adjacency[np.ix_(idx, idx)], g.adjacency):
        raise CertificationError("coordinate map does not preserve and reflect edges")
