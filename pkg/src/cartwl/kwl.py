"""Higher-dimensional Weisfeiler-Leman refinement of k-tuples and its projections."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._partition import combine_columns, relabel, same_partition
from .cc.closure import wl
from .cc.config import CoherentConfiguration
from .errors import BudgetExceeded
from .graphs import Graph

TUPLE_BUDGET = 10**8


@dataclass(frozen=True)
class RoundTrace:
    rank: int
    frequencies: tuple[int, ...]  # sorted multiset of class sizes
    digest: str  # sha256 of the round's distinct signatures and their counts

    def as_dict(self) -> dict:
        return {"rank": self.rank, "frequencies": list(self.frequencies), "digest": self.digest}


@dataclass(frozen=True, eq=False)
class KTupleColoring:
    """Stable coloring of ``Omega^k``; tuple ``(x_1..x_k)`` sits at its row-major index."""

    n: int
    k: int
    color: np.ndarray
    trace: tuple[RoundTrace, ...]

    @property
    def rank(self) -> int:
        return int(self.color.max()) + 1 if self.color.size else 0

    def frequencies(self) -> np.ndarray:
        return np.bincount(self.color, minlength=self.rank)

    def tuples(self) -> np.ndarray:
        return tuple_coordinates(self.n, self.k)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "rank": self.rank, "trace": [t.as_dict() for t in self.trace]}

    def write_colors(self, path) -> None:
        """Flat little-endian 32-bit color ids in row-major tuple order."""
        self.color.astype("<u4").tofile(path)


def tuple_coordinates(n: int, k: int) -> np.ndarray:
    return np.indices((n,) * k).reshape(k, -1).T


def _digest(*arrays: np.ndarray) -> str:
    h = hashlib.sha256()
    for a in arrays:
        a = np.ascontiguousarray(a, dtype=np.int64)
        h.update(str(a.shape).encode())
        h.update(a.tobytes())
    return h.hexdigest()


def _round_trace(color: np.ndarray, rank: int, *content: np.ndarray) -> RoundTrace:
    freqs = np.bincount(color, minlength=rank)
    return RoundTrace(rank, tuple(sorted(freqs.tolist())), _digest(*content, freqs))


def check_budget(n: int, k: int, budget: int = TUPLE_BUDGET) -> int:
    tuples = n**k
    if tuples > budget:
        raise BudgetExceeded(f"{k}-WL on {n} points", tuples, budget)
    return tuples


def k_wl(g: Graph | CoherentConfiguration, k: int, budget: int = TUPLE_BUDGET) -> KTupleColoring:
    """k-dimensional WL started from the pair colors of the coherent closure.

    Signatures are ``(color(x), sorted multiset over gamma of the vector
    (color(x[1 <- gamma]), ..., color(x[k <- gamma])))``; ids follow the
    lexicographic order of signatures, so runs on equivalent inputs agree.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    cc = g if isinstance(g, CoherentConfiguration) else wl(g)
    n = cc.n
    total = check_budget(n, k, budget)
    X = tuple_coordinates(n, k)
    cols = []
    for i in range(k):
        for j in range(i + 1, k):
            cols.append((X[:, i] == X[:, j]).astype(np.int64))
    for i in range(k):
        for j in range(k):
            cols.append(cc.color[X[:, i], X[:, j]])
    init = np.stack(cols, axis=1) if cols else np.zeros((total, 1), dtype=np.int64)
    color, rank = combine_columns(init)
    _, first = np.unique(color, return_index=True)
    trace = [_round_trace(color, rank, init[first])]
    place = n ** np.arange(k - 1, -1, -1)
    idx = np.arange(total)
    gammas = np.arange(n)
    while True:
        subs = np.empty((total, n, k), dtype=np.int64)
        for i in range(k):
            base = idx - X[:, i] * place[i]
            subs[:, :, i] = color[base[:, None] + gammas[None, :] * place[i]]
        flat = subs.reshape(total * n, k)
        vec_ids, _ = combine_columns(flat)
        _, first_vec = np.unique(vec_ids, return_index=True)
        vec_ids = np.sort(vec_ids.reshape(total, n), axis=1)
        sig = np.concatenate([color[:, None], vec_ids], axis=1)
        new, new_rank = combine_columns(sig)
        _, first_row, counts = np.unique(new, return_index=True, return_counts=True)
        vectors, rows = flat[first_vec], sig[first_row]
        color = new
        if new_rank == rank:
            break
        rank = new_rank
        trace.append(_round_trace(color, rank, vectors, rows, counts))
    return KTupleColoring(n, k, color, tuple(trace))


def _check_index_set(K: Sequence[int], k: int) -> list[int]:
    K = list(K)
    if not K or any(not 1 <= i <= k for i in K) or sorted(set(K)) != K:
        raise ValueError(f"index set must be a non-empty increasing subset of 1..{k}, got {K}")
    return K


def project(kc: KTupleColoring, K: Sequence[int]) -> np.ndarray:
    """Coloring of ``Omega^|K|`` induced by the K-projection, by padded tuples.

    ``y`` is placed on the positions ``K`` and every other position repeats the
    last coordinate of ``y``. Ids are renamed to ``0..r-1`` preserving order.
    """
    K = _check_index_set(K, kc.k)
    n, k = kc.n, kc.k
    Y = tuple_coordinates(n, len(K))
    full = np.repeat(Y[:, -1:], k, axis=1)
    full[:, [i - 1 for i in K]] = Y
    place = n ** np.arange(k - 1, -1, -1)
    ids, _ = relabel(kc.color[full @ place])
    return ids


def project_by_images(kc: KTupleColoring, K: Sequence[int]) -> np.ndarray:
    """The K-projection computed from the images of whole classes.

    Raises ``ValueError`` if the class images do not form a partition.
    """
    K = _check_index_set(K, kc.k)
    n = kc.n
    X = kc.tuples()[:, [i - 1 for i in K]]
    place = n ** np.arange(len(K) - 1, -1, -1)
    y = X @ place
    pairs = np.unique(np.stack([kc.color, y], axis=1), axis=0)
    # image of each class as a tuple of projected indices
    images: dict[int, list[int]] = {}
    for c, yy in pairs.tolist():
        images.setdefault(c, []).append(yy)
    image_id = {key: i for i, key in enumerate(sorted({tuple(v) for v in images.values()}))}
    label = np.full(n ** len(K), -1, dtype=np.int64)
    for c, members in images.items():
        iid = image_id[tuple(members)]
        prev = label[members]
        if np.any((prev >= 0) & (prev != iid)):
            raise ValueError("class images overlap without coinciding")
        label[members] = iid
    return label


def pair_partition(kc: KTupleColoring) -> np.ndarray:
    """The 2-projection as an ``n x n`` label matrix."""
    return project(kc, [1, 2]).reshape(kc.n, kc.n)


def _edge_colors(kc: KTupleColoring, g: Graph) -> tuple[int, ...]:
    pr = pair_partition(kc)
    return tuple(sorted(set(pr[g.adjacency].tolist())))


def wl_m_equivalent(g1: Graph, g2: Graph, m: int, budget: int = TUPLE_BUDGET) -> bool:
    """Equal canonical m-WL runs, equal final class sizes and matching edge colors."""
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    check_budget(g1.n, m, budget)
    a, b = k_wl(g1, m, budget), k_wl(g2, m, budget)
    if a.trace != b.trace:
        return False
    if not np.array_equal(a.frequencies(), b.frequencies()):
        return False
    return _edge_colors(a, g1) == _edge_colors(b, g2)


def wl_m_closed(g: Graph, m: int, budget: int = TUPLE_BUDGET, shortcut: bool = True) -> bool:
    """``WL(g)`` equals the 2-projection of ``WL_m(g)``.

    With ``shortcut`` a discrete closure answers True without running m-WL,
    since the 2-projection refines the closure and nothing refines discrete.
    """
    cc = wl(g)
    if m == 2 or (shortcut and cc.rank == g.n * g.n):
        return True
    kc = k_wl(cc, m, budget)
    return same_partition(pair_partition(kc), cc.color)
