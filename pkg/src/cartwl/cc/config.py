"""The coherent configuration type, axiom checks and intersection numbers."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .._partition import is_coarser_or_equal, relabel, same_partition
from ..errors import CoherenceError


@dataclass(frozen=True)
class IntersectionTensor:
    """Sparse intersection numbers ``c[r, s, t]``; missing keys are zero."""

    rank: int
    entries: Mapping[tuple[int, int, int], int]

    def __getitem__(self, rst: tuple[int, int, int]) -> int:
        return self.entries.get(rst, 0)

    def dense(self) -> np.ndarray:
        out = np.zeros((self.rank,) * 3, dtype=np.int64)
        for (r, s, t), c in self.entries.items():
            out[r, s, t] = c
        return out

    def triples(self) -> list[list[int]]:
        return [[r, s, t, c] for (r, s, t), c in sorted(self.entries.items())]


@dataclass
class AxiomReport:
    c1: bool
    c2: bool
    c3: bool
    violations: list[str] = field(default_factory=list)

    @property
    def coherent(self) -> bool:
        return self.c1 and self.c2 and self.c3

    def as_dict(self) -> dict:
        return {"coherent": self.coherent, "C1": self.c1, "C2": self.c2, "C3": self.c3,
                "violations": self.violations}


@dataclass(frozen=True, eq=False)
class CoherentConfiguration:
    """A color partition of the pairs over ``0..n-1``.

    ``color`` holds ids ``0..rank-1``. ``tags`` names input relations by their
    color sets. ``naming`` records which canonical naming scheme produced the ids
    (``None`` for hand-built partitions), and ``trace`` the per-round ranks of
    the refinement that built it.
    """

    color: np.ndarray
    tags: Mapping[str, frozenset[int]] = field(default_factory=dict)
    naming: str | None = None
    trace: tuple[int, ...] = ()

    def __post_init__(self):
        c = np.asarray(self.color)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError(f"color matrix must be square, got shape {c.shape}")
        c = np.ascontiguousarray(c, dtype=np.int64)
        if c.size and (c.min() < 0 or len(np.unique(c)) != c.max() + 1):
            raise ValueError("color ids must be exactly 0..rank-1")
        c.setflags(write=False)
        object.__setattr__(self, "color", c)
        object.__setattr__(self, "tags", {k: frozenset(int(x) for x in v) for k, v in dict(self.tags).items()})

    @classmethod
    def from_colors(cls, colors: np.ndarray, tags: Mapping[str, Sequence[int]] | None = None,
                    naming: str | None = None) -> "CoherentConfiguration":
        """Wrap an arbitrary label matrix, renaming labels to ``0..rank-1`` in sorted order."""
        colors = np.asarray(colors)
        ids, _ = relabel(colors)
        if tags:
            old = np.unique(colors)
            pos = {int(v): i for i, v in enumerate(old)}
            tags = {k: [pos[int(x)] for x in v] for k, v in tags.items()}
        return cls(ids, tags or {}, naming)

    @property
    def n(self) -> int:
        return self.color.shape[0]

    @cached_property
    def rank(self) -> int:
        return int(self.color.max()) + 1 if self.color.size else 0

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.color.ravel(), minlength=self.rank)

    @cached_property
    def reflexive_colors(self) -> frozenset[int]:
        return frozenset(np.unique(np.diagonal(self.color)).tolist())

    @cached_property
    def transpose_map(self) -> np.ndarray:
        """``s -> s*``; raises ``CoherenceError`` if transposition does not map colors to colors."""
        tmap = _transpose_map(self.color, self.rank)
        if tmap is None:
            raise CoherenceError("color partition is not closed under transposition (C2)")
        return tmap

    @cached_property
    def fiber_of(self) -> np.ndarray:
        """Fiber id of each point; fibers are numbered by their diagonal color order."""
        diag = np.diagonal(self.color)
        ids, _ = relabel(diag)
        return ids

    @property
    def fibers(self) -> list[np.ndarray]:
        f = self.fiber_of
        return [np.flatnonzero(f == i) for i in range(int(f.max()) + 1)] if self.n else []

    def relation(self, colors) -> np.ndarray:
        """Boolean matrix of the union of the given colors."""
        mask = np.zeros(self.rank, dtype=bool)
        mask[list(colors)] = True
        return mask[self.color]

    def tag_relation(self, name: str) -> np.ndarray:
        return self.relation(self.tags[name])

    def colors_in(self, mask: np.ndarray) -> frozenset[int] | None:
        """Colors whose union is ``mask``, or ``None`` if ``mask`` is not color-exact."""
        mask = np.asarray(mask, dtype=bool)
        inside = np.bincount(self.color[mask], minlength=self.rank)
        hit = inside > 0
        if np.any(inside[hit] != self.sizes[hit]):
            return None
        return frozenset(np.flatnonzero(hit).tolist())

    def is_color_exact(self, mask: np.ndarray) -> bool:
        return self.colors_in(mask) is not None

    @cached_property
    def tensor(self) -> IntersectionTensor:
        return intersection_numbers(self)

    def valency(self, s: int) -> int:
        """``|alpha s|`` for ``alpha`` in the source fiber of ``s``."""
        a, _ = self.representative(s)
        return int((self.color[a] == s).sum())

    def representative(self, s: int) -> tuple[int, int]:
        flat = int(np.flatnonzero(self.color.ravel() == s)[0])
        return divmod(flat, self.n)

    def same_partition(self, other: "CoherentConfiguration") -> bool:
        return self.n == other.n and same_partition(self.color, other.color)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rank": self.rank,
            "color_matrix": self.color.ravel().tolist(),
            "transpose_map": self.transpose_map.tolist(),
            "reflexive_colors": sorted(self.reflexive_colors),
            "tags": {k: sorted(v) for k, v in sorted(self.tags.items())},
        }

    def __repr__(self):
        return f"CoherentConfiguration(n={self.n}, rank={self.rank}, naming={self.naming!r})"


def _transpose_map(color: np.ndarray, rank: int) -> np.ndarray | None:
    codes = np.unique(color.ravel() * rank + color.T.ravel())
    if len(codes) != rank:
        return None
    tmap = np.empty(rank, dtype=np.int64)
    src, dst = np.divmod(codes, rank)
    tmap[src] = dst
    return tmap


def _sorted_column_signatures(color: np.ndarray, rank: int, alpha: int) -> np.ndarray:
    """Row ``beta`` is the sorted vector of pair codes over ``gamma`` for the cell (alpha, beta)."""
    codes = color[alpha][:, None] * rank + color
    return np.sort(codes, axis=0).T


def c3_mismatches(color: np.ndarray, rank: int, limit: int = 10) -> list[tuple[int, int, int]]:
    """Cells ``(t, alpha, beta)`` whose triangle counts differ from the first cell of class ``t``.

    Exhaustive: every cell is compared; cost is one ``n x n`` sort per row.
    """
    n = color.shape[0]
    flat = color.ravel()
    _, first = np.unique(flat, return_index=True)
    ra, rb = np.divmod(first, n)
    ref = np.sort(color[ra] * rank + color[:, rb].T, axis=1)
    bad: list[tuple[int, int, int]] = []
    for alpha in range(n):
        sig = _sorted_column_signatures(color, rank, alpha)
        diff = np.any(sig != ref[color[alpha]], axis=1)
        for beta in np.flatnonzero(diff)[: limit - len(bad)]:
            bad.append((int(color[alpha, beta]), alpha, int(beta)))
        if len(bad) >= limit:
            break
    return bad


def verify_axioms(cc: CoherentConfiguration) -> AxiomReport:
    """Exhaustively check C1, C2 and C3; violations are reported, not raised."""
    violations = []
    color, rank = cc.color, cc.rank
    diag = set(np.diagonal(color).tolist())
    off = set(color[~np.eye(cc.n, dtype=bool)].tolist())
    both = sorted(diag & off)
    c1 = not both
    if both:
        violations.append(f"C1: colors {both[:10]} occur both on and off the diagonal")
    tmap = _transpose_map(color, rank)
    c2 = tmap is not None
    if not c2:
        violations.append("C2: transposition does not map color classes onto color classes")
    bad = c3_mismatches(color, rank)
    c3 = not bad
    for t, a, b in bad:
        violations.append(f"C3: triangle counts of cell ({a}, {b}) differ within color {t}")
    return AxiomReport(c1, c2, c3, violations)


def intersection_numbers(cc: CoherentConfiguration, check_seed: int = 0) -> IntersectionTensor:
    """Count ``c[r, s, t]`` at one cell of each color ``t``; confirm at a second cell."""
    color, rank, n = cc.color, cc.rank, cc.n
    flat = color.ravel()
    order = np.argsort(flat, kind="stable")
    starts = np.searchsorted(flat[order], np.arange(rank))
    counts = cc.sizes
    first = order[starts]
    rng = np.random.default_rng(check_seed)
    second = order[starts + (rng.random(rank) * counts).astype(np.int64)]

    def table(cells):
        a, b = np.divmod(cells, n)
        codes = color[a] * rank + color[:, b].T  # row t: pair codes over gamma
        t_idx = np.repeat(np.arange(rank, dtype=np.int64), n)
        if rank < 2**20:
            keys, cnt = np.unique(t_idx * rank * rank + codes.ravel(), return_counts=True)
            return np.divmod(keys, rank * rank), cnt
        keys, cnt = np.unique(np.stack([t_idx, codes.ravel()], axis=1), axis=0, return_counts=True)
        return (keys[:, 0], keys[:, 1]), cnt

    (t, rs), c1 = table(first)
    (t2, rs2), c2 = table(second)
    if len(t) != len(t2) or np.any(t != t2) or np.any(rs != rs2) or np.any(c1 != c2):
        raise CoherenceError("intersection numbers differ between two cells of one color (C3)")
    r, s = np.divmod(rs, rank)
    entries = {(int(a), int(b), int(c)): int(x) for a, b, c, x in zip(r, s, t, c1)}
    return IntersectionTensor(rank, entries)


def tensor_product(ccs: Sequence[CoherentConfiguration]) -> CoherentConfiguration:
    """Tensor product on the row-major product point set; color ids are row-major tuples."""
    ccs = list(ccs)
    if not ccs:
        raise ValueError("tensor_product needs at least one configuration")
    color = ccs[0].color
    for cc in ccs[1:]:
        na, nb = color.shape[0], cc.n
        color = (color[:, None, :, None] * cc.rank + cc.color[None, :, None, :]).reshape(na * nb, na * nb)
    return CoherentConfiguration.from_colors(color, naming="tensor")


def tensor_color_tuples(ranks: Sequence[int]) -> np.ndarray:
    """Component tuples of the tensor color ids, in id order."""
    grids = np.indices(tuple(ranks)).reshape(len(ranks), -1).T
    return grids


def partition_leq(cc1: CoherentConfiguration, cc2: CoherentConfiguration) -> bool:
    """``cc1 <= cc2``: each class of ``cc1`` is a union of classes of ``cc2``."""
    if cc1.n != cc2.n:
        raise ValueError(f"point counts differ: {cc1.n} vs {cc2.n}")
    return is_coarser_or_equal(cc1.color, cc2.color)


def trivial(n: int) -> CoherentConfiguration:
    color = np.ones((n, n), dtype=np.int64)
    np.fill_diagonal(color, 0)
    return CoherentConfiguration.from_colors(color)


def discrete(n: int) -> CoherentConfiguration:
    return CoherentConfiguration(np.arange(n * n, dtype=np.int64).reshape(n, n))
