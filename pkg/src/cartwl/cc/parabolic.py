"""Partial parabolics, their indecomposable components, restrictions and quotients."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .._partition import equivalence_classes, relabel_first_seen
from ..errors import CoherenceError, NotColorExactError
from ..graphs import BinaryRelation
from .config import CoherentConfiguration, verify_axioms


@dataclass(frozen=True, eq=False)
class PartialParabolic:
    """An equivalence relation on a subset of ``0..n-1``.

    ``class_of[v]`` is the class id of ``v``, or -1 when ``v`` is outside the
    support. Class ids are ordered by smallest member.
    """

    n: int
    class_of: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.class_of, dtype=np.int64)
        inside = labels >= 0
        out = np.full(self.n, -1, dtype=np.int64)
        if inside.any():
            out[inside], _ = relabel_first_seen(labels[inside])
        out.setflags(write=False)
        object.__setattr__(self, "class_of", out)

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> "PartialParabolic":
        labels = np.full(n, -1, dtype=np.int64)
        for i, members in enumerate(classes):
            members = list(members)
            if np.any(labels[members] >= 0):
                raise ValueError("classes overlap")
            labels[members] = i
        return cls(n, labels)

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(np.flatnonzero(self.class_of >= 0).tolist())

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        k = int(self.class_of.max()) + 1 if len(self.support) else 0
        return tuple(tuple(np.flatnonzero(self.class_of == i).tolist()) for i in range(k))

    def matrix(self) -> np.ndarray:
        c = self.class_of
        return (c[:, None] == c[None, :]) & (c[:, None] >= 0)

    def relation(self) -> BinaryRelation:
        return BinaryRelation(self.n, self.matrix())

    def __eq__(self, other):
        return isinstance(other, PartialParabolic) and self.n == other.n and np.array_equal(
            self.class_of, other.class_of)

    def __hash__(self):
        return hash((self.n, self.class_of.tobytes()))

    def __repr__(self):
        return f"PartialParabolic(n={self.n}, classes={len(self.classes)}, support={len(self.support)})"


def _relation_mask(cc: CoherentConfiguration, relation) -> np.ndarray:
    if isinstance(relation, BinaryRelation):
        return relation.matrix
    if isinstance(relation, np.ndarray) and relation.dtype == bool:
        return relation
    return cc.relation(relation)


def equivalence_closure(cc: CoherentConfiguration, relation) -> PartialParabolic:
    """Equivalence closure of a relation of ``cc`` on the points the relation touches.

    ``relation`` is a boolean matrix, a ``BinaryRelation`` or a collection of color ids.
    """
    mask = np.asarray(_relation_mask(cc, relation), dtype=bool)
    if not cc.is_color_exact(mask):
        raise NotColorExactError("relation is not a union of basis colors")
    touched = mask.any(axis=0) | mask.any(axis=1)
    a, b = np.nonzero(mask)
    labels = equivalence_classes(cc.n, a, b)
    labels = np.where(touched, labels, -1)
    e = PartialParabolic(cc.n, labels)
    if not cc.is_color_exact(e.matrix()):
        raise CoherenceError("equivalence closure of a relation is not a union of colors")
    return e


def is_partial_parabolic(cc: CoherentConfiguration, e: PartialParabolic) -> bool:
    return e.n == cc.n and cc.is_color_exact(e.matrix())


def is_parabolic(cc: CoherentConfiguration, e: PartialParabolic) -> bool:
    return len(e.support) == cc.n and is_partial_parabolic(cc, e)


def indecomposable_components(cc: CoherentConfiguration, e: PartialParabolic) -> list[PartialParabolic]:
    """Split ``e`` into its indecomposable components.

    Two classes are linked when a basis color inside ``e`` meets both class
    squares; components of the linking graph are the indecomposable components.
    """
    if not is_partial_parabolic(cc, e):
        raise NotColorExactError("not a partial parabolic of the configuration")
    m = e.matrix()
    rows, cols = np.nonzero(m)
    colors = cc.color[rows, cols]
    classes = e.class_of[rows]
    k = len(e.classes)
    # bipartite graph: class nodes 0..k-1, color nodes k..k+rank-1
    comp = equivalence_classes(k + cc.rank, classes, colors + k)[:k]
    out = []
    for c in np.unique(comp):
        labels = np.where(np.isin(e.class_of, np.flatnonzero(comp == c)), e.class_of, -1)
        out.append(PartialParabolic(cc.n, labels))
    out.sort(key=lambda p: p.support[0])
    return out


def _check_homogeneity_set(cc: CoherentConfiguration, points: Sequence[int]) -> None:
    inside = np.zeros(cc.n, dtype=bool)
    inside[list(points)] = True
    fibers_hit = np.unique(cc.fiber_of[inside])
    if not np.all(inside[np.isin(cc.fiber_of, fibers_hit)]):
        raise NotColorExactError("point set is not a union of fibers")


def restriction(cc: CoherentConfiguration, points: Sequence[int]) -> CoherentConfiguration:
    """The configuration induced on a homogeneity set, points renumbered in increasing order."""
    pts = np.array(sorted(points), dtype=np.int64)
    _check_homogeneity_set(cc, pts)
    return CoherentConfiguration.from_colors(cc.color[np.ix_(pts, pts)])


def quotient(cc: CoherentConfiguration, e: PartialParabolic, verify: bool = True) -> CoherentConfiguration:
    """The configuration on the classes of ``e``.

    A pair of classes (L, G) gets the set of basis colors meeting ``L x G``; these
    sets must partition the class pairs, which holds for coherent input.
    """
    if not is_partial_parabolic(cc, e):
        raise NotColorExactError("not a partial parabolic of the configuration")
    _check_homogeneity_set(cc, e.support)
    k = len(e.classes)
    pts = np.array(e.support, dtype=np.int64)
    cls = e.class_of[pts]
    sub = cc.color[np.ix_(pts, pts)]
    hit = np.zeros((k, k, cc.rank), dtype=bool)
    hit[cls[:, None], cls[None, :], sub] = True
    keys = [tuple(np.flatnonzero(hit[a, b]).tolist()) for a in range(k) for b in range(k)]
    table = {key: i for i, key in enumerate(sorted(set(keys)))}
    # each basis color must lie in exactly one class-pair color
    owner: dict[int, tuple] = {}
    for key in table:
        for s in key:
            if owner.setdefault(s, key) != key:
                raise CoherenceError(f"color {s} meets class pairs of different quotient colors")
    color = np.array([table[key] for key in keys], dtype=np.int64).reshape(k, k)
    out = CoherentConfiguration.from_colors(color)
    if verify:
        report = verify_axioms(out)
        if not report.coherent:
            raise CoherenceError("; ".join(report.violations))
    return out
