"""Dot product and closure of binary relations."""

from __future__ import annotations

import numpy as np

from .._partition import equivalence_classes
from ..graphs import BinaryRelation


def _check(r: BinaryRelation, s: BinaryRelation) -> None:
    if r.n != s.n:
        raise ValueError(f"relations on different point sets: {r.n} vs {s.n}")


def dot_product(r: BinaryRelation, s: BinaryRelation) -> BinaryRelation:
    """``{(a, b) : (a, g) in r and (g, b) in s for some g}``."""
    _check(r, s)
    prod = r.matrix.astype(np.float64) @ s.matrix.astype(np.float64)
    return BinaryRelation(r.n, prod > 0)


def transitive_closure(r: BinaryRelation) -> BinaryRelation:
    """Smallest equivalence relation on all points containing ``r``."""
    a, b = np.nonzero(r.matrix)
    labels = equivalence_classes(r.n, a, b)
    return BinaryRelation(r.n, labels[:, None] == labels[None, :])
