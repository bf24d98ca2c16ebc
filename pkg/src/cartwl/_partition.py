"""Array helpers for partitions given as integer label arrays."""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


def relabel(labels: np.ndarray) -> tuple[np.ndarray, int]:
    """Rename labels to 0..k-1 keeping their sorted order."""
    uniq, inv = np.unique(labels, return_inverse=True)
    return inv.reshape(labels.shape).astype(np.int64), len(uniq)


def relabel_first_seen(labels: np.ndarray) -> tuple[np.ndarray, int]:
    """Rename labels to 0..k-1 in order of first occurrence (row-major)."""
    flat = labels.ravel()
    uniq, first, inv = np.unique(flat, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    rank_of = np.empty(len(uniq), dtype=np.int64)
    rank_of[order] = np.arange(len(uniq))
    return rank_of[inv].reshape(labels.shape), len(uniq)


def combine_columns(cols: np.ndarray) -> tuple[np.ndarray, int]:
    """Lexicographic dense ranking of the rows of a 2-d integer array.

    Row ids are assigned so that id order equals lexicographic row order. Works
    column by column to avoid overflowing int64 when packing.
    """
    cols = np.asarray(cols, dtype=np.int64)
    if cols.ndim == 1:
        return relabel(cols)
    m, w = cols.shape
    if w == 0:
        return np.zeros(m, dtype=np.int64), 1 if m else 0
    ids, k = relabel(cols[:, 0])
    for j in range(1, w):
        col = cols[:, j]
        lo = int(col.min())
        radix = int(col.max()) - lo + 1
        if radix * k >= 2**62:
            col, radix = relabel(col)
            lo = 0
            if radix * k >= 2**62:
                ids, k = relabel(ids)
        ids = ids * radix + (col - lo)
        k = k * radix
    return relabel(ids)


def same_partition(a: np.ndarray, b: np.ndarray) -> bool:
    """True iff two label arrays of equal shape induce the same partition."""
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if a.shape != b.shape:
        return False
    _, ka = relabel(a)
    _, kb = relabel(b)
    if ka != kb:
        return False
    pairs, kp = combine_columns(np.stack([a, b], axis=1))
    return kp == ka


def is_coarser_or_equal(coarse: np.ndarray, fine: np.ndarray) -> bool:
    """True iff every class of ``coarse`` is a union of classes of ``fine``."""
    coarse = np.asarray(coarse).ravel()
    fine = np.asarray(fine).ravel()
    if coarse.shape != fine.shape:
        return False
    fine_ids, kf = relabel(fine)
    owner = np.full(kf, -1, dtype=np.int64)
    owner[fine_ids] = coarse
    return bool(np.all(owner[fine_ids] == coarse))


def equivalence_classes(n: int, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Component labels of the symmetric closure of the pairs (left[i], right[i]).

    Labels are ordered by smallest member, so they are deterministic.
    """
    left = np.asarray(left, dtype=np.int64)
    right = np.asarray(right, dtype=np.int64)
    data = np.ones(len(left), dtype=np.int8)
    graph = coo_matrix((data, (left, right)), shape=(n, n)).tocsr()
    _, labels = connected_components(graph, directed=True, connection="weak")
    labels, _ = relabel_first_seen(labels)
    return labels
