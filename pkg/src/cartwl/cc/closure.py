"""Coherent closure by 2-dimensional Weisfeiler-Leman refinement with canonical naming."""

from __future__ import annotations

from dataclasses import replace
from typing import Mapping, Sequence

import numpy as np

from .._partition import combine_columns
from ..errors import CoherenceError
from ..graphs import BinaryRelation, Graph
from .config import CoherentConfiguration, c3_mismatches

EXACT_MAX_POINTS = 160
PROJECTION_MAX_POINTS = 8192
_HASHES = 3
_WEIGHT_BOUND = 2**20


def _as_matrix(rel, n: int) -> np.ndarray:
    m = rel.matrix if isinstance(rel, BinaryRelation) else np.asarray(rel, dtype=bool)
    if m.shape != (n, n):
        raise ValueError(f"relation has shape {m.shape}, expected {(n, n)}")
    return m


def initial_coloring(n: int, relations: Sequence[np.ndarray]) -> np.ndarray:
    """Color of (a, b) = (a == b, membership in each relation, membership of (b, a) in each).

    Bits are stored negated so that diagonal cells and relation members sort first.
    """
    cols = [1 - np.eye(n, dtype=np.int64).ravel()]
    cols += [1 - r.astype(np.int64).ravel() for r in relations]
    cols += [1 - r.T.astype(np.int64).ravel() for r in relations]
    ids, _ = combine_columns(np.stack(cols, axis=1))
    return ids.reshape(n, n)


def _exact_round(color: np.ndarray, rank: int) -> tuple[np.ndarray, int]:
    n = color.shape[0]
    codes = color[:, :, None] * rank + color[None, :, :]  # axes (alpha, gamma, beta)
    codes.sort(axis=1)
    sig = np.empty((n * n, n + 1), dtype=np.int64)
    sig[:, 0] = color.ravel()
    sig[:, 1:] = codes.transpose(0, 2, 1).reshape(n * n, n)
    ids, k = combine_columns(sig)
    return ids.reshape(n, n), k


def _projection_round(color: np.ndarray, rank: int, salt: int) -> tuple[np.ndarray, int]:
    # sum_gamma w1(c(a, g)) w2(c(g, b)) is a bilinear image of the triangle-count vector;
    # float64 products stay exact while n * bound**2 < 2**53
    n = color.shape[0]
    cols = [color.ravel()]
    for h in range(_HASHES):
        rng = np.random.default_rng([salt, h, rank])
        w1 = rng.integers(1, _WEIGHT_BOUND, rank).astype(np.float64)
        w2 = rng.integers(1, _WEIGHT_BOUND, rank).astype(np.float64)
        cols.append((w1[color] @ w2[color]).astype(np.int64).ravel())
    ids, k = combine_columns(np.stack(cols, axis=1))
    return ids.reshape(n, n), k


def refine(color: np.ndarray, method: str = "auto", salt: int = 0) -> tuple[np.ndarray, tuple[int, ...], str]:
    """Refine a pair coloring to its stable (coherent) refinement.

    Returns the canonical color matrix, the rank trace and the method used.
    """
    n = color.shape[0]
    if method == "auto":
        method = "exact" if n <= EXACT_MAX_POINTS else "projection"
    if method not in ("exact", "projection"):
        raise ValueError(f"unknown refinement method {method!r}")
    if method == "projection" and n > PROJECTION_MAX_POINTS:
        raise ValueError(f"projection refinement supports at most {PROJECTION_MAX_POINTS} points")
    start = np.asarray(color, dtype=np.int64)
    for attempt in range(3):
        color, rank = combine_columns(start.ravel().reshape(-1, 1))
        color = color.reshape(n, n)
        trace = [rank]
        while True:
            if method == "exact":
                new, new_rank = _exact_round(color, rank)
            else:
                new, new_rank = _projection_round(color, rank, salt + attempt)
            color = new
            if new_rank == rank:
                break
            rank = new_rank
            trace.append(rank)
        if method == "exact" or not c3_mismatches(color, rank, limit=1):
            return color, tuple(trace), method
    raise CoherenceError("projection refinement did not reach a coherent partition")


def _normalize_relations(relations) -> list[tuple[str, object]]:
    if isinstance(relations, Mapping):
        return list(relations.items())
    out = []
    for i, item in enumerate(relations):
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], str):
            out.append(item)
        else:
            out.append((f"r{i}", item))
    return out


def coherent_closure(n: int, relations=(), method: str = "auto") -> CoherentConfiguration:
    """Smallest coherent configuration on ``n`` points containing every input relation.

    ``relations`` is a mapping name -> relation or a sequence of relations
    (optionally ``(name, relation)`` pairs); each becomes a tag of the output.
    """
    named = _normalize_relations(relations)
    mats = []
    for name, rel in named:
        if isinstance(rel, BinaryRelation) and rel.n != n:
            raise ValueError(f"relation {name!r} is on {rel.n} points, expected {n}")
        mats.append(_as_matrix(rel, n))
    if n == 0:
        return CoherentConfiguration(np.zeros((0, 0), dtype=np.int64))
    color, trace, used = refine(initial_coloring(n, mats), method)
    cc = CoherentConfiguration(color, naming=f"closure/{used}", trace=trace)
    tags = {}
    for (name, _), m in zip(named, mats):
        colors = cc.colors_in(m)
        if colors is None:  # cannot happen for a correct refinement
            raise CoherenceError(f"input relation {name!r} is not a union of closure colors")
        tags[name] = colors
    return replace(cc, tags=tags)


def wl(g: Graph, method: str = "auto") -> CoherentConfiguration:
    """The coherent configuration of a graph, with its edge set tagged ``"E"``."""
    return coherent_closure(g.n, {"E": g.adjacency}, method=method)


def closure_of_coloring(color: np.ndarray, tags: Mapping[str, np.ndarray] | None = None,
                        method: str = "auto") -> CoherentConfiguration:
    """Coherent closure of the classes of an arbitrary pair coloring."""
    color = np.asarray(color)
    n = color.shape[0]
    start, _ = combine_columns(np.stack([1 - np.eye(n, dtype=np.int64).ravel(), color.ravel(),
                                         color.T.ravel()], axis=1))
    out, trace, used = refine(start.reshape(n, n), method)
    cc = CoherentConfiguration(out, naming=f"closure/{used}", trace=trace)
    if tags:
        cc = replace(cc, tags={k: cc.colors_in(np.asarray(v, dtype=bool)) for k, v in tags.items()})
    return cc
