"""Canonical signatures and algebraic isomorphisms between coherent configurations."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import BudgetExceeded
from .config import CoherentConfiguration

SEARCH_MAX_RANK = 40


@dataclass(frozen=True)
class AlgebraicIsoWitness:
    color_bijection: tuple[int, ...]
    verified: bool

    def __call__(self, s: int) -> int:
        return self.color_bijection[s]

    def image(self, colors) -> frozenset[int]:
        return frozenset(self.color_bijection[s] for s in colors)


def canonical_signature(cc: CoherentConfiguration, tags: Sequence[str] | None = None) -> tuple:
    """Hashable summary of everything an algebraic isomorphism must preserve, by color id.

    For closure-built configurations the ids are isomorphism-invariant, so equal
    signatures mean the identity color map is an algebraic isomorphism.
    """
    names = sorted(cc.tags) if tags is None else sorted(tags)
    return (
        cc.n,
        cc.rank,
        tuple(cc.transpose_map.tolist()),
        tuple(sorted(cc.reflexive_colors)),
        tuple((k, tuple(sorted(cc.tags[k]))) for k in names),
        tuple(sorted(cc.tensor.entries.items())),
    )


def signature_digest(cc: CoherentConfiguration, tags: Sequence[str] | None = None) -> str:
    blob = json.dumps(canonical_signature(cc, tags), separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def check_witness(cc1: CoherentConfiguration, cc2: CoherentConfiguration, phi: Sequence[int],
                  tags: Sequence[str] = ()) -> bool:
    """Entry-by-entry check that ``phi`` is an algebraic isomorphism respecting ``tags``."""
    if cc1.rank != cc2.rank or sorted(phi) != list(range(cc2.rank)):
        return False
    phi = np.asarray(phi, dtype=np.int64)
    if not np.array_equal(phi[cc1.transpose_map], cc2.transpose_map[phi]):
        return False
    if frozenset(phi[list(cc1.reflexive_colors)].tolist()) != cc2.reflexive_colors:
        return False
    for name in tags:
        if frozenset(phi[list(cc1.tags[name])].tolist()) != cc2.tags[name]:
            return False
    t1, t2 = cc1.tensor.entries, cc2.tensor.entries
    if len(t1) != len(t2):
        return False
    return all(t2.get((int(phi[r]), int(phi[s]), int(phi[t])), 0) == c for (r, s, t), c in t1.items())


def _closure_built(cc: CoherentConfiguration) -> bool:
    return bool(cc.naming and cc.naming.startswith("closure/"))


def algebraically_isomorphic(cc1: CoherentConfiguration, cc2: CoherentConfiguration,
                             tags: Sequence[str] = (), max_rank: int = SEARCH_MAX_RANK
                             ) -> AlgebraicIsoWitness | None:
    """Find a color bijection preserving intersection numbers and mapping each tag to its namesake.

    Two closures built by the same canonical refinement from all of their tagged
    inputs are compared by signature; otherwise a backtracking search runs,
    refused above ``max_rank``.
    """
    tags = tuple(tags)
    if cc1.rank != cc2.rank or cc1.n != cc2.n:
        return None
    full_tags = set(tags) == set(cc1.tags) == set(cc2.tags)
    if _closure_built(cc1) and cc1.naming == cc2.naming and full_tags:
        if canonical_signature(cc1, tags) != canonical_signature(cc2, tags):
            return None
        ident = tuple(range(cc1.rank))
        return AlgebraicIsoWitness(ident, check_witness(cc1, cc2, ident, tags))
    if cc1.rank > max_rank:
        raise BudgetExceeded("algebraic isomorphism search rank", cc1.rank, max_rank)
    phi = _search(cc1, cc2, tags)
    if phi is None:
        return None
    return AlgebraicIsoWitness(tuple(phi), check_witness(cc1, cc2, phi, tags))


def _profiles(cc: CoherentConfiguration, tags: Sequence[str]) -> list[tuple]:
    dense = cc.tensor.dense()
    tmap = cc.transpose_map
    out = []
    for s in range(cc.rank):
        out.append((
            s in cc.reflexive_colors,
            int(tmap[s]) == s,
            int(cc.sizes[s]),
            tuple(name in tags and s in cc.tags[name] for name in tags),
            tuple(sorted(dense[s].ravel().tolist())),
            tuple(sorted(dense[:, s].ravel().tolist())),
            tuple(sorted(dense[:, :, s].ravel().tolist())),
        ))
    return out


def _search(cc1: CoherentConfiguration, cc2: CoherentConfiguration, tags: Sequence[str]) -> list[int] | None:
    for name in tags:
        if len(cc1.tags[name]) != len(cc2.tags[name]):
            return None
    p1, p2 = _profiles(cc1, tags), _profiles(cc2, tags)
    if sorted(p1) != sorted(p2):
        return None
    d1, d2 = cc1.tensor.dense(), cc2.tensor.dense()
    t1, t2 = cc1.transpose_map, cc2.transpose_map
    rank = cc1.rank
    cands = [[s2 for s2 in range(rank) if p2[s2] == p1[s]] for s in range(rank)]
    order = sorted(range(rank), key=lambda s: (len(cands[s]), s))
    phi = [-1] * rank
    used = [False] * rank

    def consistent(s: int, s2: int, placed: list[int]) -> bool:
        ts = int(t1[s])
        if phi[ts] >= 0 and phi[ts] != t2[s2]:
            return False
        if (ts == s) != (t2[s2] == s2):
            return False
        src = np.array(placed + [s])
        dst = np.array([phi[a] for a in placed] + [s2])
        return bool(np.array_equal(d1[np.ix_(src, src, src)], d2[np.ix_(dst, dst, dst)]))

    def extend(i: int) -> bool:
        if i == rank:
            return True
        s = order[i]
        placed = [order[j] for j in range(i)]
        for s2 in cands[s]:
            if used[s2] or not consistent(s, s2, placed):
                continue
            phi[s] = s2
            used[s2] = True
            if extend(i + 1):
                return True
            used[s2] = False
            phi[s] = -1
        return False

    return phi if extend(0) else None
