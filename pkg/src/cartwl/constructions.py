"""Exponentiation of WL-equivalent configurations by permutation groups, and the
block-wise checks for closures of Cartesian products.

Permutations are tuples of images over ``0..n-1``; ``g[i]`` is the image of ``i``.
Products act left to right: ``(g * h)[i] = h[g[i]]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._partition import equivalence_classes, same_partition
from .cc.algebraic import AlgebraicIsoWitness, algebraically_isomorphic, check_witness
from .cc.closure import wl
from .cc.config import CoherentConfiguration, partition_leq, tensor_product, verify_axioms
from .errors import BudgetExceeded, CoherenceError, InvalidGraphSpec, NotEquivalentError
from .extension import is_two_closed
from .factor import prime_factorize
from .graphs import Graph, cartesian_product, is_connected

GROUP_MAX_DEGREE = 8
HYPOTHESIS_MAX_POINTS = 30

Perm = tuple[int, ...]


def compose(g: Perm, h: Perm) -> Perm:
    """Apply ``g`` first, then ``h``."""
    return tuple(h[x] for x in g)


def inverse(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def parse_cycles(text: str, n: int) -> Perm:
    """Parse 1-based cycle notation such as ``"(1 2)(3 4)"``; ``"()"`` is the identity."""
    perm = list(range(n))
    for chunk in text.replace(")", ")\n").splitlines():
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ValueError(f"malformed cycle {chunk!r}")
        pts = [int(x) - 1 for x in chunk[1:-1].replace(",", " ").split()]
        if any(not 0 <= p < n for p in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"cycle {chunk!r} is not a cycle on 1..{n}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    if sorted(perm) != list(range(n)):
        raise ValueError(f"cycles {text!r} overlap")
    return tuple(perm)


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and set(self.elements) <= set(other.elements)


def enumerate_group(n: int, generators: Sequence[Sequence[int]] = ()) -> PermGroup:
    """All elements generated by ``generators``, by breadth-first closure."""
    if n > GROUP_MAX_DEGREE:
        raise BudgetExceeded("permutation group degree", n, GROUP_MAX_DEGREE)
    gens = tuple(tuple(int(x) for x in g) for g in generators)
    for g in gens:
        if sorted(g) != list(range(n)):
            raise ValueError(f"{g} is not a permutation of 0..{n - 1}")
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return PermGroup(n, gens, tuple(sorted(seen)))


def symmetric_group(n: int) -> PermGroup:
    if n <= 1:
        return enumerate_group(n)
    cyc = tuple(list(range(1, n)) + [0])
    swap = tuple([1, 0] + list(range(2, n)))
    return enumerate_group(n, [swap, cyc])


def trivial_group(n: int) -> PermGroup:
    return enumerate_group(n)


# --- families of algebraically isomorphic configurations -----------------------------


@dataclass(frozen=True, eq=False)
class IsoFamily:
    """Configurations ``ccs`` with color bijections ``phi[i][j]`` from ``ccs[i]`` to ``ccs[j]``."""

    ccs: tuple[CoherentConfiguration, ...]
    phi: tuple[tuple[np.ndarray, ...], ...]

    @property
    def degree(self) -> int:
        return len(self.ccs)

    @property
    def rank(self) -> int:
        return self.ccs[0].rank


def build_iso_family(graphs: Sequence[Graph]) -> IsoFamily:
    """Closures of pairwise WL-equivalent graphs with bijections composed through the first one.

    Raises ``NotEquivalentError`` naming the first pair that is not equivalent.
    """
    if not graphs:
        raise ValueError("a family needs at least one graph")
    ccs = [wl(g) for g in graphs]
    to_first = []
    for j, cc in enumerate(ccs):
        w = algebraically_isomorphic(ccs[0], cc, tags=("E",))
        if w is None or not w.verified:
            raise NotEquivalentError(0, j)
        to_first.append(np.asarray(w.color_bijection, dtype=np.int64))
    n = len(ccs)
    phi = []
    for i in range(n):
        inv_i = np.argsort(to_first[i])
        row = []
        for j in range(n):
            p = to_first[j][inv_i]
            if not check_witness(ccs[i], ccs[j], p, ("E",)):
                raise NotEquivalentError(i, j)
            p.setflags(write=False)
            row.append(p)
        phi.append(tuple(row))
    return IsoFamily(tuple(ccs), tuple(phi))


def cocycle_holds(family: IsoFamily) -> bool:
    """``phi_ii`` is the identity and ``phi_jk after phi_ij`` equals ``phi_ik`` for all triples."""
    n, ident = family.degree, np.arange(family.rank)
    if any(not np.array_equal(family.phi[i][i], ident) for i in range(n)):
        return False
    return all(np.array_equal(family.phi[j][k][family.phi[i][j]], family.phi[i][k])
               for i in range(n) for j in range(n) for k in range(n))


def _tensor_codes(ccs: Sequence[CoherentConfiguration], rank: int) -> np.ndarray:
    """Row-major code of the color tuple at every cell of the tensor product."""
    code = np.zeros((1, 1), dtype=np.int64)
    for cc in ccs:
        m = code.shape[0]
        code = (code[:, None, :, None] * rank + cc.color[None, :, None, :]).reshape(m * cc.n, m * cc.n)
    return code


def _phi_g_on_codes(family: IsoFamily, g: Perm) -> np.ndarray:
    """Image of every tuple code under ``phi_g``: component ``i`` becomes ``phi[j][i](s_j)``, ``j = g^-1(i)``."""
    n, r = family.degree, family.rank
    tuples = np.indices((r,) * n).reshape(n, -1).T
    ginv = inverse(g)
    out = np.zeros(len(tuples), dtype=np.int64)
    for i in range(n):
        j = ginv[i]
        out = out * r + family.phi[j][i][tuples[:, j]]
    return out


def _fuse(family: IsoFamily, perms: Sequence[Perm]) -> np.ndarray:
    total = family.rank ** family.degree
    left = [np.arange(total)]
    right = [np.arange(total)]
    for g in perms:
        left.append(np.arange(total))
        right.append(_phi_g_on_codes(family, g))
    return equivalence_classes(total, np.concatenate(left), np.concatenate(right))


def exponentiate(family: IsoFamily, group: PermGroup, check_all: bool = True,
                 verify: bool = True) -> CoherentConfiguration:
    """Fuse the tensor colors of the family into orbits of the bijections ``phi_g``, g in the group.

    Orbits are computed from the generators; with ``check_all`` they are
    compared against the orbits of all group elements.
    """
    if family.degree != group.degree:
        raise ValueError(f"family has {family.degree} members, group has degree {group.degree}")
    if len({cc.rank for cc in family.ccs}) != 1:
        raise ValueError("family members have different ranks")
    orbit = _fuse(family, group.generators)
    if check_all and not same_partition(orbit, _fuse(family, group.elements)):
        raise CoherenceError("generator orbits differ from orbits of the whole group")
    codes = _tensor_codes(family.ccs, family.rank)
    out = CoherentConfiguration.from_colors(orbit[codes], naming="exponentiation")
    if verify:
        report = verify_axioms(out)
        if not report.coherent:
            raise CoherenceError("exponentiation is not coherent: " + "; ".join(report.violations))
    return out


# --- equivalence classes of factors and the block checks ----------------------------


@dataclass(frozen=True)
class EquivalenceClassing:
    """Index classes of pairwise WL-equivalent graphs, in order of first member.

    ``witnesses[j]`` maps the colors of the first member of ``j``'s class onto ``j``'s colors.
    """

    classes: tuple[tuple[int, ...], ...]
    witnesses: dict[int, AlgebraicIsoWitness]


def wl_equivalence_classes(graphs: Sequence[Graph]) -> EquivalenceClassing:
    ccs = [wl(g) for g in graphs]
    classes: list[list[int]] = []
    witnesses: dict[int, AlgebraicIsoWitness] = {}
    for j, cc in enumerate(ccs):
        for members in classes:
            w = algebraically_isomorphic(ccs[members[0]], cc, tags=("E",))
            if w is not None and w.verified:
                members.append(j)
                witnesses[j] = w
                break
        else:
            classes.append([j])
            witnesses[j] = AlgebraicIsoWitness(tuple(range(cc.rank)), True)
    return EquivalenceClassing(tuple(tuple(c) for c in classes), witnesses)


def _check_prime_factors(factors: Sequence[Graph]) -> None:
    for i, f in enumerate(factors):
        if not is_connected(f) or f.n < 2:
            raise InvalidGraphSpec(f"factor {i} must be connected with at least 2 vertices")
        if prime_factorize(f).num_factors != 1:
            raise InvalidGraphSpec(f"factor {i} is not prime")


def block_order_permutation(sizes: Sequence[int], blocks: Sequence[Sequence[int]]) -> np.ndarray:
    """For each product vertex, its index when coordinates are regrouped block by block."""
    coords = np.indices(tuple(sizes)).reshape(len(sizes), -1).T
    order = [i for b in blocks for i in b]
    idx = np.zeros(len(coords), dtype=np.int64)
    for i in order:
        idx = idx * sizes[i] + coords[:, i]
    return idx


def exponentiate_graphs(graphs: Sequence[Graph], group: PermGroup | None = None) -> CoherentConfiguration:
    family = build_iso_family(graphs)
    return exponentiate(family, group or symmetric_group(len(graphs)))


def product_closure_check(factors: Sequence[Graph], hypothesis_cap: int = HYPOTHESIS_MAX_POINTS) -> dict:
    """Compare the closure of a product of primes with the tensor product of block closures.

    Blocks gather WL-equivalent factors. Each check is reported on its own:
    ``hypothesis_two_closed`` is None when the product exceeds ``hypothesis_cap``.
    """
    factors = list(factors)
    _check_prime_factors(factors)
    x, _ = cartesian_product(factors)
    cc = wl(x)
    classing = wl_equivalence_classes(factors)
    hyp = is_two_closed(cc, cap=hypothesis_cap) if x.n <= hypothesis_cap else None
    block_graphs = [cartesian_product([factors[j] for j in block])[0] for block in classing.classes]
    block_ccs = [wl(b) for b in block_graphs]
    tensor = tensor_product(block_ccs)
    perm = block_order_permutation([f.n for f in factors], classing.classes)
    splits = same_partition(cc.color, tensor.color[np.ix_(perm, perm)])
    inclusions = []
    for block, bcc in zip(classing.classes, block_ccs):
        exp = exponentiate_graphs([factors[j] for j in block])
        holds = partition_leq(bcc, exp)
        inclusions.append({"class": list(block), "holds": holds, "strict": holds and not bcc.same_partition(exp)})
    return {
        "n": x.n,
        "classes": [list(c) for c in classing.classes],
        "num_classes": len(classing.classes),
        "closure_rank": cc.rank,
        "hypothesis_two_closed": hyp,
        "closure_equals_block_tensor": splits,
        "block_inclusions": inclusions,
    }


def closure_refines_exponentiation(factors: Sequence[Graph]) -> bool:
    """The closure of the product of pairwise WL-equivalent graphs lies below their exponentiation."""
    factors = list(factors)
    for i, f in enumerate(factors):
        if not is_connected(f):
            raise InvalidGraphSpec(f"factor {i} must be connected")
    exp = exponentiate_graphs(factors)
    return partition_leq(wl(cartesian_product(factors)[0]), exp)


def probe_inclusion_equality(factors: Sequence[Graph]) -> dict:
    """Report whether the closure of the product equals the exponentiation or is strictly coarser."""
    factors = list(factors)
    if not closure_refines_exponentiation(factors):
        raise CoherenceError("closure of the product is not below the exponentiation")
    cc = wl(cartesian_product(factors)[0])
    exp = exponentiate_graphs(factors)
    return {"closure_rank": cc.rank, "exponentiation_rank": exp.rank,
            "equal": cc.same_partition(exp), "strict": not cc.same_partition(exp)}


def all_subgroups_by_generators(n: int, max_gens: int = 2) -> list[PermGroup]:
    """Distinct subgroups of Sym(n) generated by at most ``max_gens`` elements (small n only)."""
    sym = symmetric_group(n)
    seen: dict[tuple, PermGroup] = {}
    for k in range(max_gens + 1):
        for gens in itertools.combinations(sym.elements, k):
            grp = enumerate_group(n, gens)
            seen.setdefault(grp.elements, grp)
    return list(seen.values())
