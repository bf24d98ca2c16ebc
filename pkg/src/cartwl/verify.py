"""Invariant suites run over the built-in corpus."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from ._partition import is_coarser_or_equal, same_partition
from .cc.algebraic import signature_digest
from .cc.closure import wl
from .cc.config import verify_axioms
from .cc.parabolic import PartialParabolic, is_partial_parabolic
from .constructions import exponentiate_graphs, product_closure_check
from .corpus import (atlas_graphs, corpus, match_up_to_isomorphism, product_check_instances,
                     random_graphs, random_products)
from .extension import cylinder, is_two_closed, two_extension
from .factor import (ordered_edge_classes, prime_factorize, product_relation, tau_from_cylinders,
                     tau_relation, tau_relation_from_closure, theta_from_cylinders, theta_relation)
from .graphs import Graph, cartesian_product, complete, cycle, hamming, is_connected, path, star
from .kwl import k_wl, pair_partition, project, wl_m_closed

SUITES = ("axioms", "chain", "factorization", "theorem2", "extension")


@dataclass
class Property:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, label: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(label)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures

    def as_dict(self) -> dict:
        return {"property": self.name, "passed": self.passed, "checked": self.checked,
                "failures": self.failures[:20]}


def _report(suite: str, props: Iterable[Property]) -> dict:
    props = list(props)
    return {"suite": suite, "passed": all(p.passed for p in props), "properties": [p.as_dict() for p in props]}


def suite_axioms(seed: int = 0) -> dict:
    coherent = Property("closure satisfies C1-C3")
    exact = Property("edge relation is a union of closure colors")
    relabel = Property("closure signature is invariant under relabeling")
    rng = np.random.default_rng(seed)
    for name, g in corpus(8, seed):
        cc = wl(g)
        coherent.record(verify_axioms(cc).coherent, name)
        exact.record(cc.is_color_exact(g.adjacency), name)
        if g.n >= 5:
            h = g.relabeled(rng.permutation(g.n))
            relabel.record(signature_digest(cc) == signature_digest(wl(h)), name)
    return _report("axioms", [coherent, exact, relabel])


def suite_chain(seed: int = 0) -> dict:
    base = Property("2-projection of 2-WL equals the closure")
    chain = Property("2-projections of 2-, 3- and 4-WL form a non-decreasing chain")
    discrete = Property("random G(20, 1/2) graphs have a discrete closure")
    closed = Property("graphs with a discrete closure are WL_m-closed")
    for name, g in corpus(8, seed):
        cc = wl(g)
        p2 = pair_partition(k_wl(cc, 2))
        p3 = pair_partition(k_wl(cc, 3))
        p4 = pair_partition(k_wl(cc, 4))
        base.record(same_partition(p2, cc.color), name)
        chain.record(is_coarser_or_equal(p2, p3) and is_coarser_or_equal(p3, p4), name)
    for i, g in enumerate(random_graphs(20, 20, seed)):
        label = f"random_connected:20,{seed + i}"
        is_discrete = wl(g).rank == g.n * g.n
        discrete.record(is_discrete, label)
        if is_discrete:
            closed.record(all(wl_m_closed(g, m) for m in (3, 4, 5, 6)), label)
    return _report("chain", [base, chain, discrete, closed])


def suite_factorization(seed: int = 0, count: int = 100) -> dict:
    roundtrip = Property("random products factor back into their factors, certified")
    unique = Property("factors are unchanged up to isomorphism under relabeling")
    tau = Property("tau from intersection numbers equals tau from common neighbors")
    rng = np.random.default_rng(seed)
    for i, factors in enumerate(random_products(count, seed)):
        g, _ = cartesian_product(factors)
        rep = prime_factorize(g)
        roundtrip.record(rep.certified and match_up_to_isomorphism(list(rep.factors), factors), f"product {i}")
        if i < 10:
            ok = all(match_up_to_isomorphism(list(prime_factorize(g.relabeled(rng.permutation(g.n))).factors),
                                             list(rep.factors)) for _ in range(10))
            unique.record(ok, f"product {i}")
    for name, g in corpus(8, seed):
        if g.n >= 2 and is_connected(g):
            tau.record(tau_relation(g) == tau_relation_from_closure(g), name)
    return _report("factorization", [roundtrip, unique, tau])


def suite_product_closure(seed: int = 0) -> dict:
    conclusion = Property("closure splits as the tensor product of block closures where 2-closed")
    inclusion = Property("block closures lie below the exponentiation of their factors")
    hamming_exp = Property("two copies of WL(K4) under Sym(2) give WL(H(2,4))")
    for name, factors in product_check_instances():
        rep = product_closure_check(factors)
        if rep["hypothesis_two_closed"]:
            conclusion.record(rep["closure_equals_block_tensor"], name)
        inclusion.record(all(b["holds"] for b in rep["block_inclusions"]), name)
    hamming_exp.record(exponentiate_graphs([complete(4)] * 2).same_partition(wl(hamming(2, 4))), "K4, K4")
    return _report("theorem2", [conclusion, inclusion, hamming_exp])


def small_products() -> list[tuple[str, list[Graph]]]:
    """Products of primes on at most 12 vertices."""
    k2, k3, p3 = complete(2), complete(3), path(3)
    return [
        ("K2 x K2", [k2, k2]), ("K2 x K3", [k2, k3]), ("K2 x P3", [k2, p3]),
        ("K2 x K2 x K2", [k2, k2, k2]), ("K3 x K3", [k3, k3]), ("P3 x K3", [p3, k3]),
        ("P3 x P3", [p3, p3]), ("K2 x C5", [k2, cycle(5)]), ("K2 x star3", [k2, star(3)]),
        ("K2 x K2 x K3", [k2, k2, k3]), ("K3 x K4", [k3, complete(4)]), ("K2 x C6", [k2, cycle(6)]),
        ("P3 x P4", [p3, path(4)]),
    ]


def extension_relations_check(g: Graph) -> dict[str, bool]:
    """Theta, tau and the product classes against the 2-extension of ``WL(g)``."""
    n = g.n
    ext = two_extension(wl(g)).extended
    theta, tau = theta_relation(g), tau_relation(g)
    _, classes = product_relation(g)
    labels = np.full(n * n, -1, dtype=np.int64)
    e = g.ordered_edges()
    labels[e[:, 0] * n + e[:, 1]] = ordered_edge_classes(g, classes.class_of)
    return {
        "theta_in_extension": ext.is_color_exact(theta.point_mask(n)),
        "tau_in_extension": ext.is_color_exact(tau.point_mask(n)),
        "classes_partial_parabolic": is_partial_parabolic(ext, PartialParabolic(n * n, labels)),
        "theta_cylinder_form": theta == theta_from_cylinders(g),
        "tau_cylinder_form": tau == tau_from_cylinders(g),
    }


def projection_refines_extension(g: Graph) -> bool:
    """The 4-projection of 6-WL refines the 2-extension, both as colorings of ``Omega^4``."""
    cc = wl(g)
    pr4 = project(k_wl(cc, 6), [1, 2, 3, 4])
    ext = two_extension(cc).extended
    return is_coarser_or_equal(ext.color.ravel(), pr4)


def suite_extension(seed: int = 0, six_wl_max_n: int = 6) -> dict:
    cyl = Property("cylinders over WL(C5) colors are extension relations")
    rel = Property("theta, tau and product classes are extension relations on small products")
    forms = Property("theta and tau equal their cylinder forms")
    proj = Property("4-projection of 6-WL refines the 2-extension")
    closed = Property("WL_6-closed graphs have a 2-closed closure")
    cc5 = wl(cycle(5))
    ext5 = two_extension(cc5).extended
    for s in range(cc5.rank):
        for i in (1, 2):
            for j in (1, 2):
                cyl.record(ext5.is_color_exact(cylinder(cc5, [s], i, j).matrix), f"color {s}, ({i}, {j})")
    for name, factors in small_products():
        g, _ = cartesian_product(factors)
        r = extension_relations_check(g)
        rel.record(r["theta_in_extension"] and r["tau_in_extension"] and r["classes_partial_parabolic"], name)
        forms.record(r["theta_cylinder_form"] and r["tau_cylinder_form"], name)
    for i, g in enumerate(atlas_graphs(six_wl_max_n, min_n=2)):
        label = f"atlas:{i}"
        cc = wl(g)
        kc = k_wl(cc, 6)
        ext = two_extension(cc)
        proj.record(is_coarser_or_equal(ext.extended.color.ravel(), project(kc, [1, 2, 3, 4])), label)
        if same_partition(pair_partition(kc), cc.color):
            closed.record(is_two_closed(cc, extension=ext), label)
    return _report("extension", [cyl, rel, forms, proj, closed])


RUNNERS: dict[str, Callable[..., dict]] = {
    "axioms": suite_axioms,
    "chain": suite_chain,
    "factorization": suite_factorization,
    "theorem2": suite_product_closure,
    "extension": suite_extension,
}


def run_suite(name: str, seed: int = 0) -> dict:
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return RUNNERS[name](seed=seed)
