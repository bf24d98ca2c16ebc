"""Coherent configurations: the type, closures, parabolics and algebraic isomorphisms."""

from .algebraic import AlgebraicIsoWitness, algebraically_isomorphic, canonical_signature, check_witness
from .closure import closure_of_coloring, coherent_closure, refine, wl
from .config import (AxiomReport, CoherentConfiguration, IntersectionTensor, discrete, intersection_numbers,
                     partition_leq, tensor_product, trivial, verify_axioms)
from .parabolic import (PartialParabolic, equivalence_closure, indecomposable_components, is_parabolic,
                        is_partial_parabolic, quotient, restriction)
from .relations import dot_product, transitive_closure

__all__ = [
    "AlgebraicIsoWitness", "AxiomReport", "CoherentConfiguration", "IntersectionTensor", "PartialParabolic",
    "algebraically_isomorphic", "canonical_signature", "check_witness", "closure_of_coloring", "coherent_closure",
    "discrete", "dot_product", "equivalence_closure", "indecomposable_components", "intersection_numbers",
    "is_parabolic", "is_partial_parabolic", "partition_leq", "quotient", "refine", "restriction",
    "tensor_product", "transitive_closure", "trivial", "verify_axioms", "wl",
]
