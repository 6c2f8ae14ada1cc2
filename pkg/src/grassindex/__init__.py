"""Exact computation of the Z2-index of the Grassmannian G(2n, n)."""

from .kernel import (
    IndexReport,
    compute_index,
    kernel_generators,
    replicate_hand_relations,
    theorem_bounds,
    theorem_exact,
)
from .monomials import Monomial, PolyZ2, binom_mod2, enumerate_monomials
from .wreath import Od, SqC, WreathClass, mul, odot, sqe, wreath_basis

__version__ = "0.1.0"

__all__ = [
    "IndexReport", "Monomial", "Od", "PolyZ2", "SqC", "WreathClass", "binom_mod2",
    "compute_index", "enumerate_monomials", "kernel_generators", "mul", "odot",
    "replicate_hand_relations", "sqe", "theorem_bounds", "theorem_exact", "wreath_basis",
]
