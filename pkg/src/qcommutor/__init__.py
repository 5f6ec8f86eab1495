"""Exact computations with U_q(g) representations, R-matrices and crystal commutors."""

from .cartan import CartanDatum, build_datum, parse_weight
from .crystal import AbstractCrystal, compare_main2, crystal_commutor, crystal_of, tensor_crystals
from .repn import ModuleRep, build_irreducible, tensor
from .rmatrix import commutor, standard_r, unitarized_r, xi_operator, y_operator
from .scalars import QScalar, parse_scalar, q_power, render

__version__ = "0.1.0"

__all__ = [
    "AbstractCrystal",
    "CartanDatum",
    "ModuleRep",
    "QScalar",
    "build_datum",
    "build_irreducible",
    "commutor",
    "compare_main2",
    "crystal_commutor",
    "crystal_of",
    "parse_scalar",
    "parse_weight",
    "q_power",
    "render",
    "standard_r",
    "tensor",
    "tensor_crystals",
    "unitarized_r",
    "xi_operator",
    "y_operator",
]
