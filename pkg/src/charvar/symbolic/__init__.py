"""Exact algebra kernel: cyclotomic coefficients, Laurent matrices, ranks,
and integer lattice normal forms."""

from .cyclotomic import CycloContext, cyclotomic_polynomial, euler_phi, lcm
from .laurent import LaurentMatrix, LaurentPoly, MonomialUnit, parse_laurent
from .linalg import (
    default_prime,
    nullspace_q,
    rank_finite_field,
    rank_fraction_free,
    rank_q,
    row_reduce,
)
from .smith import (
    hermite_normal_form,
    integer_kernel,
    integer_left_kernel,
    saturate,
    smith_normal_form,
)

__all__ = [
    "CycloContext", "cyclotomic_polynomial", "euler_phi", "lcm",
    "LaurentMatrix", "LaurentPoly", "MonomialUnit", "parse_laurent",
    "default_prime", "nullspace_q", "rank_finite_field", "rank_fraction_free",
    "rank_q", "row_reduce",
    "hermite_normal_form", "integer_kernel", "integer_left_kernel", "saturate",
    "smith_normal_form",
]
