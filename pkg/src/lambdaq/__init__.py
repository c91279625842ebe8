"""Exact computations with the 6-dimensional local algebra Lambda(q) and its modules."""

from .exact import Field, FieldError, Matrix, OrderResult, field_make, kernel_basis, mul_order, rref, solve
from .algebra import (Algebra, algebra_lambda, algebra_opposite, algebra_quotient_rad2,
                      radical_series, regular_module, socle)
from .modules import (BudgetExceeded, Module, ModuleMap, Verdict, cosyzygy, direct_sum, dual,
                      enumerate_submodules, ext1_dim, hom_dim, inf_tf_up_to, is_direct_sum_of,
                      is_extensionless, is_isomorphic, is_reflexive, is_torsionless, semi_gp_up_to,
                      syzygy, transpose)
from .family import (ClassificationReport, FamilyError, ProjPoint, chain_coefficients,
                     classify_closed_form, classify_computational, dual_formula, module_M, module_U,
                     omega_point, omega_prime_point, parse_point, point_make, syzygy_formula)
from .quiver import QuiverGraph, quiver_build
from .verify import VerifyReport, run_verify

__all__ = [
    "Field", "FieldError", "Matrix", "OrderResult", "field_make", "kernel_basis", "mul_order", "rref",
    "solve",
    "Algebra", "algebra_lambda", "algebra_opposite", "algebra_quotient_rad2", "radical_series",
    "regular_module", "socle",
    "BudgetExceeded", "Module", "ModuleMap", "Verdict", "cosyzygy", "direct_sum", "dual",
    "enumerate_submodules", "ext1_dim", "hom_dim", "inf_tf_up_to", "is_direct_sum_of",
    "is_extensionless", "is_isomorphic", "is_reflexive", "is_torsionless", "semi_gp_up_to",
    "syzygy", "transpose",
    "ClassificationReport", "FamilyError", "ProjPoint", "chain_coefficients", "classify_closed_form",
    "classify_computational", "dual_formula", "module_M", "module_U", "omega_point",
    "omega_prime_point", "parse_point", "point_make", "syzygy_formula",
    "QuiverGraph", "quiver_build", "VerifyReport", "run_verify",
]
