"""Exact derivation of the wild character varieties (affine cubic surfaces)
of the six rank-3 JKT Painleve representations from their Stokes data."""

from .polyring import (LaurentPoly, Monomial, NumericAssignment, parse,
                       format_poly, solve_linear, evaluate_numeric, var_id)
from .stokes import RationalAngle, SymMat3, formal_monodromy, stokes_matrix, \
    singular_directions
from .model import (CASE_NAMES, CaseSpec, TwistClass, case_spec, validate_spec,
                    UnknownCaseError)
from .monodromy import closure_equations, topological_monodromy, back_substitutions
from .invariants import (invariant_monomials, rewrite_in_invariants,
                         tautological_check, torus_weights)
from .pipeline import (CaseReport, CubicSurface, derive_case, eliminate,
                       oracle_verify, to_cubic_normal_form,
                       specialize_unit_cube_root)

__version__ = "0.1.0"
