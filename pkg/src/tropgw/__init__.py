"""Relative and absolute Gromov-Witten invariants of blowups of the plane.

Connected relative invariants are computed exactly by equating two sweeps of
the disconnected generating series; absolute invariants follow by the
elementary-symmetric substitution.
"""

from .absolute import HomologyClass, absolute_invariant, kontsevich
from .configs import CurveConfig, connected, make_config
from .formal import FormalSum, assemble_exp
from .lattice import Vec, wedge
from .solver import InvariantTable, Solver, invariant, invariant_table, verify_identity
from .sweep import expand_left, expand_right, expand_sum

__all__ = [
    "CurveConfig",
    "FormalSum",
    "HomologyClass",
    "InvariantTable",
    "Solver",
    "Vec",
    "absolute_invariant",
    "assemble_exp",
    "connected",
    "expand_left",
    "expand_right",
    "expand_sum",
    "invariant",
    "invariant_table",
    "kontsevich",
    "make_config",
    "verify_identity",
    "wedge",
]

__version__ = "0.1.0"
