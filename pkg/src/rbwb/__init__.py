"""Exact verification and search for Rota-Baxter operators on small
algebras, groups, group algebras and Hopf algebras."""

__version__ = "0.1.0"

from .scalars import GF, QQ, FieldCtx, Scalar
from .linalg import Mat, Vec
from .algebra import AlgebraSpec
from .hopf import HopfSpec, builtin_h4
from .groups import GroupRB, GroupTable, builtin_group
from .rbops import RBCandidate, check_algebra_rb, check_chrb, nchrb_check
from .families import FamilySpec, family_instantiate

__all__ = [
    "GF",
    "QQ",
    "FieldCtx",
    "Scalar",
    "Mat",
    "Vec",
    "AlgebraSpec",
    "HopfSpec",
    "builtin_h4",
    "GroupRB",
    "GroupTable",
    "builtin_group",
    "RBCandidate",
    "check_algebra_rb",
    "check_chrb",
    "nchrb_check",
    "FamilySpec",
    "family_instantiate",
]
