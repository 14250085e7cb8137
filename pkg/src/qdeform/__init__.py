"""Exact computations with h-adic deformations of the plane and of
Euclidean four-space: truncated series arithmetic, PBW rewriting, deformed
sl2 representations, ordering prescriptions, star products and transferred
symmetry actions."""

from .ncalg import M2, M2_CLASSICAL, PLANE, PLANE_CLASSICAL, NCPoly, algebra_by_name, normal_form, qdet
from .ordering import IrreducibleBasis, OrderingMap, ordering_map
from .parser import ParseError, parse_poly
from .qarith import HalfInt, qbinom, qfactorial, qnum
from .rep import act, alpha_inv, cg_table, irrep_classical, irrep_deformed
from .scalar import DEFAULT_ORDER, HSeries, RadicalScalar
from .star import StarAlgebra, TransferredAction, classical_action, invariance_report, star

__all__ = [
    "DEFAULT_ORDER",
    "HSeries",
    "RadicalScalar",
    "HalfInt",
    "qnum",
    "qfactorial",
    "qbinom",
    "NCPoly",
    "PLANE",
    "PLANE_CLASSICAL",
    "M2",
    "M2_CLASSICAL",
    "algebra_by_name",
    "normal_form",
    "qdet",
    "act",
    "alpha_inv",
    "cg_table",
    "irrep_classical",
    "irrep_deformed",
    "OrderingMap",
    "IrreducibleBasis",
    "ordering_map",
    "StarAlgebra",
    "TransferredAction",
    "classical_action",
    "invariance_report",
    "star",
    "ParseError",
    "parse_poly",
]
