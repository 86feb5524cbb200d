"""Exact classification of difference and difference-differential
Galois groups of second-order linear recurrences over Q(x), with
machine-verified certificates of the differential-algebraic relations
among solutions."""

from .classify import (
    Classification,
    Constraint,
    DeltaConstAlpha,
    DeltaConstDet,
    DeltaConstLambda,
    DeltaConstMonomial,
    DetTorsion,
    DetTorsionDihedral,
    FullGroup,
    GroupDescriptor,
    IterateData,
    LinearDeltaOp,
    MonomialTorsion,
    Shape,
    TorsionAlpha,
    TorsionLambda,
    TorsionLink,
    UnipotentEmbedding,
    UnipotentFull,
    UnipotentTrivial,
    classify,
    classify_full,
    erase_delta,
)
from .cli import EquationInput, format_equation, parse_equation, parse_ratfunc
from .fields import AlgNum, NumberField, quadratic_field
from .markers import (
    Cardinality,
    Completeness,
    DegreeCap,
    Inconclusive,
    InternalInconsistency,
    OrderError,
    ParseError,
    UnsupportedField,
    ZeroInput,
)
from .polys import Poly
from .ratfunc import RationalFunction
from .relations import (
    CasoratianLogDeriv,
    CasoratianPower,
    Hypergeometric,
    Independence,
    LogDerivRational,
    MonomialLogDeriv,
    MonomialRational,
    ProductZero,
    RelationCertificate,
    UnipotentRelation,
    emit_relations,
    verify_certificate,
)
from .riccati import solve_first_riccati, solve_second_riccati
from .summation import (
    abramov_rational_solutions,
    discrete_residues,
    is_summable,
    solve_multiplicative,
    solve_telescoper,
)

__version__ = "0.1.0"

__all__ = [
    "AlgNum",
    "Cardinality",
    "CasoratianLogDeriv",
    "CasoratianPower",
    "Classification",
    "Completeness",
    "Constraint",
    "DegreeCap",
    "DeltaConstAlpha",
    "DeltaConstDet",
    "DeltaConstLambda",
    "DeltaConstMonomial",
    "DetTorsion",
    "DetTorsionDihedral",
    "EquationInput",
    "FullGroup",
    "GroupDescriptor",
    "Hypergeometric",
    "Inconclusive",
    "Independence",
    "InternalInconsistency",
    "IterateData",
    "LinearDeltaOp",
    "LogDerivRational",
    "MonomialLogDeriv",
    "MonomialRational",
    "MonomialTorsion",
    "NumberField",
    "OrderError",
    "ParseError",
    "Poly",
    "ProductZero",
    "RationalFunction",
    "RelationCertificate",
    "Shape",
    "TorsionAlpha",
    "TorsionLambda",
    "TorsionLink",
    "UnipotentEmbedding",
    "UnipotentFull",
    "UnipotentTrivial",
    "UnsupportedField",
    "ZeroInput",
    "abramov_rational_solutions",
    "classify",
    "classify_full",
    "discrete_residues",
    "emit_relations",
    "erase_delta",
    "format_equation",
    "is_summable",
    "parse_equation",
    "parse_ratfunc",
    "quadratic_field",
    "solve_first_riccati",
    "solve_multiplicative",
    "solve_second_riccati",
    "solve_telescoper",
    "verify_certificate",
]
