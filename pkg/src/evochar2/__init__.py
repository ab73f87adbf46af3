"""Evolution operators x -> x^2 of commutative algebras over F_{2^p}."""

from .algebra import Algebra, evolution_apply, hadamard_composite, operator_of, parse_algebra, serialize_algebra
from .dynamics import element_profile, operator_profile, orbit, train_polynomial, verify_identity
from .field import F2, Field, make_field

__all__ = [
    "Algebra",
    "F2",
    "Field",
    "element_profile",
    "evolution_apply",
    "hadamard_composite",
    "make_field",
    "operator_of",
    "operator_profile",
    "orbit",
    "parse_algebra",
    "serialize_algebra",
    "train_polynomial",
    "verify_identity",
]
