"""Exact number-field foundation: the public surface of the arithmetic layer.

Types: Rational (= fractions.Fraction), UniPoly, NumberField, NFElement,
FieldMorphism, Embedding. Operations: factor_rational_poly, nf_automorphisms,
galois_closure, certified_embeddings.
"""

from fractions import Fraction as Rational

from .closure import galois_closure, nf_automorphisms, splitting_data
from .embeddings import Ball, Embedding, certified_embeddings
from .errors import ClosureTooLarge
from .numfield import FieldMorphism, NFElement, NumberField
from .ratfactor import is_irreducible_over_q
from .unipoly import UniPoly, poly_discriminant, sturm_real_root_count


def factor_rational_poly(f):
    """Factor a nonzero rational polynomial into monic irreducibles.

    Returns [(irreducible UniPoly, multiplicity)]; the product of the factors
    (with multiplicities) equals f up to the leading constant.
    """
    from .ratfactor import factor_rational_poly as _impl

    _, factors = _impl(f)
    return factors


RATIONAL_FIELD = NumberField(UniPoly([0, 1]), check=False)

__all__ = [
    "Rational",
    "UniPoly",
    "NumberField",
    "NFElement",
    "FieldMorphism",
    "Embedding",
    "Ball",
    "ClosureTooLarge",
    "factor_rational_poly",
    "nf_automorphisms",
    "galois_closure",
    "certified_embeddings",
    "splitting_data",
    "is_irreducible_over_q",
    "poly_discriminant",
    "sturm_real_root_count",
    "RATIONAL_FIELD",
]
