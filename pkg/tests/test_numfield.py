"""Element arithmetic, morphisms, and edge cases of the number-field core."""

import random
from fractions import Fraction

import pytest

from cmfields.errors import EnumerationBoundExceeded
from cmfields.numfield import FieldMorphism, NumberField
from cmfields.unipoly import UniPoly


class TestElements:
    def test_field_axioms_random(self, zeta5):
        rng = random.Random(12)
        for _ in range(60):
            a = zeta5.element([rng.randint(-9, 9) for _ in range(4)])
            b = zeta5.element([rng.randint(-9, 9) for _ in range(4)])
            c = zeta5.element([rng.randint(-9, 9) for _ in range(4)])
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            if not a.is_zero():
                assert a * a.inverse() == zeta5.one()
                assert (b / a) * a == b

    def test_rational_coercion(self, gauss):
        i = gauss.gen()
        assert i + 1 == gauss.element([1, 1])
        assert 2 * i == i * 2
        assert 1 - i == -(i - 1)
        assert (i + 1) / 2 == gauss.element([Fraction(1, 2), Fraction(1, 2)])
        assert 2 / (i + 1) == gauss.element([1, -1])

    def test_pow_negative(self, gauss):
        i = gauss.gen()
        assert (i + 1) ** -2 == ((i + 1) ** 2).inverse()
        assert i**0 == gauss.one()

    def test_norm_trace_minpoly(self, zeta5):
        z = zeta5.gen()
        assert z.norm() == 1
        assert z.trace() == -1
        assert (z + z.inverse()).min_poly_over_q() == UniPoly([-1, 1, 1])

    def test_zero_division(self, gauss):
        with pytest.raises(ZeroDivisionError):
            gauss.zero().inverse()

    def test_reducible_minpoly_rejected(self):
        with pytest.raises(ValueError):
            NumberField(UniPoly([-1, 0, 1]))

    def test_nonmonic_rejected(self):
        with pytest.raises(ValueError):
            NumberField(UniPoly([1, 0, 2]))


class TestMorphisms:
    def test_bad_generator_image_rejected(self, gauss, zeta5):
        with pytest.raises(ValueError):
            FieldMorphism(gauss, zeta5, zeta5.gen())

    def test_compose_and_inverse(self, zeta5):
        from cmfields.closure import nf_automorphisms

        autos = nf_automorphisms(zeta5)
        z = zeta5.gen()
        sigma = next(a for a in autos if a.image_of_generator == z * z)
        tau = sigma.inverse_automorphism()
        assert sigma.compose(tau).is_identity()
        assert tau.compose(sigma).is_identity()

    def test_preimage(self, quartic, quartic_cm):
        from cmfields.closure import splitting_data

        sd = splitting_data(quartic)
        j0 = sd.embeddings[0]
        x = quartic.element([1, 2, 0, 1])
        assert j0.preimage(j0(x)) == x
        # an element outside the image has no preimage
        assert j0.preimage(sd.closure.gen()) is None


class TestPrincipalityBudget:
    def test_exhausted_budget_is_honest(self, zeta5):
        from cmfields.ideals import FracIdeal, prime_split
        from cmfields.orders import maximal_order
        from cmfields.principal import is_principal

        O = maximal_order(zeta5)
        P = prime_split(11, O)[0]
        with pytest.raises(EnumerationBoundExceeded):
            is_principal(P, budget_doublings=0)
