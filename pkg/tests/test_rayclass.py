"""Ray class groups, discrete logs, and the reflex transport check."""

import math
import random

import pytest

from cmfields.cmreflex import enumerate_cm_types
from cmfields.errors import ModulusTooLarge, NotCoprime, UnitsUnavailable
from cmfields.ideals import FracIdeal, coprime_scale, factor_ideal, prime_split
from cmfields.intutil import primes_up_to
from cmfields.orders import maximal_order
from cmfields.rayclass import (
    Modulus,
    ray_class,
    ray_class_group,
    reflex_transport_check,
)

from oracles import totient_of_modulus
from test_ideals import random_ideal


class TestGroupOrders:
    def test_trivial_modulus_gauss(self, gauss, gauss_cm):
        O = maximal_order(gauss)
        G = ray_class_group(gauss_cm, Modulus(FracIdeal.unit_ideal(O)))
        assert G.order_count == 1 and G.elementary_divisors == []

    def test_gauss_mod_5(self, gauss, gauss_cm):
        O = maximal_order(gauss)
        G = ray_class_group(gauss_cm, Modulus(FracIdeal.principal(O, gauss.one() * 5)))
        assert G.order_count == 4  # 16 / 4

    def test_sqrt5_trivial_modulus(self, sqrt5, sqrt5_cm):
        O = maximal_order(sqrt5)
        G = ray_class_group(sqrt5_cm, Modulus(FracIdeal.unit_ideal(O)))
        assert G.order_count == 2  # h(-20) = 2

    def test_exact_sequence_orders_up_to_500(self, gauss, sqrt5, gauss_cm, sqrt5_cm):
        # |C_m| * |image units| = |(O/m)x| * h for assorted moduli of norm <= 500
        for field, cmf, h in ((gauss, gauss_cm, 1), (sqrt5, sqrt5_cm, 2)):
            O = maximal_order(field)
            moduli = []
            for val in (2, 3, 5, 7, 9, 11, 13, 21):
                m = FracIdeal.principal(O, field.one() * val)
                if m.norm() <= 500:
                    moduli.append(m)
            P = prime_split(41, O)[0]
            if P.norm() <= 500:
                moduli.append(P)
            for m_ideal in moduli:
                G = ray_class_group(cmf, Modulus(m_ideal))
                phi = totient_of_modulus(factor_ideal(m_ideal))
                assert phi == G.residues.unit_count
                assert G.order_count * G._unit_image_size == phi * h

    def test_prime_power_modulus(self, gauss, gauss_cm):
        # modulus P^3 for the split prime above 5: Phi = 5^2 * 4 = 100,
        # torsion units inject, so |C_m| = 25
        O = maximal_order(gauss)
        P = prime_split(5, O)[0]
        G = ray_class_group(gauss_cm, Modulus(P**3))
        assert G.order_count == 25
        c = G.ray_class(FracIdeal.principal(O, gauss.one() * 7))
        acc = G.identity()
        for _ in range(25):
            acc = G.add(acc, c)
        assert acc == G.identity()

    def test_ramified_modulus(self, gauss, gauss_cm):
        # (1+i)^2 = (2): the ramified prime squared
        O = maximal_order(gauss)
        P2 = prime_split(2, O)[0]
        G = ray_class_group(gauss_cm, Modulus(P2 * P2))
        # (Z[i]/2)x has order 2, torsion unit image is {1, i} -> order 2
        assert G.order_count * G._unit_image_size == G.residues.unit_count

    def test_units_unavailable(self, quartic, quartic_cm):
        O = maximal_order(quartic)
        with pytest.raises(UnitsUnavailable):
            ray_class_group(quartic_cm, Modulus(FracIdeal.principal(O, quartic.one() * 2)))

    def test_modulus_cap(self, gauss, gauss_cm):
        O = maximal_order(gauss)
        with pytest.raises(ModulusTooLarge):
            ray_class_group(
                gauss_cm, Modulus(FracIdeal.principal(O, gauss.one() * 101))
            )


class TestRayClassMap:
    def test_worked_examples(self, gauss, gauss_cm):
        O = maximal_order(gauss)
        G = ray_class_group(gauss_cm, Modulus(FracIdeal.principal(O, gauss.one() * 5)))
        c7 = G.ray_class(FracIdeal.principal(O, gauss.one() * 7))
        acc = G.identity()
        for _ in range(4):
            acc = G.add(acc, c7)
        assert acc == G.identity()
        # a generator 1 mod 5 lands on the identity
        assert G.ray_class(
            FracIdeal.principal(O, gauss.one() + gauss.gen() * 5)
        ) == G.identity()
        assert G.ray_class(FracIdeal.unit_ideal(O)) == G.identity()

    def test_not_coprime(self, gauss, gauss_cm):
        O = maximal_order(gauss)
        G = ray_class_group(gauss_cm, Modulus(FracIdeal.principal(O, gauss.one() * 5)))
        with pytest.raises(NotCoprime):
            G.ray_class(FracIdeal.principal(O, gauss.one() * 5))

    def test_homomorphism_on_random_pairs(self, gauss, sqrt5, gauss_cm, sqrt5_cm):
        cases = [(gauss, gauss_cm, 7), (sqrt5, sqrt5_cm, 3)]
        done = 0
        rng = random.Random(55)
        for field, cmf, mval in cases:
            O = maximal_order(field)
            G = ray_class_group(cmf, Modulus(FracIdeal.principal(O, field.one() * mval)))
            while done < 250 * (cases.index((field, cmf, mval)) + 1):
                a = random_ideal(O, rng, prime_bound=30)
                b = random_ideal(O, rng, prime_bound=30)
                ok = True
                for x in (a, b):
                    xi = x.scaled(x.den)
                    if math.gcd(int(xi.norm()) * x.den, mval) != 1:
                        ok = False
                if not ok:
                    continue
                assert G.ray_class(a * b) == G.add(G.ray_class(a), G.ray_class(b))
                done += 1

    def test_coprime_scale_lands_in_domain(self, sqrt5, sqrt5_cm):
        # Lemma-integration: coprime_scale output is always in the domain
        O = maximal_order(sqrt5)
        m = 3
        G = ray_class_group(sqrt5_cm, Modulus(FracIdeal.principal(O, sqrt5.one() * m)))
        rng = random.Random(66)
        for _ in range(60):
            a = random_ideal(O, rng, prime_bound=20)
            _, b = coprime_scale(a, m)
            G.ray_class(b)  # must not raise NotCoprime


class TestTransport:
    def test_gauss_m3(self, gauss, gauss_cm):
        O = maximal_order(gauss)
        t = enumerate_cm_types(gauss_cm)[0]
        rep = reflex_transport_check(
            t, 3, FracIdeal.principal(O, gauss.one() * 3), 30, seed=11
        )
        assert rep["ok"] and rep["multiplicativity"]

    def test_zeta5_m2(self, zeta5, zeta5_cm):
        O = maximal_order(zeta5)
        t = enumerate_cm_types(zeta5_cm)[0]
        rep = reflex_transport_check(
            t, 2, FracIdeal.principal(O, zeta5.one() * 2), 30, seed=12
        )
        assert rep["ok"] and rep["multiplicativity"]

    def test_negative_control_gauss(self, gauss, gauss_cm):
        O = maximal_order(gauss)
        t = enumerate_cm_types(gauss_cm)[0]
        rep = reflex_transport_check(
            t, 3, FracIdeal.principal(O, gauss.one() * 3), 30, seed=11,
            negative_control=True,
        )
        assert rep["nontrivial_seen"]
