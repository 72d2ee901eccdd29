"""CM recognition, reflex construction, and the reflex-norm identity suite."""

import random

import pytest

from cmfields.closure import splitting_data
from cmfields.cmreflex import (
    CMField,
    CMType,
    NotCM,
    cm_check,
    conjugate_ideal,
    enumerate_cm_types,
    reflex_field,
    reflex_norm_elem,
    reflex_norm_ideal,
    verify_reflex_identities,
)
from cmfields.errors import ConjugatesMissing
from cmfields.ideals import FracIdeal, prime_split
from cmfields.numfield import NumberField
from cmfields.orders import maximal_order
from cmfields.unipoly import UniPoly


class TestCMCheck:
    def test_gauss_is_cm(self, gauss, gauss_cm):
        assert isinstance(gauss_cm, CMField)
        assert gauss_cm.real_subfield.degree == 1

    def test_real_cubic_is_not(self):
        assert isinstance(cm_check(NumberField(UniPoly([-2, 0, 0, 1]))), NotCM)

    def test_real_quadratic_is_not(self):
        assert isinstance(cm_check(NumberField(UniPoly([-2, 0, 1]))), NotCM)

    def test_quartic_with_sqrt6_subfield(self, quartic_cm):
        assert isinstance(quartic_cm, CMField)
        F = quartic_cm.real_subfield
        assert F.degree == 2
        assert maximal_order(F).disc() == 24  # Q(sqrt 6)

    def test_conjugation_is_involution(self, quartic_cm):
        conj = quartic_cm.conj
        assert not conj.is_identity()
        assert conj.compose(conj).is_identity()

    def test_real_embedding_lands_in_fixed_part(self, quartic_cm):
        w = quartic_cm.real_embedding.image_of_generator
        assert quartic_cm.conj(w) == w


class TestEnumerate:
    def test_counts(self, gauss_cm, quartic_cm, zeta5_cm):
        assert len(enumerate_cm_types(gauss_cm)) == 2
        assert len(enumerate_cm_types(quartic_cm)) == 4
        assert len(enumerate_cm_types(zeta5_cm)) == 4

    def test_types_partition_pairs(self, quartic_cm):
        for t in enumerate_cm_types(quartic_cm):
            conj_t = t.conjugate_type()
            assert t.phi & conj_t.phi == set()
            assert t.phi | conj_t.phi == set(range(4))


class TestReflexField:
    def test_gauss_self_reflex(self, gauss_cm):
        t = enumerate_cm_types(gauss_cm)[0]
        rd = reflex_field(t)
        assert rd.reflex_field.degree == 2
        assert rd.reflex_field.min_poly == gauss_cm.field.min_poly

    def test_zeta5_reflex_is_degree_four(self, zeta5_cm):
        for t in enumerate_cm_types(zeta5_cm):
            rd = reflex_field(t)
            assert rd.reflex_field.degree == 4
            # E* = E here: the reflex field is isomorphic to Q(zeta5)
            assert maximal_order(rd.reflex_field).disc() == 125

    def test_quartic_reflex_inside_octic(self, quartic_cm):
        for t in enumerate_cm_types(quartic_cm):
            rd = reflex_field(t)
            assert rd.closure.degree == 8
            assert rd.reflex_field.degree == 4
            assert len(rd.stabilizer) == 2
            # Psi is a CM-type on E*
            assert len(rd.reflex_type.indices()) == 2

    def test_stabilizer_is_pointwise_fixer(self, quartic_cm):
        # sigma Phi = Phi <=> sigma fixes E* pointwise
        for t in enumerate_cm_types(quartic_cm):
            rd = reflex_field(t)
            sd = rd.sd
            w = rd.reflex_inclusion.image_of_generator
            fixers = sd.fixing_subgroup_of(w)
            assert sorted(fixers) == sorted(rd.stabilizer)

    def test_reflex_of_reflex_contains_e(self, gauss_cm, zeta5_cm, quartic_cm):
        # the double-reflex stabilizer fixes the reference copy of E pointwise
        for cmf in (gauss_cm, zeta5_cm, quartic_cm):
            for t in enumerate_cm_types(cmf):
                rd = reflex_field(t)
                sd = rd.sd
                size = len(sd.autos)
                stab = set(rd.stabilizer)
                cosets = {frozenset(sd.mult[s][u] for u in stab) for s in rd.psi_reps}
                double_stab = [
                    s for s in range(size)
                    if {frozenset(sd.mult[s][c] for c in coset) for coset in cosets}
                    == cosets
                ]
                point_stab = set(sd.stabilizer_of_point(rd.j0))
                assert set(double_stab) <= point_stab


class TestReflexNormElements:
    def test_gauss_degenerate(self, gauss, gauss_cm):
        a = gauss.element([3, 1])
        values = set()
        for t in enumerate_cm_types(gauss_cm):
            values.add(reflex_norm_elem(t, gauss, a).coords)
        assert values == {(3, 1), (3, -1)}

    def test_conjugate_product_on_two(self, gauss, gauss_cm):
        t = enumerate_cm_types(gauss_cm)[0]
        two = gauss.element([2])
        n = reflex_norm_elem(t, gauss, two)
        assert n == two
        assert (n * gauss_cm.conj(n)).coords[0] == 4

    def test_zeta5_product_of_conjugates(self, zeta5, zeta5_cm):
        sd = splitting_data(zeta5)
        z = zeta5.gen()
        id_idx = next(i for i, e in enumerate(sd.embeddings) if e.image_of_generator == z)
        sq_idx = next(i for i, e in enumerate(sd.embeddings) if e.image_of_generator == z * z)
        t = CMType(zeta5_cm, {id_idx, sq_idx})
        n = reflex_norm_elem(t, zeta5, z)
        assert n == z**4
        assert n * zeta5_cm.conj(n) == zeta5.one()

    def test_conjugates_missing(self, quartic, quartic_cm):
        t = enumerate_cm_types(quartic_cm)[0]
        with pytest.raises(ConjugatesMissing):
            reflex_norm_elem(t, quartic, quartic.gen())


class TestReflexNormIdeals:
    def test_gauss_degenerate_prime(self, gauss, gauss_cm):
        O = maximal_order(gauss)
        t = enumerate_cm_types(gauss_cm)[0]
        Ip = FracIdeal.principal(O, gauss.one() + gauss.gen())
        out = reflex_norm_ideal(t, gauss, Ip)
        assert out in (Ip, conjugate_ideal(gauss_cm, Ip))

    def test_zeta5_split_11(self, zeta5, zeta5_cm):
        O = maximal_order(zeta5)
        t = enumerate_cm_types(zeta5_cm)[0]
        P11 = prime_split(11, O)[0]
        out = reflex_norm_ideal(t, zeta5, P11)
        assert out.norm() == 121
        assert out * conjugate_ideal(zeta5_cm, out) == FracIdeal.principal(
            O, zeta5.one() * 11
        )

    def test_inert_prime_gives_power(self, zeta5, zeta5_cm):
        O = maximal_order(zeta5)
        t = enumerate_cm_types(zeta5_cm)[0]
        P2 = prime_split(2, O)[0]  # inert, f = 4
        out = reflex_norm_ideal(t, zeta5, P2)
        assert out.norm() == 16**2  # q^g with q = 16, g = 2

    def test_principal_consistency(self, zeta5, zeta5_cm):
        O = maximal_order(zeta5)
        t = enumerate_cm_types(zeta5_cm)[0]
        rng = random.Random(8)
        for _ in range(10):
            e = zeta5.element([rng.randint(-3, 3) for _ in range(4)])
            if e.is_zero() or e.norm() % 5 == 0:
                continue
            lhs = reflex_norm_ideal(t, zeta5, FracIdeal.principal(O, e))
            rhs = FracIdeal.principal(O, reflex_norm_elem(t, zeta5, e))
            assert lhs == rhs


class TestBeyondTheQuarticCorpus:
    def test_zeta8_reflex_is_quadratic(self):
        # Klein-four cyclotomic: every CM-type reflexes to an imaginary
        # quadratic field (Q(i) or Q(sqrt-2)); [L : E*] = 2 exercises the
        # nontrivial exact-root path with k = E
        z8 = NumberField(UniPoly([1, 0, 0, 0, 1]))
        cmf = cm_check(z8)
        assert isinstance(cmf, CMField)
        assert maximal_order(cmf.real_subfield).disc() == 8
        discs = []
        for t in enumerate_cm_types(cmf):
            rd = reflex_field(t)
            assert rd.reflex_field.degree == 2
            assert len(rd.reflex_type.indices()) == 1
            discs.append(maximal_order(rd.reflex_field).disc())
        assert sorted(discs) == [-8, -8, -4, -4]
        t0 = enumerate_cm_types(cmf)[0]
        rep = verify_reflex_identities(t0, z8, 20, seed=3, norm_bound=60)
        assert rep["ok"], rep

    def test_zeta7_dimension_three(self):
        # sextic cyclotomic, g = 3: two Galois-coset types reflex to
        # Q(sqrt-7), the six primitive ones to the field itself
        z7 = NumberField(UniPoly([1, 1, 1, 1, 1, 1, 1]))
        cmf = cm_check(z7)
        assert isinstance(cmf, CMField)
        assert maximal_order(cmf.real_subfield).disc() == 49
        types = enumerate_cm_types(cmf)
        assert len(types) == 8
        degrees = sorted(reflex_field(t).reflex_field.degree for t in types)
        assert degrees == [2, 2, 6, 6, 6, 6, 6, 6]
        small = next(t for t in types if reflex_field(t).reflex_field.degree == 2)
        assert maximal_order(reflex_field(small).reflex_field).disc() == -7
        rep = verify_reflex_identities(small, z7, 8, seed=3, norm_bound=40)
        assert rep["ok"], rep
        big = next(t for t in types if reflex_field(t).reflex_field.degree == 6)
        rep = verify_reflex_identities(big, z7, 8, seed=3, norm_bound=40)
        assert rep["ok"], rep


class TestIdentitySuite:
    def test_gauss_full(self, gauss, gauss_cm):
        t = enumerate_cm_types(gauss_cm)[0]
        rep = verify_reflex_identities(t, gauss, 40, seed=7, norm_bound=80)
        assert rep["ok"], rep
        assert rep["identities"]["conjugate_product_elements"]["fail"] == 0

    def test_sqrt5_full(self, sqrt5, sqrt5_cm):
        t = enumerate_cm_types(sqrt5_cm)[0]
        rep = verify_reflex_identities(t, sqrt5, 40, seed=7, norm_bound=80)
        assert rep["ok"], rep

    def test_zeta5_full(self, zeta5, zeta5_cm):
        t = enumerate_cm_types(zeta5_cm)[1]
        rep = verify_reflex_identities(t, zeta5, 25, seed=7, norm_bound=60)
        assert rep["ok"], rep

    def test_quartic_one_type(self, quartic, quartic_cm):
        t = enumerate_cm_types(quartic_cm)[0]
        L = splitting_data(quartic).closure
        rep = verify_reflex_identities(t, L, 8, seed=7, norm_bound=40)
        assert rep["ok"], rep
        assert rep["skipped_index_primes"] == [2, 3, 23]
