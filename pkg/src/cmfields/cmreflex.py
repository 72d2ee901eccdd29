"""CM-fields, CM-types, reflex fields and reflex norms.

A CM-type is stored as a set of canonical embedding indices of E (one per
conjugate pair). All Galois-theoretic work happens inside the closure L of E,
whose tracked roots are aligned with the canonical complex embeddings, so the
group action on embeddings is pure permutation arithmetic. The reflex field
is the fixed field of the stabilizer of the type; the reflex type comes from
the coset decomposition of the inverted lift of the type, and the reflex norm
on elements of the reflex field is the product over the reflex type, pulled
back along the reference embedding of E.
"""

import itertools
import random
from fractions import Fraction

from .closure import complex_conjugation, splitting_data
from .embeddings import certified_embeddings, locate_among
from .errors import ConjugatesMissing, RootNotExact
from .ideals import FracIdeal, factor_ideal, prime_split
from .linalg import right_kernel_fraction
from .numfield import FieldMorphism, NumberField
from .orders import maximal_order
from .unipoly import sturm_real_root_count


class NotCM:
    """Value returned by cm_check for fields that are not CM."""

    def __init__(self, reason):
        self.reason = reason

    def __repr__(self):
        return f"NotCM({self.reason!r})"

    def __bool__(self):
        return False


class CMField:
    """A CM-field with its canonical involution and totally real subfield."""

    def __init__(self, field, conj, real_subfield, real_embedding):
        self.field = field
        self.conj = conj
        self.real_subfield = real_subfield
        self.real_embedding = real_embedding

    def __repr__(self):
        return f"CMField({self.field!r})"

    def __eq__(self, other):
        return isinstance(other, CMField) and self.field == other.field

    def __hash__(self):
        return hash(self.field)

    @property
    def g(self):
        return self.field.degree // 2

    def conjugate_pairs(self):
        """Sorted list of (i, conj(i)) index pairs with i < conj(i)."""
        embs = certified_embeddings(self.field)
        out = []
        for e in embs:
            c = e.conj_index()
            if e.root_index < c:
                out.append((e.root_index, c))
        return sorted(out)


def _fixed_subfield(field, sigma):
    """(subfield F, embedding F -> field) for the fixed field of an involution."""
    n = field.degree
    # +1 eigenspace of sigma as a matrix on the power basis
    cols = []
    gen_pow = field.one()
    for j in range(n):
        img = sigma(gen_pow)
        cols.append([img.coords[i] - gen_pow.coords[i] for i in range(n)])
        gen_pow = gen_pow * field.gen()
    A = [[cols[j][i] for j in range(n)] for i in range(n)]
    kernel = right_kernel_fraction(A)
    target_deg = len(kernel)
    elems = [field.element(v) for v in kernel]
    # deterministic primitive-element ladder over the eigenspace
    candidates = list(elems)
    for a, b in itertools.combinations(elems, 2):
        candidates.append(a + b)
        candidates.append(a + b * 2)
        candidates.append(a + b * 3)
    for w in candidates:
        mp = w.min_poly_over_q()
        if mp.degree == target_deg:
            F = NumberField(mp, check=False)
            emb = FieldMorphism(F, field, w, check=True)
            return F, emb
    raise AssertionError("no primitive element for the fixed field")


def cm_check(K):
    """Decide whether K is a CM-field; returns CMField or a NotCM value."""
    if K.degree % 2 != 0 or K.degree < 2:
        return NotCM("degree is odd or too small")
    if sturm_real_root_count(K.min_poly) != 0:
        return NotCM("field has a real embedding")
    conj = complex_conjugation(K)
    if conj is None:
        return NotCM("no automorphism commutes with complex conjugation")
    if conj.is_identity():
        return NotCM("complex conjugation acts trivially")
    comp = conj.compose(conj)
    if not comp.is_identity():
        return NotCM("conjugation is not an involution")
    F, emb = _fixed_subfield(K, conj)
    if sturm_real_root_count(F.min_poly) != F.degree:
        return NotCM("fixed field of the involution is not totally real")
    if 2 * F.degree != K.degree:
        return NotCM("fixed field has the wrong degree")
    return CMField(K, conj, F, emb)


class CMType:
    """A CM-type: one canonical embedding index from each conjugate pair."""

    def __init__(self, cmfield, phi):
        self.cmfield = cmfield
        self.phi = frozenset(phi)
        pairs = cmfield.conjugate_pairs()
        chosen = set(self.phi)
        assert len(chosen) == len(pairs), "CM-type has the wrong size"
        for a, b in pairs:
            assert (a in chosen) != (b in chosen), "CM-type must pick one per pair"

    def __repr__(self):
        return f"CMType({sorted(self.phi)})"

    def __eq__(self, other):
        return (
            isinstance(other, CMType)
            and self.cmfield == other.cmfield
            and self.phi == other.phi
        )

    def __hash__(self):
        return hash((self.cmfield.field, self.phi))

    def indices(self):
        return sorted(self.phi)

    def conjugate_type(self):
        embs = certified_embeddings(self.cmfield.field)
        return CMType(self.cmfield, {embs[i].conj_index() for i in self.phi})


def enumerate_cm_types(E):
    """All 2^g CM-types on E in canonical (binary counter over pairs) order."""
    pairs = E.conjugate_pairs()
    out = []
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        out.append(CMType(E, {p[b] for p, b in zip(pairs, bits)}))
    return out


class ReflexData:
    """Reflex field and reflex type of a CM-pair, realized in the closure L.

    Attributes:
      cmtype:            the input CM-type (E, Phi)
      closure:           L (Galois over Q), containing all conjugates of E
      reflex_field:      E* as an abstract NumberField
      reflex_cmfield:    CMField structure on E*
      reflex_inclusion:  FieldMorphism E* -> L
      reflex_type:       CMType on E* (the type Psi)
      psi_reps:          automorphism indices of L restricting to Psi
    """

    def __init__(self, cmtype):
        E = cmtype.cmfield
        sd = splitting_data(E.field)
        self.cmtype = cmtype
        self.sd = sd
        self.closure = sd.closure
        phi = set(cmtype.phi)
        size = len(sd.autos)

        stab = [s for s in range(size) if {sd.perm[s][i] for i in phi} == phi]
        self.stabilizer = stab

        # primitive element of the fixed field of the stabilizer
        L = sd.closure
        gen = L.gen()
        candidates = [gen, gen * gen, gen * gen * gen, gen * gen + gen]
        c = 1
        target = size // len(stab)
        found = None
        while found is None:
            for u in candidates:
                w = L.zero()
                for s in stab:
                    w = w + sd.autos[s](u)
                mp = w.min_poly_over_q()
                if mp.degree == target:
                    found = (w, mp)
                    break
            if found is None:
                c += 1
                candidates = [gen * c + gen * gen, (gen + c) * (gen + c) * (gen + c)]
                if c > 40:
                    raise AssertionError("no primitive element for the reflex field")
        w, mp = found
        self.reflex_field = NumberField(mp, check=False)
        self.reflex_inclusion = FieldMorphism(self.reflex_field, L, w, check=True)

        rc = cm_check(self.reflex_field)
        assert isinstance(rc, CMField), "reflex field is not CM"
        self.reflex_cmfield = rc

        # Psi: decompose {s : s maps the reference root into Phi}^(-1) into
        # left cosets of the stabilizer; each coset restricts to one embedding
        j0 = 0
        lift = [s for s in range(size) if sd.perm[s][j0] in phi]
        inverted = [sd.inv[s] for s in lift]
        self.j0 = j0
        reps = []
        covered = set()
        for s in sorted(inverted):
            if s in covered:
                continue
            reps.append(s)
            coset = {sd.mult[s][t] for t in stab}
            covered |= coset
        assert len(covered) == len(inverted) and set(inverted) == covered
        self.psi_reps = reps

        psi_indices = set()
        for s in reps:
            v = sd.autos[s](w)
            idx = locate_among(certified_embeddings(L)[0], v, self.reflex_field)
            psi_indices.add(idx)
        assert len(psi_indices) == len(reps), "coset representatives collide"
        self.reflex_type = CMType(rc, psi_indices)

    def reflex_norm_element(self, b):
        """N_Phi(b) in E, for b in the reflex field E*."""
        sd = self.sd
        if b.field != self.reflex_field:
            raise ValueError("element not in the reflex field")
        bL = self.reflex_inclusion(b)
        prod = sd.closure.one()
        for s in self.psi_reps:
            prod = prod * sd.autos[s](bL)
        out = sd.embeddings[self.j0].preimage(prod)
        assert out is not None, "reflex norm did not land in E"
        return out

    def reflex_norm_ideal(self, b_ideal):
        """N_Phi on a fractional ideal of O_{E*}: exact [L:E*]-th ideal root."""
        OL = maximal_order(self.closure)
        incl = self.reflex_inclusion
        gens = b_ideal.two_element_like_generators()
        extended = FracIdeal.from_generators(OL, [incl(g) for g in gens])
        big = reflex_norm_ideal(self.cmtype, self.closure, extended)
        d = self.closure.degree // self.reflex_field.degree
        return _exact_ideal_root(big, d)


def _exact_ideal_root(a, d):
    """The unique fractional ideal whose d-th power is a; RootNotExact otherwise."""
    if d == 1:
        return a
    order = a.order
    root = FracIdeal.unit_ideal(order)
    for P, v in factor_ideal(a).items():
        if v % d != 0:
            raise RootNotExact(f"valuation {v} not divisible by {d}")
        root = root * P ** (v // d)
    return root


def reflex_field(cmtype):
    """ReflexData for a CM-pair (cached per type on the CM field object)."""
    cache = getattr(cmtype.cmfield.field, "_reflex_cache", None)
    if cache is None:
        cache = cmtype.cmfield.field._reflex_cache = {}
    if cmtype.phi not in cache:
        cache[cmtype.phi] = ReflexData(cmtype)
    return cache[cmtype.phi]


def _require_closure(cmtype, k):
    """k must be realized inside the closure; returns the splitting data."""
    sd = splitting_data(cmtype.cmfield.field)
    if k != sd.closure:
        raise ConjugatesMissing(
            "k must contain all conjugates of E; pass E itself (when Galois) "
            "or the Galois closure"
        )
    return sd


def reflex_norm_elem(cmtype, k, a):
    """N_{k,Phi}(a) for a in k: the product over Phi of phi^{-1}(Nm_{k/phi E} a)."""
    sd = _require_closure(cmtype, k)
    if a.field != sd.closure:
        raise ValueError("element not in k")
    if a.is_zero():
        raise ValueError("reflex norm of zero")
    E = cmtype.cmfield.field
    size = len(sd.autos)
    out = E.one()
    for i in sorted(cmtype.phi):
        # Gal(L / phi_i(E)): automorphisms fixing the i-th root
        fixes = [s for s in range(size) if sd.perm[s][i] == i]
        rel_norm = sd.closure.one()
        for s in fixes:
            rel_norm = rel_norm * sd.autos[s](a)
        pre = sd.embeddings[i].preimage(rel_norm)
        assert pre is not None, "relative norm not in phi(E)"
        out = out * pre
    return out


def _prime_pullback(sd, i, P_k, order_E, order_k):
    """The prime q of E with phi_i(q) O_k <= P_k, and f(P_k / phi_i q).

    Cached on the k-prime (prime_split returns shared instances).
    """
    cache = getattr(P_k, "_pullbacks", None)
    if cache is None:
        cache = P_k._pullbacks = {}
    key = (id(sd), i)
    if key in cache:
        return cache[key]
    for q in prime_split(P_k.p, order_E):
        img = FracIdeal.from_generators(
            order_k, [sd.embeddings[i](g) for g in q.two_element_like_generators()]
        )
        if P_k.contains_ideal(img):
            assert P_k.f % q.f == 0
            cache[key] = (q, P_k.f // q.f)
            return cache[key]
    raise AssertionError("no pullback prime found")


def reflex_norm_ideal(cmtype, k, a):
    """N_{k,Phi} of a fractional ideal of O_k, by prime decomposition.

    Multiplicative and compatible with reflex_norm_elem on principal ideals.
    """
    sd = _require_closure(cmtype, k)
    order_k = maximal_order(sd.closure)
    if a.order != order_k:
        raise ValueError("ideal not over O_k")
    E = cmtype.cmfield.field
    order_E = maximal_order(E)
    out = FracIdeal.unit_ideal(order_E)
    for P_k, v in factor_ideal(a).items():
        for i in sorted(cmtype.phi):
            q, f_rel = _prime_pullback(sd, i, P_k, order_E, order_k)
            out = out * q ** (v * f_rel)
    return out


def conjugate_ideal(cmfield, a):
    """The image of an ideal of O_E under the canonical involution."""
    order = a.order
    return FracIdeal.from_generators(
        order, [cmfield.conj(g) for g in a.two_element_like_generators()]
    )


def _random_element(field, rng, height=8):
    while True:
        coords = [Fraction(rng.randint(-height, height)) for _ in range(field.degree)]
        e = field.element(coords)
        if not e.is_zero():
            return e


def verify_reflex_identities(cmtype, k, n_samples, seed, norm_bound=200):
    """Exact checks of the reflex-norm identity suite; returns a report dict.

    Identities: the unit-norm consequence of the product formula, the
    conjugate-product identity on elements and ideals, compatibility through
    the reflex field (elements and ideals), ideal multiplicativity, the
    exact-root identity for reflex-field ideals, and element/ideal consistency
    on principal ideals. Any failure is recorded with a witness.
    """
    sd = _require_closure(cmtype, k)
    E = cmtype.cmfield
    L = sd.closure
    OL = maximal_order(L)
    OE = maximal_order(E.field)
    rd = reflex_field(cmtype)
    OStar = maximal_order(rd.reflex_field)
    deg_over_reflex = L.degree // rd.reflex_field.degree
    rng = random.Random(seed)
    report = {"field": [int(c) for c in E.field.min_poly.int_coeffs()[0]],
              "phi": cmtype.indices(), "samples": n_samples, "seed": seed,
              "identities": {}}

    def record(name, ok, witness=None):
        entry = report["identities"].setdefault(name, {"pass": 0, "fail": 0})
        if ok:
            entry["pass"] += 1
        else:
            entry["fail"] += 1
            entry.setdefault("witness", witness)

    # elements
    for _ in range(n_samples):
        a = _random_element(L, rng)
        na = reflex_norm_elem(cmtype, k, a)
        lhs = na * E.conj(na)
        rhs = a.norm()
        record("conjugate_product_elements", lhs == E.field.element([rhs]), [str(c) for c in a.coords])
        # compatibility through the reflex field: N_{k,Phi} = N_Phi . Nm_{k/E*}
        rel = L.one()
        for s in rd.stabilizer:
            rel = rel * sd.autos[s](a)
        b = rd.reflex_inclusion.preimage(rel)
        ok = b is not None
        if ok:
            ok = rd.reflex_norm_element(b) == na
        record("reflex_compatibility_elements", ok, [str(c) for c in a.coords])

    # unit preservation: torsion units of O_k map to units of O_E
    from .principal import torsion_units

    for u in torsion_units(OL):
        n_u = reflex_norm_elem(cmtype, k, u)
        record("unit_preservation", abs(n_u.norm()) == 1, [str(c) for c in u.coords])

    # ideals: all primes of norm < norm_bound whose residue p splits in every
    # order the suite touches (index primes are refused by prime_split and
    # reported rather than silently mis-factored)
    from .errors import IndexDivisible
    from .intutil import primes_up_to

    skipped = []
    good_p = []
    for p in primes_up_to(norm_bound - 1):
        if any(o.equation_index % p == 0 for o in (OL, OE, OStar)):
            skipped.append(p)
            continue
        good_p.append(p)
    primes = []
    for p in good_p:
        for P in prime_split(p, OL):
            if P.norm() < norm_bound:
                primes.append(P)
    report["skipped_index_primes"] = skipped
    report["prime_count"] = len(primes)

    for P in primes:
        nP = reflex_norm_ideal(cmtype, k, P)
        conj_nP = conjugate_ideal(E, nP)
        rhs = FracIdeal.principal(OE, E.field.one() * 1).scaled(P.norm())
        record("conjugate_product_ideals", nP * conj_nP == rhs, repr(P))

    for _ in range(min(n_samples, 60)):
        if len(primes) < 2:
            break
        P1, P2 = rng.choice(primes), rng.choice(primes)
        lhs = reflex_norm_ideal(cmtype, k, P1 * P2)
        rhs = reflex_norm_ideal(cmtype, k, P1) * reflex_norm_ideal(cmtype, k, P2)
        record("ideal_multiplicativity", lhs == rhs, (repr(P1), repr(P2)))

    # principal consistency: N_{k,Phi}((a)) = (N_{k,Phi}(a)); elements whose
    # norm hits an index prime are resampled (the library refuses them)
    import math as _math

    bad_prod = 1
    for o in (OL, OE):
        bad_prod *= o.equation_index
    done = tried = 0
    while done < min(n_samples, 12) and tried < 60 * n_samples:
        tried += 1
        a = _random_element(L, rng, height=3)
        if _math.gcd(int(abs(a.norm())), bad_prod) != 1:
            continue
        lhs = reflex_norm_ideal(cmtype, k, FracIdeal.principal(OL, a))
        rhs = FracIdeal.principal(OE, reflex_norm_elem(cmtype, k, a))
        record("principal_consistency", lhs == rhs, [str(c) for c in a.coords])
        done += 1
    report["principal_samples"] = done

    # exact-root and compatibility identities on ideals extended from the
    # reflex field; the expensive norm of the extension is computed once
    star_primes = []
    for p in good_p:
        for q in prime_split(p, OStar):
            if q.norm() < norm_bound:
                star_primes.append(q)
    report["reflex_prime_count"] = len(star_primes)
    for q in star_primes:
        ext = FracIdeal.from_generators(
            OL, [rd.reflex_inclusion(g) for g in q.two_element_like_generators()]
        )
        big = reflex_norm_ideal(cmtype, k, ext)
        try:
            root = _exact_ideal_root(big, deg_over_reflex)
        except RootNotExact as exc:
            record("reflex_ideal_root", False, f"{q!r}: {exc}")
            continue
        record("reflex_ideal_root", root**deg_over_reflex == big, repr(q))
        # compatibility: N_{k,Phi}(ext) = N_Phi(Nm_{k/E*} ext); the right
        # side sends the extension's relative norm back through N_Phi
        rel = _relative_norm_ideal(ext, rd.reflex_inclusion, OStar)
        rhs = rd.reflex_norm_ideal(rel)
        record("reflex_compatibility_ideals", big == rhs, repr(q))

    report["ok"] = all(v["fail"] == 0 for v in report["identities"].values())
    return report


def _relative_norm_ideal(a, incl, order_down):
    """Nm_{L/F} of a fractional ideal of O_L along an inclusion F -> L."""
    order_L = a.order
    out = FracIdeal.unit_ideal(order_down)
    for P, v in factor_ideal(a).items():
        down = None
        for q in prime_split(P.p, order_down):
            img = FracIdeal.from_generators(
                order_L, [incl(g) for g in q.two_element_like_generators()]
            )
            if P.contains_ideal(img):
                down = q
                break
        assert down is not None
        assert P.f % down.f == 0
        out = out * down ** (v * (P.f // down.f))
    return out
