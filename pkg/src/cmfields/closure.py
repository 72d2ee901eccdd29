"""Galois closures by iterated root adjunction, with full root tracking.

The closure of K = Q[x]/(f) is built by repeatedly adjoining a root of the
unsplit part R of f. Each round forms the etale algebra A = L[y]/(R), finds a
primitive element g = y + c*theta by linear algebra on its powers (no
resultants), factors the degree-(dim A) minimal polynomial over Q, and reads
off one component per factor: degree-[L:Q] components yield roots already in
L, a larger component becomes the new L. Because only roots of f are ever
adjoined, the final primitive element is a known integer combination of
tracked roots, which makes the automorphism group a finite search.
"""

from fractions import Fraction

from .errors import ClosureTooLarge
from .linalg import solve_fraction, solve_general
from .numfield import FieldMorphism, NumberField
from .ratfactor import factor_rational_poly
from .unipoly import UniPoly

CLOSURE_DEGREE_CAP = 16


def _lpoly_trim(p):
    while p and p[-1].is_zero():
        p.pop()
    return p


def _lpoly_mul(a, b):
    if not a or not b:
        return []
    field = a[0].field
    out = [field.zero() for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if not ca.is_zero():
            for j, cb in enumerate(b):
                if not cb.is_zero():
                    out[i + j] = out[i + j] + ca * cb
    return _lpoly_trim(out)


def _lpoly_divmod_monic(a, b):
    """Divide by a monic polynomial over the field."""
    a = list(a)
    d = len(b) - 1
    if len(a) - 1 < d:
        return [], _lpoly_trim(a)
    field = b[-1].field
    q = [field.zero() for _ in range(len(a) - d)]
    for k in range(len(q) - 1, -1, -1):
        c = a[k + d]
        if not c.is_zero():
            q[k] = c
            for i, bc in enumerate(b):
                a[k + i] = a[k + i] - c * bc
    return _lpoly_trim(q), _lpoly_trim(a[:d])


def _lpoly_eval(p, x):
    field = x.field
    acc = field.zero()
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _lpoly_from_rational(field, poly):
    return _lpoly_trim([field.element([c]) for c in poly.coeffs])


class _Algebra:
    """L[y]/(R) with R monic squarefree over L; elements are y-coefficient lists."""

    def __init__(self, field, rel):
        self.field = field
        self.rel = rel
        self.deg = len(rel) - 1
        self.dim = field.degree * self.deg

    def theta(self):
        return [self.field.gen()]

    def y(self):
        return [self.field.zero(), self.field.one()]

    def add(self, a, b):
        out = []
        for i in range(max(len(a), len(b))):
            ca = a[i] if i < len(a) else self.field.zero()
            cb = b[i] if i < len(b) else self.field.zero()
            out.append(ca + cb)
        return _lpoly_trim(out)

    def mul(self, a, b):
        return _lpoly_divmod_monic(_lpoly_mul(a, b), self.rel)[1]

    def scal(self, a, q):
        return _lpoly_trim([c * q for c in a])

    def vector(self, a):
        n = self.field.degree
        out = []
        for b in range(self.deg):
            coeffs = a[b].coords if b < len(a) else (Fraction(0),) * n
            out.extend(coeffs)
        return list(out)


def _primitive_minpoly(alg, gamma):
    """Powers of gamma and its monic minimal polynomial; None if not primitive."""
    D = alg.dim
    powers = [[alg.field.one()]]
    vecs = [alg.vector(powers[0])]
    cur = powers[0]
    for k in range(1, D + 1):
        cur = alg.mul(cur, gamma)
        A = [[vecs[j][i] for j in range(k)] for i in range(D)]
        target = alg.vector(cur)
        sol = solve_general(A, target)
        if sol is not None:
            if k < D:
                return None, None, None
            h = UniPoly([-c for c in sol] + [1])
            return h, powers, vecs
        powers.append(cur)
        vecs.append(target)
    raise AssertionError("no dependency at full dimension")


def _round_adjoin(field, roots, rel, gen_combo):
    """One adjunction round. Returns updated (field, roots, rel, gen_combo, morphism)."""
    alg = _Algebra(field, rel)
    if alg.dim > CLOSURE_DEGREE_CAP:
        raise ClosureTooLarge(
            f"splitting algebra dimension {alg.dim} exceeds cap {CLOSURE_DEGREE_CAP}"
        )
    h = None
    for c in range(1, 50):
        gamma = alg.add(alg.y(), alg.scal(alg.theta(), Fraction(c)))
        h, powers, vecs = _primitive_minpoly(alg, gamma)
        if h is not None:
            shift = Fraction(c)
            break
    if h is None:
        raise AssertionError("no primitive element found")
    _, factors = factor_rational_poly(h)
    assert all(m == 1 for _, m in factors), "splitting algebra not etale"

    D = alg.dim
    pw_matrix = [[vecs[j][i] for j in range(D)] for i in range(D)]
    w_theta = solve_fraction(pw_matrix, alg.vector(alg.theta()))
    w_y = solve_fraction(pw_matrix, alg.vector(alg.y()))

    comps = []
    for h_t, _ in factors:
        L_t = NumberField(h_t, check=False)
        theta_img = L_t.from_poly(UniPoly(w_theta))
        y_img = L_t.from_poly(UniPoly(w_y))
        assert field.min_poly(theta_img).is_zero()
        comps.append((h_t.degree, L_t, theta_img, y_img))

    n = field.degree
    in_field = [c for c in comps if c[0] == n]
    growing = [c for c in comps if c[0] > n]

    peeled = []
    for _, L_t, theta_img, y_img in in_field:
        iota_t = FieldMorphism(field, L_t, theta_img, check=False)
        r = iota_t.preimage(y_img)
        assert r is not None
        peeled.append(r)

    if not growing:
        for r in peeled:
            rel = _lpoly_divmod_monic(rel, [-r, field.one()])[0]
            roots.append(r)
        return field, roots, rel, gen_combo, None

    growing.sort(key=lambda c: c[0])
    _, L_new, theta_img, y_img = growing[-1]
    if L_new.degree > CLOSURE_DEGREE_CAP:
        raise ClosureTooLarge(f"closure degree {L_new.degree} exceeds cap")
    iota = FieldMorphism(field, L_new, theta_img, check=False)
    roots = [iota(r) for r in roots]
    rel = [iota(c) for c in rel]
    new_combo = [(len(roots), Fraction(1))] + [(i, shift * w) for i, w in gen_combo]
    roots.append(y_img)
    rel = _lpoly_divmod_monic(rel, [-y_img, L_new.one()])[0]
    for r in peeled:
        rm = iota(r)
        rel = _lpoly_divmod_monic(rel, [-rm, L_new.one()])[0]
        roots.append(rm)
    return L_new, roots, rel, new_combo, iota


class SplittingData:
    """Galois closure of a field with tracked roots and the full automorphism group.

    Attributes:
      field:       the input field K
      closure:     L, a splitting field of K.min_poly (Galois over Q)
      roots:       roots of K.min_poly in L; roots[i] realizes the i-th canonical
                   complex embedding of K (composed with closure_embedding_zero)
      embeddings:  FieldMorphisms K -> L, one per root, same order
      autos:       FieldMorphisms L -> L; autos[0] is the identity
      perm:        perm[s][i] = j iff autos[s](roots[i]) == roots[j]
      mult:        mult[s][t] = index of autos[s] . autos[t] (s after t)
      inv:         inverse index per group element
    """

    def __init__(self, field):
        f = field.min_poly
        if field.degree > 8:
            raise ClosureTooLarge("closure is only computed for fields of degree <= 8")
        L = field
        roots = [field.gen()]
        gen_combo = [(0, Fraction(1))]
        rel = _lpoly_divmod_monic(
            _lpoly_from_rational(field, f), [-roots[0], field.one()]
        )[0]

        while len(rel) - 1 > 0:
            if len(rel) - 1 == 1:
                roots.append(-rel[0])
                rel = [L.one()]
                break
            # cheap peels before any algebra round: negatives (even polynomials),
            # powers of known roots (cyclotomic-type fields), pairwise products
            progress = True
            while progress and len(rel) - 1 >= 1:
                progress = False
                candidates = []
                for r in roots:
                    candidates.append(-r)
                    power = r
                    for _ in range(field.degree - 1):
                        power = power * r
                        candidates.append(power)
                for i, r in enumerate(roots):
                    for s in roots[i + 1 :]:
                        candidates.append(r * s)
                for cand in candidates:
                    if len(rel) - 1 < 1:
                        break
                    if any(cand == r for r in roots):
                        continue
                    if _lpoly_eval(rel, cand).is_zero():
                        rel = _lpoly_divmod_monic(rel, [-cand, L.one()])[0]
                        roots.append(cand)
                        progress = True
            if len(rel) - 1 == 0:
                break
            if len(rel) - 1 == 1:
                roots.append(-rel[0])
                rel = [L.one()]
                break
            L, roots, rel, gen_combo, _ = _round_adjoin(L, roots, rel, gen_combo)

        assert len(roots) == field.degree
        check = _lpoly_from_rational(L, f)
        prod = [L.one()]
        for r in roots:
            prod = _lpoly_mul(prod, [-r, L.one()])
        assert all((a - b).is_zero() for a, b in zip(prod, check)), "closure does not split f"

        # canonical root order: roots[i] corresponds to K's canonical embedding i
        order = _match_to_canonical(L, roots, field)
        roots = [roots[order.index(i)] for i in range(len(roots))]
        gen_combo = [(order[i], w) for i, w in gen_combo]

        self.field = field
        self.closure = L
        self.roots = roots
        self.embeddings = [FieldMorphism(field, L, r, check=False) for r in roots]
        self._build_group(gen_combo)

    def _build_group(self, gen_combo):
        L = self.closure
        roots = self.roots
        h = L.min_poly
        m = len(gen_combo)
        n = len(roots)
        images = []
        seen = set()

        def rec(chosen, used):
            if len(chosen) == m:
                v = L.zero()
                for (idx, w), u in zip(gen_combo, chosen):
                    v = v + roots[u] * w
                if v.coords not in seen and h(v).is_zero():
                    seen.add(v.coords)
                    images.append(v)
                return
            for u in range(n):
                if u not in used:
                    rec(chosen + [u], used | {u})

        rec([], frozenset())
        assert len(images) == L.degree, f"found {len(images)} automorphisms, expected {L.degree}"

        gen = L.gen()
        identity = next(v for v in images if v == gen)
        images.remove(identity)

        def perm_of(v):
            sigma = FieldMorphism(L, L, v, check=False)
            out = []
            for r in roots:
                img = sigma(r)
                j = next(i for i, rr in enumerate(roots) if rr == img)
                out.append(j)
            return tuple(out), sigma

        tagged = []
        for v in images:
            p, sigma = perm_of(v)
            tagged.append((p, v, sigma))
        tagged.sort(key=lambda t: t[0])
        idp, idsigma = perm_of(identity)
        self.autos = [idsigma] + [t[2] for t in tagged]
        self.perm = [idp] + [t[0] for t in tagged]
        self.auto_images = [identity] + [t[1] for t in tagged]

        idx_of = {self.auto_images[s].coords: s for s in range(len(self.autos))}
        size = len(self.autos)
        self.mult = [[None] * size for _ in range(size)]
        for s in range(size):
            for t in range(size):
                img = self.autos[s](self.auto_images[t])
                self.mult[s][t] = idx_of[img.coords]
        self.inv = [next(t for t in range(size) if self.mult[s][t] == 0) for s in range(size)]
        self.identity = 0
        # the closure is Galois: its automorphisms are exactly these, so seed
        # its cache rather than re-running closure construction on L itself
        if not hasattr(self.closure, "_automorphisms"):
            self.closure._automorphisms = list(self.autos)

    def stabilizer_of_point(self, root_index):
        """Indices of automorphisms fixing the given root (i.e. Gal(L/that copy of K))."""
        return [s for s, p in enumerate(self.perm) if p[root_index] == root_index]

    def fixing_subgroup_of(self, elem):
        """Indices of automorphisms fixing an element of L."""
        return [s for s in range(len(self.autos)) if self.autos[s](elem) == elem]


def _match_to_canonical(L, roots, K):
    """order[i] = canonical complex-embedding index of K realized by roots[i].

    Uses the canonical embedding #0 of L and refines until every tracked root
    ball lands in exactly one certified root disk of K.
    """
    bits = 64
    while True:
        psi0 = L.embeddings(bits)[0]
        k_disks = [e.ball for e in K.embeddings(bits)]
        order = []
        ok = True
        for r in roots:
            ball = psi0.eval(r)
            hits = [i for i, d in enumerate(k_disks) if not ball.is_disjoint(d)]
            if len(hits) != 1:
                ok = False
                break
            order.append(hits[0])
        if ok and len(set(order)) == len(roots):
            return order
        bits *= 2
        if bits > 1 << 20:
            raise RuntimeError("root matching budget exceeded")


def splitting_data(field):
    """Cached Galois closure with tracked roots and automorphism group."""
    if not hasattr(field, "_splitting_data"):
        field._splitting_data = SplittingData(field)
    return field._splitting_data


def nf_automorphisms(K):
    """All automorphisms of K, as FieldMorphisms K -> K (identity included).

    Computed from the closure: embeddings whose image lies in the reference
    copy of K descend to automorphisms.
    """
    if hasattr(K, "_automorphisms"):
        return K._automorphisms
    sd = splitting_data(K)
    j0 = sd.embeddings[0]
    out = []
    for j in sd.embeddings:
        pre = j0.preimage(j.image_of_generator)
        if pre is not None:
            out.append(FieldMorphism(K, K, pre, check=False))
    assert out, "identity automorphism missing"
    K._automorphisms = out
    return out


def galois_closure(K):
    """(L, embeddings K->L, permutation group on the embeddings) per the closure."""
    sd = splitting_data(K)
    return sd.closure, sd.embeddings, sd.perm


def complex_conjugation(K):
    """The automorphism commuting with every complex conjugation, or None.

    Returns the identity for totally real fields, the canonical involution for
    CM fields, and None when no automorphism satisfies phi.sigma = conj(phi)
    for every certified embedding phi.
    """
    if hasattr(K, "_conj_auto"):
        return K._conj_auto
    from .embeddings import certified_embeddings, locate_among

    embs = certified_embeddings(K)
    found = None
    for sigma in nf_automorphisms(K):
        if all(
            locate_among(e, sigma.image_of_generator, K) == e.conj_index() for e in embs
        ):
            found = sigma
            break
    K._conj_auto = found
    return found
