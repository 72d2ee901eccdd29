"""Exact fractional-ideal arithmetic in maximal orders.

A FracIdeal is (1/den) times the lattice spanned by the columns of an integer
matrix in column Hermite normal form, coordinates taken in the order basis.
The HNF with minimal denominator is a canonical representative, so equality
is matrix equality. Products, sums, colon ideals (via lattice duality),
Dedekind splitting, valuations, and the coprime-scaling lemma live here.
"""

import math
from fractions import Fraction

from . import modpoly
from .errors import IndexDivisible, OrderMismatch, ZeroIdeal
from .intutil import factorize
from .linalg import (
    hnf_columns,
    hnf_with_transform,
    mat_inverse_fraction,
    mat_mul,
    transpose,
)


class FracIdeal:
    """A nonzero fractional ideal of a maximal order."""

    __slots__ = ("order", "den", "hnf", "_norm")

    def __init__(self, order, den, hnf, normalize=True):
        self.order = order
        self.den = den
        self.hnf = hnf
        self._norm = None
        if normalize:
            self._normalize()

    def _normalize(self):
        g = self.den
        for row in self.hnf:
            for x in row:
                g = math.gcd(g, abs(x))
                if g == 1:
                    break
            if g == 1:
                break
        if g > 1:
            self.hnf = [[x // g for x in row] for row in self.hnf]
            self.den //= g

    @staticmethod
    def from_generators(order, elems):
        """The fractional O-ideal generated by the given field elements."""
        elems = [e for e in elems if not e.is_zero()]
        if not elems:
            raise ZeroIdeal("no nonzero generators")
        n = order.degree
        cols = []
        for e in elems:
            coords = order.coords_of(e)
            for j in range(n):
                unit = [0] * n
                unit[j] = 1
                cols.append(_mult_rational(order, coords, unit))
        den = 1
        for col in cols:
            for x in col:
                den = den * x.denominator // math.gcd(den, x.denominator)
        mat = [[int(cols[j][i] * den) for j in range(len(cols))] for i in range(n)]
        h = hnf_columns(mat)
        if len(h[0]) != n:
            raise ZeroIdeal("generators do not span a full lattice")
        return FracIdeal(order, den, h)

    @staticmethod
    def principal(order, elem):
        return FracIdeal.from_generators(order, [elem])

    @staticmethod
    def unit_ideal(order):
        if not hasattr(order, "_unit_ideal"):
            one = FracIdeal.from_generators(order, [order.field.one()])
            order._unit_ideal = one
        return order._unit_ideal

    def __repr__(self):
        return f"FracIdeal(den={self.den}, hnf={self.hnf})"

    def __eq__(self, other):
        return (
            isinstance(other, FracIdeal)
            and self.order == other.order
            and self.den == other.den
            and self.hnf == other.hnf
        )

    def __hash__(self):
        return hash((self.den, tuple(tuple(r) for r in self.hnf)))

    def is_integral(self):
        return self.den == 1

    def norm(self):
        """Numerical norm: (O : a) for integral a, extended multiplicatively."""
        if self._norm is None:
            n = self.order.degree
            det = 1
            for i in range(n):
                det *= self.hnf[i][i]
            self._norm = Fraction(abs(det), self.den**n)
        return self._norm

    def basis_columns(self):
        """Integer coordinate columns (the lattice is these over den)."""
        n = self.order.degree
        return [[self.hnf[i][j] for i in range(n)] for j in range(n)]

    def basis_elements(self):
        return [
            self.order.element_from_coords([Fraction(c, self.den) for c in col])
            for col in self.basis_columns()
        ]

    def contains(self, elem):
        """Exact membership test for a field element."""
        coords = [Fraction(c) * self.den for c in self.order.coords_of(elem)]
        n = self.order.degree
        # back-substitute against the upper-triangular columns
        for i in range(n - 1, -1, -1):
            q = coords[i] / self.hnf[i][i]
            if q.denominator != 1:
                return False
            for k in range(i + 1):
                coords[k] -= q * self.hnf[k][i]
        return True

    def contains_ideal(self, other):
        return (self + other) == self

    def __add__(self, other):
        self._check(other)
        da, db = self.den, other.den
        l = db // math.gcd(da, db)
        common = da * l
        fa, fb = common // da, common // db
        n = self.order.degree
        mat = [
            [self.hnf[i][j] * fa for j in range(n)] + [other.hnf[i][j] * fb for j in range(n)]
            for i in range(n)
        ]
        return FracIdeal(self.order, common, hnf_columns(mat))

    def __mul__(self, other):
        self._check(other)
        n = self.order.degree
        ca = self.basis_columns()
        cb = other.basis_columns()
        cols = [self.order.mult_coords(a, b) for a in ca for b in cb]
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
        return FracIdeal(self.order, self.den * other.den, hnf_columns(mat))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = FracIdeal.unit_ideal(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        return colon_ideal(FracIdeal.unit_ideal(self.order), self)

    def scaled(self, q):
        """The ideal q * a for a nonzero rational q."""
        q = Fraction(q)
        if q == 0:
            raise ZeroIdeal("scaling by zero")
        num, den = abs(q.numerator), q.denominator
        hnf = [[x * num for x in row] for row in self.hnf]
        return FracIdeal(self.order, self.den * den, hnf)

    def mult_by_element(self, elem):
        """The ideal elem * a."""
        return self * FracIdeal.principal(self.order, elem)

    def valuation(self, prime):
        """Exact valuation of this fractional ideal at a prime ideal."""
        if prime.order != self.order:
            raise OrderMismatch("prime of a different order")
        v_den = prime.e * _ord_p(self.den, prime.p)
        num = self.scaled(self.den)
        pinv = prime.cached_inverse()
        v = 0
        while True:
            nxt = num * pinv
            if not nxt.is_integral():
                break
            num = nxt
            v += 1
        return v - v_den

    def _check(self, other):
        if not isinstance(other, FracIdeal) or other.order != self.order:
            raise OrderMismatch("ideals of different orders")

    def image_under(self, morphism, target_order):
        """The ideal of the target order generated by the images of a generating set."""
        gens = self.two_element_like_generators()
        return FracIdeal.from_generators(target_order, [morphism(g) for g in gens])

    def two_element_like_generators(self):
        """A small generating set (all basis elements; primes override with two)."""
        return self.basis_elements()


def _mult_rational(order, a, b):
    """Product of rational order-coordinate vectors, in order coordinates."""
    n = order.degree
    out = [Fraction(0)] * n
    for i in range(n):
        ai = Fraction(a[i])
        if not ai:
            continue
        for j in range(n):
            bj = Fraction(b[j])
            if not bj:
                continue
            row = order._mult[(i, j) if i <= j else (j, i)]
            f = ai * bj
            for k in range(n):
                if row[k]:
                    out[k] += f * row[k]
    return out


def _ord_p(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def ideal_product(a, b):
    """Product of two fractional ideals of the same maximal order."""
    return a * b


def ideal_inverse(a):
    """Inverse fractional ideal: a * ideal_inverse(a) = (1)."""
    return a.inverse()


def numerical_norm(a):
    """(O : a) for integral a, extended multiplicatively to fractional ideals."""
    return a.norm()


def colon_ideal(b, a):
    """The colon ideal (b : a) = {x in E : x*a <= b}, via lattice duality."""
    if a.order != b.order:
        raise OrderMismatch("ideals of different orders")
    order = a.order
    n = order.degree
    b_cols = [[Fraction(b.hnf[i][j], b.den) for j in range(n)] for i in range(n)]
    b_inv_t = transpose(mat_inverse_fraction(b_cols))
    duals = []
    for col in a.basis_columns():
        Mv = order.mult_matrix_coords([Fraction(c, a.den) for c in col])
        duals.append(mat_mul(transpose(Mv), b_inv_t))
    # sum of the dual lattices, then dual back
    cols = []
    for D in duals:
        for j in range(n):
            cols.append([D[i][j] for i in range(n)])
    den = 1
    for col in cols:
        for x in col:
            den = den * x.denominator // math.gcd(den, x.denominator)
    mat = [[int(cols[j][i] * den) for j in range(len(cols))] for i in range(n)]
    h = hnf_columns(mat)
    hs = [[Fraction(h[i][j], den) for j in range(n)] for i in range(n)]
    res_cols = transpose(mat_inverse_fraction(hs))
    rden = 1
    for row in res_cols:
        for x in row:
            rden = rden * x.denominator // math.gcd(rden, x.denominator)
    mat2 = [[int(res_cols[i][j] * rden) for j in range(n)] for i in range(n)]
    return FracIdeal(order, rden, hnf_columns(mat2))


class PrimeIdeal(FracIdeal):
    """A prime ideal with its splitting data and a two-element representation."""

    __slots__ = ("p", "e", "f", "second_gen", "_inv", "_pullbacks")

    def __init__(self, order, den, hnf, p, e, f, second_gen):
        super().__init__(order, den, hnf)
        self.p = p
        self.e = e
        self.f = f
        self.second_gen = second_gen
        self._inv = None
        self._pullbacks = None

    def __repr__(self):
        return f"PrimeIdeal(p={self.p}, e={self.e}, f={self.f})"

    def cached_inverse(self):
        if self._inv is None:
            self._inv = self.inverse()
        return self._inv

    def two_element_like_generators(self):
        return [self.order.field.one() * self.p, self.second_gen]


def prime_split(p, order):
    """Primes of the maximal order above p, by the Dedekind criterion.

    Refuses p dividing the index of the equation order with IndexDivisible.
    Results are cached per order.
    """
    if order.index_in_maximal != 1:
        raise OrderMismatch("prime_split needs the maximal order")
    if not hasattr(order, "equation_index"):
        raise OrderMismatch("order lacks equation-order data; use maximal_order()")
    cache = getattr(order, "_prime_cache", None)
    if cache is None:
        cache = order._prime_cache = {}
    if p in cache:
        return cache[p]
    if order.equation_index % p == 0:
        raise IndexDivisible(f"{p} divides the equation-order index {order.equation_index}")
    g = order.equation_poly
    theta = order.equation_gen
    gp = modpoly.trim([int(c) % p for c in g.coeffs])
    factors = modpoly.factor(gp, p)
    out = []
    n = order.degree
    field = order.field
    for gi, e in factors:
        f_deg = len(gi) - 1
        gi_elem = field.zero()
        power = field.one()
        for c in gi:
            gi_elem = gi_elem + power * int(c)
            power = power * theta
        ideal = FracIdeal.from_generators(order, [field.one() * p, gi_elem])
        out.append(PrimeIdeal(order, ideal.den, ideal.hnf, p, e, f_deg, gi_elem))
    assert sum(P.e * P.f for P in out) == n, "Dedekind splitting incomplete"
    for P in out:
        assert P.norm() == Fraction(p) ** P.f
    if p < 100000:
        # full product verification is quadratic in log(p); spot-checked above that
        prod = FracIdeal.unit_ideal(order)
        for P in out:
            prod = prod * P**P.e
        assert prod == FracIdeal.principal(order, field.one() * p), "prime product mismatch"
    out.sort(key=lambda P: (P.f, P.hnf[0][0], tuple(tuple(r) for r in P.hnf)))
    cache[p] = out
    return out


def factor_ideal(a):
    """Factor a fractional ideal into primes: dict {PrimeIdeal: exponent}.

    Support primes are found from the numerator and denominator norms; raises
    IndexDivisible if a support prime divides the equation-order index.
    """
    order = a.order
    if isinstance(a, PrimeIdeal):
        # return the cached instance so valuation caches are shared
        for P in prime_split(a.p, order):
            if P == a:
                return {P: 1}
    num = a.scaled(a.den)
    support = set(factorize(int(num.norm())).keys()) if num.norm() != 1 else set()
    support |= set(factorize(a.den).keys())
    out = {}
    for p in sorted(support):
        for P in prime_split(p, order):
            v = a.valuation(P)
            if v:
                out[P] = v
    return out


def coprime_scale(a, m):
    """Scale a to an integral ideal of norm coprime to m (Lemma-style CRT fix).

    Returns (scalar, b) with b = scalar * a integral and gcd(N(b), m) = 1.
    """
    if m < 1:
        raise ValueError("m must be positive")
    order = a.order
    field = order.field
    # c in a: the last basis element (any nonzero element of a works)
    c = a.basis_elements()[-1]
    cofactor = FracIdeal.principal(order, c) * a.inverse()
    assert cofactor.is_integral()
    support = set() if cofactor.norm() == 1 else set(factorize(int(cofactor.norm())).keys())
    if m > 1:
        support |= set(factorize(m).keys())
    primes = []
    exponents = []
    for p in sorted(support):
        for P in prime_split(p, order):
            e_v = cofactor.valuation(P)
            primes.append(P)
            exponents.append(e_v)
    if not primes:
        scalar = field.one() / c
        return scalar, a.mult_by_element(scalar)
    # x_v with exact valuation e_v at P_v; then CRT mod P_v^(e_v+1)
    xs = []
    for P, e_v in zip(primes, exponents):
        Pe = P**e_v
        Pe1 = Pe * P
        x = next(el for el in Pe.basis_elements() if not Pe1.contains(el))
        xs.append(x)
    moduli = [P ** (e_v + 1) for P, e_v in zip(primes, exponents)]
    a_star = field.zero()
    for i, x in enumerate(xs):
        others = FracIdeal.unit_ideal(order)
        for j, M in enumerate(moduli):
            if j != i:
                others = others * M
        t = _split_one(moduli[i], others)
        a_star = a_star + x * t
    scalar = a_star / c
    b = a.mult_by_element(scalar)
    assert b.is_integral()
    if m > 1:
        assert math.gcd(int(b.norm()), m) == 1, "coprime scaling failed"
    return scalar, b


def _split_one(I, J):
    """For coprime integral ideals I + J = O, an element t in J with t = 1 mod I."""
    order = I.order
    n = order.degree
    mat = [
        [I.hnf[i][j] for j in range(n)] + [J.hnf[i][j] for j in range(n)]
        for i in range(n)
    ]
    H, U = hnf_with_transform(mat)
    # express 1 in terms of the HNF columns (triangular solve), then pull back
    target = [Fraction(c) for c in order.one_coords]
    r = len(H[0])
    assert r == n, "ideals do not span"
    y = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        q = target[i] / H[i][i]
        assert q.denominator == 1, "1 not in I + J: ideals not coprime"
        y[i] = q
        for k in range(i + 1):
            target[k] -= q * H[k][i]
    # columns of [I | J] * U: last r columns are H; combination vector:
    full = [Fraction(0)] * (2 * n)
    for j in range(n):
        col = 2 * n - n + j
        for k in range(2 * n):
            full[k] += y[j] * U[k][col]
    t_coords = [Fraction(0)] * n
    for j in range(n):
        w = full[n + j]
        if w:
            for i in range(n):
                t_coords[i] += w * Fraction(J.hnf[i][j])
    t = order.element_from_coords(t_coords)
    assert J.contains(t)
    one = order.field.one()
    assert I.contains(one - t)
    return t
