"""Univariate polynomials over Q, coefficients stored lowest degree first."""

import math
from fractions import Fraction


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UniPoly:
    """Immutable rational polynomial. The zero polynomial has no coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(Fraction(c) for c in coeffs)

    @staticmethod
    def x(n=1):
        return UniPoly([0] * n + [1])

    @staticmethod
    def const(c):
        return UniPoly([c])

    @property
    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "UniPoly(" + " + ".join(terms) + ")"

    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return UniPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        d, lcb = other.degree, other.lc()
        rem = list(self.coeffs)
        if len(rem) - 1 < d:
            return UniPoly(), self
        q = [Fraction(0)] * (len(rem) - d)
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + d]
            if c != 0:
                f = c / lcb
                q[k] = f
                for i, oc in enumerate(other.coeffs):
                    rem[k + i] -= f * oc
        return UniPoly(q), UniPoly(rem[:d])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k):
        out = UniPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        """Horner evaluation; x may be any element of a commutative Q-algebra."""
        if not self.coeffs:
            return x * 0
        acc = x * 0 + self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def monic(self):
        if self.is_zero():
            return self
        lc = self.lc()
        return UniPoly([c / lc for c in self.coeffs])

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def shift(self, c):
        """f(x + c)."""
        out = UniPoly()
        xc = UniPoly([c, 1])
        for coef in reversed(self.coeffs):
            out = out * xc + UniPoly([coef])
        return out

    def scale_arg(self, s):
        """f(s*x)."""
        return UniPoly([c * (Fraction(s) ** i) for i, c in enumerate(self.coeffs)])

    def compose(self, g):
        out = UniPoly()
        for coef in reversed(self.coeffs):
            out = out * g + UniPoly([coef])
        return out

    def is_even_poly(self):
        return all(c == 0 for c in self.coeffs[1::2])

    def denominator_lcm(self):
        d = 1
        for c in self.coeffs:
            d = d * c.denominator // math.gcd(d, c.denominator)
        return d

    def int_coeffs(self):
        """Integer coefficient list after clearing denominators (primitive not enforced)."""
        d = self.denominator_lcm()
        return [int(c * d) for c in self.coeffs], d


def poly_gcd(a, b):
    """Monic gcd over Q."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(a, b):
    """Extended gcd over Q: (g, s, t) with s*a + t*b = g, g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = UniPoly([1]), UniPoly()
    t0, t1 = UniPoly(), UniPoly([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.lc()
    inv = 1 / lc
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_part(f):
    """f / gcd(f, f'), monic."""
    if f.degree <= 1:
        return f.monic()
    g = poly_gcd(f, f.derivative())
    return (f // g).monic()


def sturm_real_root_count(f):
    """Number of distinct real roots of f, by a Sturm chain (exact)."""
    f = squarefree_part(f)
    if f.degree <= 0:
        return 0
    chain = [f, f.derivative()]
    while not chain[-1].is_zero():
        chain.append(-(chain[-2] % chain[-1]))
    chain.pop()

    def variations(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)

    # signs at -inf and +inf from leading terms
    neg = [p.lc() * (-1) ** p.degree for p in chain]
    pos = [p.lc() for p in chain]
    return variations([1 if s > 0 else -1 if s < 0 else 0 for s in neg]) - variations(
        [1 if s > 0 else -1 if s < 0 else 0 for s in pos]
    )


def sylvester_resultant(f, g):
    """Resultant of f and g over Q via the Sylvester matrix."""
    from .linalg import det_fraction

    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - n - 1 - i))
    return det_fraction(rows)


def poly_discriminant(f):
    """disc(f) = (-1)^(m(m-1)/2) Res(f, f') / lc(f)."""
    m = f.degree
    if m < 1:
        raise ValueError("discriminant needs degree >= 1")
    res = sylvester_resultant(f, f.derivative())
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return sign * res / f.lc()
