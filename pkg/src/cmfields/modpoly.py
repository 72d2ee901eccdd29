"""Polynomial arithmetic and factorization over F_p.

Polynomials are lists of ints in [0, p), lowest degree first, normalized so
the last entry is nonzero ([] is the zero polynomial). Factorization is
squarefree + distinct-degree + Cantor-Zassenhaus equal-degree splitting with
a deterministic seeded element sweep, so results are reproducible.
"""

import random


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return trim([c % p for c in out])


def scal(a, s, p):
    s %= p
    return trim([c * s % p for c in a])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError
    a = list(a)
    db, lcb = len(b) - 1, b[-1]
    inv = pow(lcb, -1, p)
    if len(a) - 1 < db:
        return [], a
    q = [0] * (len(a) - db)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + db] % p
        if c:
            f = c * inv % p
            q[k] = f
            for i, bc in enumerate(b):
                a[k + i] = (a[k + i] - f * bc) % p
    return trim(q), trim(a[:db])


def mod(a, b, p):
    return divmod_(a, b, p)[1]


def gcd(a, b, p):
    while b:
        a, b = b, mod(a, b, p)
    if a:
        a = scal(a, pow(a[-1], -1, p), p)
    return a


def monic(a, p):
    return scal(a, pow(a[-1], -1, p), p) if a else a


def powmod(a, e, f, p):
    out = [1]
    a = mod(a, f, p)
    while e:
        if e & 1:
            out = mod(mul(out, a, p), f, p)
        a = mod(mul(a, a, p), f, p)
        e >>= 1
    return out


def derivative(a, p):
    return trim([i * c % p for i, c in enumerate(a)][1:])


def squarefree_decomposition(f, p):
    """Yield (g, multiplicity) with g monic squarefree, product g^m = f/lc."""
    f = monic(f, p)
    out = []
    e = 1
    while len(f) > 1:
        d = derivative(f, p)
        if not d:
            # f is a p-th power: f(x) = h(x^p)
            h = f[::p]
            for g, m in squarefree_decomposition(list(h), p):
                out.append((g, m * p))
            return out
        c = gcd(f, d, p)
        w = divmod_(f, c, p)[0]
        i = 1
        while len(w) > 1:
            y = gcd(w, c, p)
            z = divmod_(w, y, p)[0]
            if len(z) > 1:
                out.append((z, e * i))
            w = y
            c = divmod_(c, y, p)[0]
            i += 1
        f = c
        e *= p
    return out


def distinct_degree(f, p):
    """Split squarefree monic f into [(product of irreducibles of degree d, d)]."""
    out = []
    x = [0, 1]
    h = x
    g = list(f)
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, g, p)
        gd = gcd(sub(h, x, p), g, p)
        if len(gd) > 1:
            out.append((gd, d))
            g = divmod_(g, gd, p)[0]
            h = mod(h, g, p)
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def _equal_degree_split(f, d, p, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = trim(a)
        if len(a) <= 1:
            continue
        g = gcd(a, f, p)
        if len(g) > 1:
            pieces = [g, divmod_(f, g, p)[0]]
        else:
            if p == 2:
                t = a
                for _ in range(d - 1):
                    t = add(mod(mul(t, t, p), f, p), a, p)
                g = gcd(t, f, p)
            else:
                e = (p**d - 1) // 2
                b = powmod(a, e, f, p)
                g = gcd(sub(b, [1], p), f, p)
            if 1 < len(g) < len(f):
                pieces = [g, divmod_(f, g, p)[0]]
            else:
                continue
        out = []
        for piece in pieces:
            out.extend(_equal_degree_split(monic(piece, p), d, p, rng))
        return out


def factor(f, p, seed=0x5EED):
    """Full factorization over F_p: returns sorted list of (monic irreducible, mult)."""
    rng = random.Random(seed)
    out = []
    for g, m in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for irr in _equal_degree_split(h, d, p, rng):
                out.append((tuple(irr), m))
    return sorted(out)


def is_irreducible(f, p):
    f = monic(f, p)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    sq = squarefree_decomposition(f, p)
    if len(sq) != 1 or sq[0][1] != 1:
        return False
    dd = distinct_degree(monic(f, p), p)
    return len(dd) == 1 and dd[0][1] == n


def from_rational(poly, p):
    """Reduce a UniPoly with p-integral coefficients mod p."""
    out = []
    for c in poly.coeffs:
        den = c.denominator % p
        if den == 0:
            raise ValueError(f"coefficient denominator divisible by {p}")
        out.append(c.numerator % p * pow(den, -1, p) % p)
    return trim(out)
