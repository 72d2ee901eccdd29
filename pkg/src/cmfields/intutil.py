"""Small integer number theory helpers shared across the package."""

import math
from fractions import Fraction

QQ = Fraction


def isqrt_exact(n):
    """Return the integer square root of n if n is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def iroot(n, k):
    """Floor of the k-th root of n >= 0."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    hi = 1 << ((n.bit_length() + k - 1) // k + 1)
    lo = 0
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid
    return lo


def iroot_exact(n, k):
    """Return the exact k-th root of n if n is a perfect k-th power, else None."""
    r = iroot(n, k)
    return r if r**k == n else None


def is_prime(n):
    """Deterministic Miller-Rabin, valid for all n < 3.3 * 10^24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(bound):
    """All primes p <= bound, by sieve."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


def next_prime(n):
    n += 1
    while not is_prime(n):
        n += 1
    return n


def _pollard_rho(n, seed=1):
    if n % 2 == 0:
        return 2
    x = y = 2
    c = seed
    d = 1
    while d == 1:
        x = (x * x + c) % n
        y = (y * y + c) % n
        y = (y * y + c) % n
        d = math.gcd(abs(x - y), n)
    return d if d != n else None


def factorize(n):
    """Prime factorization of |n| as a sorted dict {p: e}. factorize(0) is an error."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt_exact(m)
        if r is not None:
            stack.extend([r, r])
            continue
        d = None
        seed = 1
        while d is None:
            d = _pollard_rho(m, seed)
            seed += 1
        stack.extend([d, m // d])
    return dict(sorted(out.items()))


def crt_pair(r1, m1, r2, m2):
    """Solve x = r1 mod m1, x = r2 mod m2 for coprime m1, m2."""
    g, u, _ = xgcd(m1, m2)
    if g != 1:
        raise ValueError("moduli not coprime")
    return (r1 + (r2 - r1) * u % m2 * m1) % (m1 * m2)


def xgcd(a, b):
    """Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def sqrt_mod(a, p):
    """A square root of a modulo an odd prime p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t * t % p, 1
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def frac_floor_sqrt(x):
    """Largest integer-free lower bound helper: floor(sqrt(x)) for x = Fraction >= 0."""
    if x < 0:
        raise ValueError("negative radicand")
    num, den = x.numerator, x.denominator
    return Fraction(math.isqrt(num * den), den)


def frac_ceil_sqrt(x):
    """A Fraction upper bound on sqrt(x), tight to within 1/denominator scale."""
    if x < 0:
        raise ValueError("negative radicand")
    num, den = x.numerator, x.denominator
    r = math.isqrt(num * den)
    if r * r < num * den:
        r += 1
    return Fraction(r, den)
