"""Number fields Q[x]/(f), exact element arithmetic, and field morphisms."""

from fractions import Fraction

from .linalg import det_fraction, solve_general
from .unipoly import UniPoly, poly_discriminant, poly_xgcd


class NumberField:
    """A number field presented as Q[x]/(min_poly), min_poly monic irreducible.

    Elements are coordinate vectors in the power basis 1, x, ..., x^(n-1).
    """

    def __init__(self, min_poly, check=True):
        if not isinstance(min_poly, UniPoly):
            min_poly = UniPoly(min_poly)
        if min_poly.degree < 1:
            raise ValueError("min_poly must be nonconstant")
        if min_poly.lc() != 1:
            raise ValueError("min_poly must be monic")
        if check:
            from .ratfactor import is_irreducible_over_q

            if not is_irreducible_over_q(min_poly):
                raise ValueError("min_poly is reducible over Q")
        self.min_poly = min_poly
        self.degree = min_poly.degree
        self.disc = poly_discriminant(min_poly)
        n = self.degree
        # reduction table: x^(n+k) mod min_poly for k = 0..n-2
        self._red = []
        cur = [-c for c in min_poly.coeffs[:-1]]
        self._red.append(tuple(cur))
        for _ in range(n - 2):
            shifted = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            cur = [s + top * r for s, r in zip(shifted, self._red[0])]
            self._red.append(tuple(cur))
        self._embedding_cache = {}

    def __repr__(self):
        return f"NumberField({self.min_poly!r})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    def element(self, coords):
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            raise ValueError("too many coordinates")
        coords += [Fraction(0)] * (self.degree - len(coords))
        return NFElement(self, tuple(coords))

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    def gen(self):
        if self.degree == 1:
            return self.element([-self.min_poly.coeffs[0]])
        return self.element([0, 1])

    def from_poly(self, poly):
        """Image of a UniPoly under Q[x] -> Q[x]/(min_poly)."""
        rem = poly % self.min_poly
        return self.element(list(rem.coeffs))

    def embeddings(self, bits=64):
        from .embeddings import certified_embeddings

        return certified_embeddings(self, bits)


class NFElement:
    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    def __repr__(self):
        return f"NFElement({list(self.coords)})"

    def poly(self):
        return UniPoly(self.coords)

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _coerce(self.field, other)
        return (
            isinstance(other, NFElement)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.field.min_poly, self.coords))

    def __add__(self, other):
        other = _coerce(self.field, other)
        return NFElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = _coerce(self.field, other)
        return NFElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElement(self.field, tuple(a * other for a in self.coords))
        if not isinstance(other, NFElement) or other.field != self.field:
            return NotImplemented
        n = self.field.degree
        a, b = self.coords, other.coords
        conv = [Fraction(0)] * (2 * n - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        conv[i + j] += ca * cb
        out = list(conv[:n])
        red = self.field._red
        for k in range(n - 1):
            c = conv[n + k]
            if c:
                row = red[k]
                for i in range(n):
                    if row[i]:
                        out[i] += c * row[i]
        return NFElement(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        g, s, _ = poly_xgcd(self.poly(), self.field.min_poly)
        assert g.degree == 0
        inv = s * (1 / g.coeffs[0])
        return self.field.from_poly(inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(self.field, other) / self

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mult_matrix(self):
        """Matrix of multiplication by self on the power basis (columns = images)."""
        n = self.field.degree
        cols = []
        cur = self
        gen = self.field.gen()
        for _ in range(n):
            cols.append(cur.coords)
            cur = cur * gen
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def trace(self):
        m = self.mult_matrix()
        return sum(m[i][i] for i in range(self.field.degree))

    def norm(self):
        return det_fraction(self.mult_matrix())

    def min_poly_over_q(self):
        """Monic minimal polynomial of this element over Q."""
        n = self.field.degree
        rows = []
        cur = self.field.one()
        powers = [cur]
        for _ in range(n):
            cur = cur * self
            powers.append(cur)
        # find the first linear dependency among 1, a, a^2, ...
        for d in range(1, n + 1):
            A = [[powers[j].coords[i] for j in range(d)] for i in range(n)]
            sol = solve_general(A, list(powers[d].coords))
            if sol is not None:
                return UniPoly([-c for c in sol] + [1])
        raise AssertionError("no dependency found below field degree")


def _coerce(field, value):
    if isinstance(value, NFElement):
        if value.field != field:
            raise ValueError("element of a different field")
        return value
    if isinstance(value, (int, Fraction)):
        return field.element([value])
    raise TypeError(f"cannot coerce {type(value)} into {field!r}")


class FieldMorphism:
    """A Q-algebra homomorphism between number fields, given by the generator image."""

    __slots__ = ("source", "target", "image_of_generator", "_powers")

    def __init__(self, source, target, image_of_generator, check=True):
        self.source = source
        self.target = target
        self.image_of_generator = image_of_generator
        if check:
            if not source.min_poly(image_of_generator).is_zero():
                raise ValueError("generator image is not a root of the source min_poly")
        powers = [target.one()]
        for _ in range(source.degree - 1):
            powers.append(powers[-1] * image_of_generator)
        self._powers = powers

    def __repr__(self):
        return f"FieldMorphism({self.image_of_generator!r})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.image_of_generator == other.image_of_generator
        )

    def __hash__(self):
        return hash((self.source.min_poly, self.target.min_poly, self.image_of_generator.coords))

    def __call__(self, elem):
        if elem.field != self.source:
            raise ValueError("element not in the source field")
        out = self.target.zero()
        for c, pw in zip(elem.coords, self._powers):
            if c:
                out = out + pw * c
        return out

    def compose(self, other):
        """self after other: (self . other)(x) = self(other(x))."""
        if other.target != self.source:
            raise ValueError("morphisms not composable")
        return FieldMorphism(other.source, self.target, self(other.image_of_generator), check=False)

    def is_identity(self):
        return self.source == self.target and self.image_of_generator == self.source.gen()

    def preimage(self, elem):
        """The unique preimage of elem under this morphism, or None."""
        if elem.field != self.target:
            raise ValueError("element not in the target field")
        A = [[self._powers[j].coords[i] for j in range(self.source.degree)]
             for i in range(self.target.degree)]
        sol = solve_general(A, list(elem.coords))
        if sol is None:
            return None
        return self.source.element(sol)

    def inverse_automorphism(self):
        """Inverse of an automorphism (source == target, bijective)."""
        if self.source != self.target:
            raise ValueError("not an automorphism")
        pre = self.preimage(self.source.gen())
        if pre is None:
            raise ValueError("morphism is not surjective")
        return FieldMorphism(self.source, self.source, pre, check=False)
