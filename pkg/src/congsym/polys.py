"""Univariate polynomials over the rationals, factorization, number fields.

Polynomials are coefficient lists, lowest degree first, trailing coefficient
nonzero ([] is the zero polynomial).  Number field elements are coordinate
vectors modulo a monic irreducible polynomial; cyclotomic fields are the
special case of an n-th cyclotomic modulus.
"""

from .backend import rat, as_fraction

import sympy


class UniPoly:
    """Polynomial over the rationals, coefficients lowest-degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if not isinstance(c, int) else rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    @staticmethod
    def x_power(n, c=1):
        return UniPoly([0] * n + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = UniPoly([other])
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(as_fraction(c) for c in self.coeffs))

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else rat(0)

    def __add__(self, other):
        if isinstance(other, int):
            other = UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        if isinstance(other, int):
            other = UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int) or not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [rat(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = UniPoly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        if len(rem) <= d:
            return UniPoly(), UniPoly(rem)
        quo = [rat(0)] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c / lead
            quo[i - d] = q
            for j in range(d + 1):
                rem[i - d + j] -= q * other.coeffs[j]
        return UniPoly(quo), UniPoly(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self):
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return UniPoly([c / lead for c in self.coeffs])

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Evaluate by Horner; x may be a rational or NumberFieldElem."""
        result = x * 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def shift_scale(self):
        return self

    def to_str(self, var="x"):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c == 0:
                continue
            if i == 0:
                term = str(c)
            else:
                xs = var if i == 1 else "%s^%d" % (var, i)
                if c == 1:
                    term = xs
                elif c == -1:
                    term = "-" + xs
                else:
                    term = "%s*%s" % (c, xs)
            if parts and not term.startswith("-"):
                parts.append("+" + term)
            else:
                parts.append(term)
        return "".join(parts)

    def __repr__(self):
        return "UniPoly(%s)" % self.to_str()


def _to_sympy(f, x):
    return sympy.Poly([sympy.Rational(as_fraction(c)) for c in reversed(f.coeffs)], x)


def _from_sympy(p):
    cs = [rat(c.p, c.q) for c in reversed(p.all_coeffs())]
    return UniPoly(cs)


def factor_rational_poly(f):
    """Factor a nonzero rational polynomial into monic irreducibles.

    Returns a list of (UniPoly, multiplicity); the product of the factors to
    their multiplicities equals f up to a rational scalar.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree == 0:
        return []
    x = sympy.Symbol("x")
    _, factors = _to_sympy(f, x).factor_list()
    out = [(_from_sympy(p).monic(), m) for p, m in factors]
    out.sort(key=lambda fm: (fm[0].degree, [as_fraction(c) for c in fm[0].coeffs]))
    return out


def is_irreducible_poly(f):
    if f.degree < 1:
        return False
    facs = factor_rational_poly(f)
    return len(facs) == 1 and facs[0][1] == 1


def cyclotomic_poly(n):
    x = sympy.Symbol("x")
    return _from_sympy(sympy.Poly(sympy.cyclotomic_poly(n, x), x))


class NumberField:
    """Q[x]/(modulus) for a monic irreducible modulus over Q."""

    def __init__(self, modulus, var="a"):
        if not modulus.coeffs or modulus.coeffs[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = modulus
        self.degree = modulus.degree
        self.var = var

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("NumberField", self.modulus))

    def elem(self, coeffs):
        if isinstance(coeffs, (int, type(rat(0)))):
            coeffs = [coeffs]
        cs = [c if not isinstance(c, int) else rat(c) for c in coeffs]
        if len(cs) > self.degree:
            cs = (UniPoly(cs) % self.modulus).coeffs
        cs = list(cs) + [rat(0)] * (self.degree - len(cs))
        return NumberFieldElem(self, cs)

    def zero(self):
        return self.elem([])

    def one(self):
        return self.elem([1])

    def gen(self):
        return self.elem([0, 1])

    def __repr__(self):
        return "NumberField(%s)" % self.modulus.to_str()


class NumberFieldElem:
    """Element of a NumberField as a coordinate vector of length deg."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, NumberFieldElem):
            if other.field != self.field:
                raise ValueError("number field mismatch")
            return other
        return self.field.elem([other])

    def __eq__(self, other):
        if isinstance(other, NumberFieldElem) and other.field != self.field:
            return False
        return self.coeffs == self._coerce(other).coeffs

    def __hash__(self):
        return hash(tuple(as_fraction(c) for c in self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        o = self._coerce(other)
        return NumberFieldElem(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NumberFieldElem(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return NumberFieldElem(self.field, [-a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, NumberFieldElem):
            return NumberFieldElem(self.field, [a * other for a in self.coeffs])
        o = self._coerce(other)
        prod = UniPoly(self.coeffs) * UniPoly(o.coeffs)
        return self.field.elem((prod % self.field.modulus).coeffs)

    __rmul__ = __mul__

    def inverse(self):
        # extended Euclid in Q[x] against the modulus
        a = UniPoly(self.coeffs)
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero number field element")
        b = self.field.modulus
        r0, r1 = a, b
        s0, s1 = UniPoly([1]), UniPoly()
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        # r0 = s0*a mod modulus, deg r0 = 0 since modulus irreducible
        c = r0.coeffs[0]
        return self.field.elem([ci / c for ci in s0.coeffs])

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e):
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def to_str(self):
        return UniPoly(self.coeffs).to_str(self.field.var)

    def __repr__(self):
        return "NFElem(%s)" % self.to_str()


def min_poly_of_nf_elem(e):
    """Minimal polynomial over Q of a number field element (by linear algebra)."""
    from .linalg import kernel_of_rows
    d = e.field.degree
    powers = []
    cur = e.field.one()
    for _ in range(d + 1):
        powers.append(list(cur.coeffs))
        cur = cur * e
    # find the first linear dependence among 1, e, e^2, ...
    for m in range(1, d + 2):
        rows = [powers[i] for i in range(m)]
        ker = kernel_of_rows(rows)
        if ker:
            v = ker[0]
            return UniPoly(v).monic()
    raise AssertionError("no minimal polynomial found")
