"""Dense univariate polynomials in q with arbitrary-precision integer coefficients.

A polynomial is stored as a tuple of coefficients in ascending order of
powers, so (1, 0, 2) is 1 + 2q^2.  Canonical form has no trailing zeros;
the zero polynomial is the empty tuple and its degree is the marker -1.
All arithmetic is exact: coefficients are plain Python ints and nothing
here ever rounds, normalizes a gcd, or cancels a rational form.

Multiplication dispatches between sparse schoolbook and Kronecker
substitution (packing coefficients into one big integer so CPython's
Karatsuba does the work).  Both paths produce bit-identical results; the
test suite checks that on random inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DivisionInexact, DomainError, NonMonicModulus, UnsupportedDivisor

# Below this many nonzero terms on one side, schoolbook beats packing.
_SPARSE_CUTOFF = 16


def _trim(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """An exact integer polynomial in q.

    >>> p = Poly(1, 1) * Poly(1, -1)
    >>> str(p)
    '1 - q^2'
    """

    __slots__ = ("coeffs",)

    def __init__(self, *coeffs):
        if len(coeffs) == 1 and isinstance(coeffs[0], (tuple, list)):
            coeffs = coeffs[0]
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def _raw(cls, coeffs):
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", _trim(coeffs))
        return p

    @classmethod
    def zero(cls):
        return cls._raw(())

    @classmethod
    def one(cls):
        return cls._raw((1,))

    @classmethod
    def q(cls):
        return cls._raw((0, 1))

    @classmethod
    def monomial(cls, k, c=1):
        """c * q^k."""
        if k < 0:
            raise DomainError("monomial exponent must be >= 0, got %d" % k)
        return cls._raw((0,) * k + (c,))

    @property
    def degree(self):
        """Degree of the polynomial; -1 marks the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = Poly(other)
        if not isinstance(other, Poly):
            return NotImplemented
        out = list(self.coeffs)
        b = other.coeffs
        if len(b) > len(out):
            out.extend([0] * (len(b) - len(out)))
        for i, c in enumerate(b):
            out[i] -= c
        return Poly._raw(out)

    def __rsub__(self, other):
        return Poly(other).__sub__(self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Poly.zero()
            return Poly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero()
        na = sum(1 for c in a if c)
        nb = sum(1 for c in b if c)
        if min(na, nb) <= _SPARSE_CUTOFF:
            return Poly._raw(_mul_sparse(a, b, na, nb))
        return Poly._raw(_mul_kronecker_signed(a, b))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise DomainError("negative power")
        result = Poly.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __call__(self, x):
        """Evaluate at an integer by Horner's rule."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- transforms ---------------------------------------------------

    def shift(self, k):
        """Multiply by q^k (k >= 0; 0 is the identity)."""
        if k < 0:
            raise DomainError("shift amount must be >= 0")
        if k == 0 or not self.coeffs:
            return self
        return Poly._raw((0,) * k + self.coeffs)

    def subs_power(self, k):
        """Substitute q -> q^k (k >= 1)."""
        if k < 1:
            raise DomainError("power substitution exponent must be >= 1")
        if k == 1 or not self.coeffs:
            return self
        out = [0] * ((len(self.coeffs) - 1) * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return Poly._raw(out)

    def negate_q(self):
        """Substitute q -> -q."""
        return Poly._raw(tuple(-c if i & 1 else c for i, c in enumerate(self.coeffs)))

    # -- rendering ----------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            elif i == 1:
                body = "q" if mag == 1 else "%d*q" % mag
            else:
                body = "q^%d" % i if mag == 1 else "%d*q^%d" % (mag, i)
            if not terms:
                terms.append(body if c > 0 else "-" + body)
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms)

    def __repr__(self):
        return "Poly(%s)" % (", ".join(str(c) for c in self.coeffs) or "")


def _mul_sparse(a, b, na, nb):
    if na > nb:
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            if c == 1:
                for j, d in enumerate(b):
                    if d:
                        out[i + j] += d
            else:
                for j, d in enumerate(b):
                    if d:
                        out[i + j] += c * d
    return out


def _pack(coeffs, width):
    buf = b"".join(c.to_bytes(width, "little") for c in coeffs)
    return int.from_bytes(buf, "little")


def _unpack(value, width, count):
    buf = value.to_bytes(width * count, "little")
    return [
        int.from_bytes(buf[i * width : (i + 1) * width], "little")
        for i in range(count)
    ]


def _mul_kronecker(a, b):
    """Product of two nonnegative coefficient tuples via big-int packing."""
    bound = min(len(a), len(b)) * max(a) * max(b)
    width = bound.bit_length() // 8 + 1
    count = len(a) + len(b) - 1
    return _unpack(_pack(a, width) * _pack(b, width), width, count)


def _split_signs(coeffs):
    pos = tuple(c if c > 0 else 0 for c in coeffs)
    neg = tuple(-c if c < 0 else 0 for c in coeffs)
    return pos, neg


def _mul_kronecker_signed(a, b):
    if min(a) >= 0 and min(b) >= 0:
        return _mul_kronecker(a, b)
    ap, an = _split_signs(a)
    bp, bn = _split_signs(b)
    n = len(a) + len(b) - 1
    out = [0] * n
    for xa, xb, sign in ((ap, bp, 1), (an, bn, 1), (ap, bn, -1), (an, bp, -1)):
        if any(xa) and any(xb):
            part = _mul_kronecker(xa, xb)
            for i, c in enumerate(part):
                if c:
                    out[i] += sign * c
    return out


def exact_div(a: Poly, b: Poly) -> Poly:
    """Quotient a / b when b divides a exactly.

    The divisor's leading coefficient must be +1 or -1 (UnsupportedDivisor
    otherwise); a nonzero remainder raises DivisionInexact carrying it.
    """
    if not isinstance(a, Poly) or not isinstance(b, Poly):
        raise TypeError("exact_div expects Poly arguments")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return Poly.zero()
    lead = b.coeffs[-1]
    if lead not in (1, -1):
        raise UnsupportedDivisor(
            "divisor leading coefficient must be a unit, got %d" % lead
        )
    da, db = a.degree, b.degree
    if da < db:
        raise DivisionInexact("degree of dividend below divisor", remainder=a)
    rem = list(a.coeffs)
    quot = [0] * (da - db + 1)
    body = [(j, c) for j, c in enumerate(b.coeffs[:-1]) if c]
    for i in range(da - db, -1, -1):
        c = rem[i + db]
        if c:
            c *= lead  # lead is +-1 so this is the exact quotient coefficient
            quot[i] = c
            rem[i + db] = 0
            for j, bc in body:
                rem[i + j] -= c * bc
    if any(rem[:db]):
        raise DivisionInexact(
            "inexact division", remainder=Poly._raw(rem[:db])
        )
    return Poly._raw(quot)


def poly_remainder(a: Poly, m: Poly) -> Poly:
    """Remainder of a modulo a monic m with degree >= 1."""
    if m.is_zero() or m.coeffs[-1] != 1:
        raise NonMonicModulus("modulus must be monic")
    dm = m.degree
    if dm < 1:
        raise NonMonicModulus("modulus must have degree >= 1")
    if a.degree < dm:
        return a
    rem = list(a.coeffs)
    body = [(j, c) for j, c in enumerate(m.coeffs[:-1]) if c]
    for i in range(a.degree - dm, -1, -1):
        c = rem[i + dm]
        if c:
            rem[i + dm] = 0
            for j, mc in body:
                rem[i + j] -= c * mc
    return Poly._raw(rem[:dm])


@dataclass(frozen=True)
class Shape:
    is_nonnegative: bool
    is_reciprocal: bool
    is_unimodal: bool
    nonneg_prefix_degree: int


def shape(a: Poly) -> Shape:
    """Coefficient-shape report for a.

    Reciprocality and unimodality are judged over the support window from
    the lowest nonzero coefficient up to the degree, so q^2 + q^3 counts
    as reciprocal.  An interior zero between two positive coefficients
    breaks unimodality.  The zero polynomial satisfies all three.
    """
    c = a.coeffs
    if not c:
        return Shape(True, True, True, -1)
    nonneg = True
    prefix = len(c) - 1
    for i, x in enumerate(c):
        if x < 0:
            nonneg = False
            prefix = i - 1
            break
    low = 0
    while c[low] == 0:
        low += 1
    w = c[low:]
    n = len(w)
    reciprocal = all(w[i] == w[n - 1 - i] for i in range((n + 1) // 2))
    i = 0
    while i + 1 < n and w[i + 1] >= w[i]:
        i += 1
    while i + 1 < n and w[i + 1] <= w[i]:
        i += 1
    unimodal = i == n - 1
    return Shape(nonneg, reciprocal, unimodal, prefix)


def unimodal_break_index(a: Poly):
    """Index of the first coefficient that breaks unimodality, or None.

    Indices are absolute powers of q, not window offsets.
    """
    c = a.coeffs
    if not c:
        return None
    low = 0
    while c[low] == 0:
        low += 1
    i = low
    top = len(c) - 1
    while i < top and c[i + 1] >= c[i]:
        i += 1
    while i < top and c[i + 1] <= c[i]:
        i += 1
    return None if i == top else i + 1


@dataclass(frozen=True)
class RationalForm:
    """A fraction of polynomials, never normalized; den must be nonzero."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("rational form with zero denominator")

    def __str__(self):
        return "(%s) / (%s)" % (self.num, self.den)


def rational_equal(x: RationalForm, y: RationalForm) -> bool:
    """Cross-multiplied equality; no gcd, no cancellation, ever."""
    return x.num * y.den == y.num * x.den


def as_rational(p: Poly) -> RationalForm:
    return RationalForm(p, Poly.one())
