"""Classical q-analogues built on exact polynomials.

Everything here returns a Poly (or a RationalForm where the object is
genuinely a quotient).  Gaussian binomials are built by the product
formula with interleaved exact divisions, which keeps every intermediate
polynomial and costs O(k * deg); a small LRU holds recent results.  The
Pascal-recurrence construction lives in pascal_q_binomial so the two can
be cross-checked coefficient for coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .poly import Poly, RationalForm, exact_div, poly_remainder


def q_int(n: int) -> Poly:
    """[n]_q = 1 + q + ... + q^(n-1); [0]_q = 0."""
    if n < 0:
        raise DomainError("q_int needs n >= 0")
    return Poly._raw((1,) * n)


@lru_cache(maxsize=None)
def q_factorial(n: int) -> Poly:
    if n < 0:
        raise DomainError("q_factorial needs n >= 0")
    out = Poly.one()
    for i in range(1, n + 1):
        out = out * q_int(i)
    return out


def q_pochhammer(sign: str, a: int, r: int) -> Poly:
    """(sign q^a; q)_r, the product of (1 -+ q^(a+i)) for 0 <= i < r."""
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    if a < 0 or r < 0:
        raise DomainError("q_pochhammer needs a, r >= 0")
    unit = 1 if sign == "-" else -1
    out = Poly.one()
    for i in range(r):
        out = out * (Poly.one() + Poly.monomial(a + i, unit))
    return out


def _one_minus_q_to(k: int) -> Poly:
    return Poly._raw((1,) + (0,) * (k - 1) + (-1,))


@lru_cache(maxsize=8192)
def q_binomial(m: int, k: int) -> Poly:
    """Gaussian binomial [m choose k]_q, degree k(m-k); zero out of range."""
    if m < 0:
        raise DomainError("q_binomial needs m >= 0")
    if k < 0 or k > m:
        return Poly.zero()
    k = min(k, m - k)
    out = Poly.one()
    for t in range(1, k + 1):
        # partial product stays the polynomial [m-k+t choose t]_q
        out = exact_div(out * _one_minus_q_to(m - k + t), _one_minus_q_to(t))
    return out


def pascal_q_binomial(m: int, k: int) -> Poly:
    """Same polynomial via the Pascal recurrence; used as a cross-check."""
    if m < 0:
        raise DomainError("pascal_q_binomial needs m >= 0")
    if k < 0 or k > m:
        return Poly.zero()
    row = [Poly.one()]
    for i in range(1, m + 1):
        prev = row
        row = [Poly.one()]
        top = min(i, k)
        for j in range(1, top + 1):
            left = prev[j - 1]
            right = prev[j] if j < len(prev) else Poly.zero()
            row.append(left + right.shift(j) if right else left)
    return row[k] if k < len(row) else Poly.zero()


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=256)
def q_catalan(n: int) -> Poly:
    """C_n(q) = [2n choose n]_q / [n+1]_q, a polynomial of degree n(n-1)."""
    if n < 0:
        raise DomainError("q_catalan needs n >= 0")
    return exact_div(q_binomial(2 * n, n), q_int(n + 1))


def narayana_number(n: int, k: int) -> int:
    if n < 1:
        raise DomainError("narayana_number needs n >= 1")
    return math.comb(n, k - 1) * math.comb(n, k) // n


@lru_cache(maxsize=None)
def narayana_poly(n: int) -> Poly:
    """Peak-count distribution over Dyck paths: sum_k N(n,k) q^(k-1)."""
    if n < 1:
        raise DomainError("narayana_poly needs n >= 1")
    return Poly._raw(tuple(narayana_number(n, k) for k in range(1, n + 1)))


def ballot_number(n: int, r: int) -> int:
    """Paths built from r+1 chained Dyck factors with n total up-steps."""
    if n < 0 or r < 0:
        raise DomainError("ballot_number needs n, r >= 0")
    return (r + 1) * math.comb(2 * n + r + 1, n) // (2 * n + r + 1)


def q_ballot(j: int, n: int, method: str = "quotient") -> Poly:
    """q-ballot polynomial B_j(n, q); B_1 is the q-Catalan number.

    quotient:   [j]_q / [2n+j]_q * [2n+j choose n]_q via exact division
    difference: [2n+j-2 choose n]_q - q^j [2n+j-2 choose n-2]_q
    """
    if j < 1 or n < 1:
        raise DomainError("q_ballot needs j >= 1 and n >= 1")
    if method == "quotient":
        return exact_div(q_int(j) * q_binomial(2 * n + j, n), q_int(2 * n + j))
    if method == "difference":
        head = q_binomial(2 * n + j - 2, n)
        if n < 2:
            return head
        return head - q_binomial(2 * n + j - 2, n - 2).shift(j)
    raise DomainError("unknown q_ballot method %r" % method)


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> Poly:
    """k-th cyclotomic polynomial via (q^k - 1) / prod of proper divisors."""
    if k < 1:
        raise DomainError("cyclotomic needs k >= 1")
    num = Poly.monomial(k) - Poly.one()
    den = Poly.one()
    for d in range(1, k):
        if k % d == 0:
            den = den * cyclotomic(d)
    return exact_div(num, den)


def q_lucas_check(m: int, k: int, d: int) -> bool:
    """[m choose k]_q == C(a, r) * [b choose s]_q modulo the d-th cyclotomic,
    where m = a*d + b and k = r*d + s with 0 <= b, s < d."""
    if d < 1:
        raise DomainError("q_lucas_check needs d >= 1")
    if m < 0 or k < 0 or k > m:
        raise DomainError("q_lucas_check needs 0 <= k <= m")
    a, b = divmod(m, d)
    r, s = divmod(k, d)
    lhs = q_binomial(m, k)
    rhs = q_binomial(b, s) * math.comb(a, r)
    diff = lhs - rhs
    # fold exponents modulo q^d - 1 first (a multiple of the modulus),
    # so the final reduction only sees degree < d
    if diff.degree >= d:
        folded = [0] * d
        for i, c in enumerate(diff.coeffs):
            folded[i % d] += c
        diff = Poly(*folded)
    return poly_remainder(diff, cyclotomic(d)).is_zero()


# -- alternating T-term family ---------------------------------------


@dataclass(frozen=True)
class TTermForms:
    """All published forms of the r-th alternating term, kept unreduced.

    tr21 is the exact polynomial value.  The rational fields are None when
    the corresponding form is not defined for the given (n, j); gen_t2
    also needs n >= 2.  tr22_parts holds the two- or three-summand split
    (j = 1 only): two summands when 2r-1 <= n <= 2r, three when n >= 2r+1.
    """

    r: int
    n: int
    j: int
    tr21: Poly
    general_j: RationalForm
    andrews_rational: RationalForm | None = None
    gen_t: RationalForm | None = None
    gen_t2: RationalForm | None = None
    tr22_parts: tuple[Poly, ...] | None = None

    def rational_forms(self):
        """Populated forms, each as a (name, RationalForm) pair."""
        out = [("tr21", RationalForm(self.tr21, Poly.one())),
               ("general_j", self.general_j)]
        for name in ("andrews_rational", "gen_t", "gen_t2"):
            form = getattr(self, name)
            if form is not None:
                out.append((name, form))
        return out


@lru_cache(maxsize=4096)
def q_binomial_sq(m: int, k: int) -> Poly:
    """[m choose k] in the variable q^2."""
    return q_binomial(m, k).subs_power(2)


def t_term_poly(r: int, n: int, j: int) -> Poly:
    """The r-th alternating term as an exact polynomial.

    Computed as q^(r^2-r) [n choose r]_{q^2} [2n+j-1-2r choose n-1]_q
    times (1 - q^j) / (1 - q^n); both factors are sparse so this is one
    cheap multiply and one cheap exact division.  Zero when n < 2r-j
    (the second binomial vanishes there).
    """
    if r < 1 or j < 1 or n < 1:
        raise DomainError("t_term needs r >= 1, j >= 1, n >= 1")
    if n < 2 * r - j:
        return Poly.zero()
    core = q_binomial_sq(n, r) * q_binomial(2 * n + j - 1 - 2 * r, n - 1)
    num = core * _one_minus_q_to(j)
    return exact_div(num, _one_minus_q_to(n)).shift(r * r - r)


def t_term(r: int, n: int, j: int = 1) -> TTermForms:
    """Construct every published form of the r-th term of the alternating
    q-Catalan / q-ballot expansion.  Terms with n < 2r-j are zero and
    carry only the polynomial and unreduced-quotient fields."""
    if r < 1 or j < 1 or n < 1:
        raise DomainError("t_term needs r >= 1, j >= 1, n >= 1")
    if n < 2 * r - j:
        zero = RationalForm(Poly.zero(), q_int(n))
        return TTermForms(r=r, n=n, j=j, tr21=Poly.zero(), general_j=zero)
    lead = Poly.monomial(r * r - r)
    general = RationalForm(
        lead * q_binomial_sq(n, r) * q_binomial(2 * n + j - 1 - 2 * r, n - 1) * q_int(j),
        q_int(n),
    )
    if j != 1:
        return TTermForms(r=r, n=n, j=j, tr21=t_term_poly(r, n, j), general_j=general)

    # j = 1: the difference form is already a polynomial.  The subtracted
    # product is guarded because at n = 1 its vanishing first factor is
    # paired with out-of-range binomial indices.
    tr21 = lead * q_binomial_sq(n, r) * q_binomial(2 * n - 2 * r, n - 1)
    if n >= 2:
        sub = q_binomial_sq(n - 1, r) * q_binomial(2 * n - 2 * r - 1, n - 2)
        if sub:
            tr21 = tr21 - lead * sub * (Poly.q() + Poly.monomial(n + 1))
    andrews = RationalForm(
        lead
        * q_pochhammer("-", n - r + 1, r)
        * q_binomial(n - r + 1, r)
        * q_catalan(n - r),
        q_pochhammer("-", 1, r),
    )
    gen_t = RationalForm(
        lead * q_binomial_sq(n, r) * q_binomial(2 * n - 2 * r, n - 1),
        q_int(n),
    )
    gen_t2 = None
    parts = [lead * q_binomial_sq(n - 1, r - 1) * q_binomial(2 * n - 2 * r + 1, n)]
    if n >= 2:
        gen_t2 = RationalForm(
            lead
            * q_binomial_sq(n - 1, r)
            * (Poly.one() + Poly.monomial(n))
            * q_binomial(2 * n - 2 * r - 1, n - 2),
            q_int(n - 1),
        )
        parts.append(
            -(lead * q_binomial_sq(n - 1, r) * q_binomial(2 * n - 2 * r - 1, n - 2).shift(1))
        )
    else:
        parts.append(Poly.zero())
    if n >= 2 * r + 1:
        parts.append(
            Poly.monomial(r * r + r)
            * q_binomial_sq(n - 1, r)
            * q_binomial(2 * n - 2 * r - 1, n)
        )
    return TTermForms(
        r=r,
        n=n,
        j=1,
        tr21=tr21,
        general_j=general,
        andrews_rational=andrews,
        gen_t=gen_t,
        gen_t2=gen_t2,
        tr22_parts=tuple(parts),
    )
