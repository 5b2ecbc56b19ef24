"""Constrained partition enumeration and the sign-reversing involution.

Partitions are tuples of weakly decreasing positive parts.  The pair
family at level r in context (n, j) consists of a strict partition mu
with r parts obeying the staircase cap mu_i <= box - i + 1 and a
partition nu with exactly n + j - 2r parts in [1, box], where box is
n - 1 for j = 1 and n for j >= 2.  The involution moves the smallest
repeated value of the multiset mu + mu + nu between the two components,
changing the level by one and preserving 2|mu| + |nu|.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import DomainError, InvariantViolation, NoRepeatedPart, ScaleLimit
from .poly import Poly

ENUM_GUARD = 5_000_000


def _length_spec(exact_length, max_length):
    if (exact_length is None) == (max_length is None):
        raise DomainError("give exactly one of exact_length, max_length")
    if exact_length is not None:
        if exact_length < 0:
            raise DomainError("need exact_length >= 0")
        return exact_length, True
    if max_length < 0:
        raise DomainError("need max_length >= 0")
    return max_length, False


def enumerate_partitions(
    max_part: int,
    *,
    exact_length: int | None = None,
    max_length: int | None = None,
    strict: bool = False,
    cap_schedule=None,
    force: bool = False,
):
    """Partitions with positive parts bounded by max_part (or, position
    by position, by cap_schedule), in descending lexicographic order.

    The length bound is exact or at-most; an upper estimate of the
    output size is guarded so runaway enumerations fail fast.
    """
    if max_part < 0:
        raise DomainError("need max_part >= 0")
    bound, exact = _length_spec(exact_length, max_length)
    caps = list(cap_schedule) if cap_schedule is not None else [max_part] * bound
    if len(caps) < bound:
        raise DomainError("cap_schedule shorter than the length bound")
    caps = [min(c, max_part) for c in caps[:bound]]
    top = caps[0] if caps else 0
    est = comb(top, bound) if strict else comb(top + bound, bound)
    if est > ENUM_GUARD and not force:
        raise ScaleLimit("estimated %d partitions exceeds guard" % est)

    def rec(i, prev, acc):
        if i == bound:
            yield tuple(acc)
            return
        if not exact:
            yield tuple(acc)
        hi = min(prev - 1 if strict else prev, caps[i])
        for v in range(hi, 0, -1):
            acc.append(v)
            yield from rec(i + 1, v, acc)
            acc.pop()

    yield from rec(0, max_part + 1, [])


def repetition_statistic(parts) -> int:
    """Number of distinct part values occurring at least twice."""
    return sum(1 for c in Counter(parts).values() if c >= 2)


def conjugate(parts) -> tuple:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


def successive_ranks(parts) -> tuple:
    """lambda_i minus conjugate_i along the Durfee square diagonal."""
    conj = conjugate(parts)
    d = 0
    while d < len(parts) and parts[d] > d:
        d += 1
    return tuple(parts[i] - conj[i] for i in range(d))


def render_partition(parts) -> str:
    return "[" + ",".join(str(p) for p in parts) + "]"


def _is_weakly_decreasing(parts):
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def pair_box(n: int, j: int) -> int:
    return n - 1 if j == 1 else n


@dataclass(frozen=True)
class PartitionPair:
    """Level-r object of the involution family in context (n, j)."""

    mu: tuple
    nu: tuple
    n: int
    j: int

    def __post_init__(self):
        if self.n < 1 or self.j < 1:
            raise InvariantViolation("need n >= 1 and j >= 1")
        box = pair_box(self.n, self.j)
        mu, nu = self.mu, self.nu
        r = len(mu)
        if any(p < 1 for p in mu) or any(mu[i] <= mu[i + 1] for i in range(r - 1)):
            raise InvariantViolation("mu must be strictly decreasing and positive")
        for i, p in enumerate(mu):
            if p > box - i:
                raise InvariantViolation(
                    "mu part %d at position %d exceeds cap %d" % (p, i + 1, box - i)
                )
        want = self.n + self.j - 2 * r
        if len(nu) != want:
            raise InvariantViolation("nu needs exactly %d parts, got %d" % (want, len(nu)))
        if any(p < 1 or p > box for p in nu) or not _is_weakly_decreasing(nu):
            raise InvariantViolation("nu parts must weakly decrease within [1, %d]" % box)

    @property
    def r(self) -> int:
        return len(self.mu)

    @property
    def weight(self) -> int:
        return 2 * sum(self.mu) + sum(self.nu)

    def render(self) -> str:
        return "(%s, %s)" % (render_partition(self.mu), render_partition(self.nu))


def involution_step(pair: PartitionPair) -> PartitionPair:
    """Move the smallest repeated value of mu + mu + nu across the pair.

    When that value x is mu's last part, the part is dropped and (x, x)
    joins nu; otherwise x repeats inside nu alone, two copies leave nu
    and x becomes mu's new last part.  Always an involution with the
    level changing by one.
    """
    counts = Counter(pair.nu)
    for p in pair.mu:
        counts[p] += 2
    repeated = [v for v, c in counts.items() if c >= 2]
    if not repeated:
        raise NoRepeatedPart("no value repeats in the pair %s" % pair.render())
    x = min(repeated)
    if pair.mu and pair.mu[-1] == x:
        nu = tuple(sorted(pair.nu + (x, x), reverse=True))
        return PartitionPair(pair.mu[:-1], nu, pair.n, pair.j)
    nu = list(pair.nu)
    nu.remove(x)
    nu.remove(x)
    return PartitionPair(pair.mu + (x,), tuple(nu), pair.n, pair.j)


def level_range(n: int, j: int) -> range:
    box = pair_box(n, j)
    return range(0, min(box, (n + j) // 2) + 1)


def iter_pairs(n: int, j: int, r: int, force: bool = False):
    box = pair_box(n, j)
    caps = [box - i for i in range(r)]
    for mu in enumerate_partitions(box, exact_length=r, strict=True,
                                   cap_schedule=caps, force=force):
        for nu in enumerate_partitions(box, exact_length=n + j - 2 * r, force=force):
            yield PartitionPair(mu, nu, n, j)


# -- generating polynomials of the three partition families ----------


@lru_cache(maxsize=4096)
def _box_gen(cap: int, length: int) -> Poly:
    """Weight polynomial of partitions with at most `length` parts, each
    at most `cap`, by the cell recurrence splitting on whether a part
    equal to cap exists."""
    if cap < 0 or length < 0:
        raise DomainError("need cap, length >= 0")
    if cap == 0 or length == 0:
        return Poly.one()
    return _box_gen(cap - 1, length) + _box_gen(cap, length - 1).shift(cap)


@lru_cache(maxsize=4096)
def _strict_gen(cap: int, length: int) -> Poly:
    """Weight polynomial of strict partitions with exactly `length`
    positive parts, each at most `cap`."""
    if length < 0:
        raise DomainError("need length >= 0")
    if length == 0:
        return Poly.one()
    if cap < length:
        return Poly.zero()
    return _strict_gen(cap - 1, length) + _strict_gen(cap - 1, length - 1).shift(cap)


def _guard_box(cap: int, length: int):
    if cap * length > 60_000:
        raise ScaleLimit("partition family of box %dx%d too large" % (cap, length))


def mu_side(n: int, j: int, r: int) -> Poly:
    """Sum of q^(2|mu|) over the strict staircase-capped family."""
    if r < 0:
        raise DomainError("need r >= 0")
    box = pair_box(n, j)
    _guard_box(box, r)
    return _strict_gen(box, r).subs_power(2) if r else Poly.one()


def nu_side(n: int, j: int, r: int) -> Poly:
    """Sum of q^|nu| over partitions with exactly n+j-2r parts in [1, box]."""
    box = pair_box(n, j)
    length = n + j - 2 * r
    if length < 0:
        raise DomainError("no nu family at level %d" % r)
    if length == 0:
        return Poly.one()
    if box < 1:
        return Poly.zero()
    _guard_box(box, length)
    return _box_gen(box - 1, length).shift(length)


def lambda_side(n: int, j: int) -> Poly:
    """Sum of q^|lambda| over partitions with exactly n+j parts in [1, box]."""
    return nu_side(n, j, 0)


def side_gen(side: str, n: int, j: int, r: int | None = None) -> Poly:
    if side == "mu_side":
        if r is None:
            raise DomainError("mu_side needs r")
        return mu_side(n, j, r)
    if side == "nu_side":
        if r is None:
            raise DomainError("nu_side needs r")
        return nu_side(n, j, r)
    if side == "lambda_side":
        return lambda_side(n, j)
    raise DomainError("unknown side %r" % side)


def rank_family_gen(n: int, j: int, force: bool = False) -> Poly:
    """Sum of q^|lambda| over partitions with largest part at most
    n+j-2, at most n parts, and every successive rank below j-1."""
    if n < 0 or j < 1:
        raise DomainError("need n >= 0 and j >= 1")
    acc: dict[int, int] = {0: 0}
    top = 0
    for lam in enumerate_partitions(n + j - 2, max_length=n, force=force):
        if all(rk < j - 1 for rk in successive_ranks(lam)):
            w = sum(lam)
            acc[w] = acc.get(w, 0) + 1
            top = max(top, w)
    return Poly._raw(tuple(acc.get(i, 0) for i in range(top + 1)))
