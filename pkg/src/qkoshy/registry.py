"""Registry of executable identity checks.

Each row binds an identity id to a cell generator and a per-cell
checker.  Checkers return None on success or a small dict with rendered
left/right values and a difference; verify() walks the sorted cells,
stops at the first counterexample, and wraps the outcome in an
IdentityReport.  All comparisons are exact; a domain error raised by a
checker is reported as a failure, never swallowed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, gcd
from multiprocessing import Pool

from . import dyckpaths as dp
from . import partitions as pt
from .errors import DomainError, QKoshyError, ScaleLimit, UnknownIdentity
from .poly import Poly, RationalForm, rational_equal, shape
from .qfuncs import (
    ballot_number,
    catalan,
    cyclotomic,
    narayana_poly,
    q_ballot,
    q_binomial,
    q_binomial_sq,
    q_catalan,
    q_int,
    q_lucas_check,
    t_term,
    t_term_poly,
)


@dataclass
class IdentityReport:
    identity: str
    params: dict
    status: str
    counterexample: dict | None
    cells_checked: int
    elapsed_ms: int

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "status": self.status,
            "counterexample": self.counterexample,
            "cells_checked": self.cells_checked,
            "elapsed_ms": self.elapsed_ms,
        }


CSV_HEADER = (
    "identity,params,status,counterexample_cell,counterexample_left,"
    "counterexample_right,counterexample_diff,cells_checked,elapsed_ms"
)


def report_csv_row(rep: IdentityReport) -> str:
    import json

    def esc(s: str) -> str:
        s = str(s)
        if any(c in s for c in ',"\n'):
            return '"' + s.replace('"', '""') + '"'
        return s

    ce = rep.counterexample or {}
    cells = [
        rep.identity,
        json.dumps(rep.params, sort_keys=True),
        rep.status,
        json.dumps(ce.get("cell")) if ce else "",
        ce.get("left", ""),
        ce.get("right", ""),
        ce.get("diff", ""),
        str(rep.cells_checked),
        str(rep.elapsed_ms),
    ]
    return ",".join(esc(c) for c in cells)


@dataclass(frozen=True)
class Check:
    id: str
    params: tuple
    defaults: dict
    caps: dict
    cells: object
    checker: object


def _eq(left, right):
    if left == right:
        return None
    if isinstance(left, Poly) and isinstance(right, Poly):
        diff = str(left - right)
    elif isinstance(left, int) and isinstance(right, int):
        diff = str(left - right)
    else:
        diff = "mismatch"
    return {"left": str(left), "right": str(right), "diff": diff}


def _fail(left, right, diff):
    return {"left": str(left), "right": str(right), "diff": str(diff)}


def _rng(bounds, name):
    lo, hi = bounds[name]
    return range(lo, hi + 1)


_ONE_MINUS_Q = Poly(1, -1)


def _omq_pow(k: int) -> Poly:
    return _ONE_MINUS_Q ** k


def _fhat(t: int) -> Poly:
    # peak polynomial with the empty path counted once at t = 0
    return Poly.one() if t == 0 else narayana_poly(t).shift(1)


def _fpath(t: int) -> Poly:
    # peak polynomial of nonempty paths only; zero at t = 0
    return Poly.zero() if t == 0 else narayana_poly(t).shift(1)


# -- checkers ---------------------------------------------------------


def _chk_koshy(n):
    total = sum(
        (-1) ** r * comb(n - r + 1, r) * catalan(n - r) for r in range(n + 1)
    )
    return _eq(total, 0)


def _chk_upeak_label(n, m):
    want = comb(n - m + 1, m) * catalan(n - m) if n >= m else 0
    for sel in ("up-peaks", "colored-towers"):
        got = dp.labeled_gen(n, sel, m, "unit")
        if got != Poly(want):
            return _fail("%s: %s" % (sel, got), want, "selector %s deviates" % sel)
    return None


def _chk_upeak_gf(n):
    lhs = dp.distribution(n, "up-peaks")
    qm1 = Poly(-1, 1)
    rhs = Poly.zero()
    for j in range(n + 1):
        c = comb(n - j + 1, j) * catalan(n - j)
        if c:
            rhs = rhs + qm1 ** j * c
    return _eq(lhs, rhs)


def _chk_lassalle(n):
    lhs = narayana_poly(n)
    rhs = _omq_pow(n - 1)
    acc = Poly.zero()
    for k in range(1, n):
        inner = Poly.zero()
        for m in range(k):
            c = (-1) ** m * comb(k - 1, m) * comb(n - m, k)
            if c:
                inner = inner + _omq_pow(k - m - 1) * c
        acc = acc + narayana_poly(n - k) * inner
    rhs = rhs + acc.shift(1)
    return _eq(lhs, rhs)


def _chk_lassalle_transform(n):
    lhs = _fpath(n)
    rhs = _omq_pow(n - 1).shift(1)
    for m in range(1, n + 1):
        sgn = 1 if m % 2 == 1 else -1
        for k in range(m, n + 1):
            c = comb(k - 1, m - 1) * comb(n - k + 1, m)
            if not c:
                continue
            term = (_omq_pow(k - m) * _fpath(n - k) * c).shift(m)
            rhs = rhs + (term if sgn == 1 else -term)
    den = _omq_pow(n)
    if rational_equal(RationalForm(lhs, den), RationalForm(rhs, den)):
        return None
    return _fail(lhs, rhs, lhs - rhs)


def _chk_tower_ie(n):
    lhs = _fpath(n)
    rhs = Poly.zero()
    for m in range(1, n + 1):
        a = dp.labeled_gen(n, "colored-towers", m, "peak-weight-q")
        rhs = rhs + (a if m % 2 == 1 else -a)
    return _eq(lhs, rhs)


def _chk_tower_closed(n, m):
    lhs = dp.labeled_gen(n, "colored-towers", m, "peak-weight-q")
    rhs = Poly.zero()
    for k in range(m, n + 1):
        c = comb(n - k + 1, m) * comb(k - 1, m - 1)
        if not c:
            continue
        rhs = rhs + (_omq_pow(k - m) * _fhat(n - k) * c).shift(m)
    return _eq(lhs, rhs)


def _lemma1_target(n, m):
    out = set()
    if n < 0:
        return out
    for p in dp.iter_elevated(n):
        usteps = [i for i, c in enumerate(p) if c == "U"]
        for lab in combinations(usteps, m):
            out.add((p, lab))
    return out


def _chk_lemma1(n, m):
    target = _lemma1_target(n - m, m)
    seen = {}
    for p in dp.iter_elevated(n):
        starts = [t.start for t in dp.analyze(p, elevated=True).towers if t.colored]
        for chosen in combinations(starts, m):
            src = dp.LabeledPath(p, "towers", chosen)
            img = dp.lemma1_forward(src)
            key = (img.path, img.s_labels)
            if key in seen:
                return _fail(src, seen[key], "two sources map to %s" % (key,))
            if key not in target:
                return _fail(src, key, "image outside the labeled U-step family")
            if dp.lemma1_inverse(img) != src:
                return _fail(src, dp.lemma1_inverse(img), "round trip broke")
            seen[key] = src
    want = comb(n - m + 1, m) * catalan(n - m) if n >= m else 0
    if len(seen) != len(target) or len(target) != want:
        return _fail(len(seen), want, "cardinality mismatch (target %d)" % len(target))
    return None


def _lemma2_target(n, m, r):
    out = set()
    if n < 1:
        return out
    for p in dp.iter_elevated(n):
        starts = [t.start for t in dp.analyze(p, elevated=True).towers if t.colored]
        for chosen in combinations(starts, m):
            for w in combinations(chosen, r):
                out.add((p, chosen, w))
    return out


def _chk_lemma2(n, m, r):
    target = _lemma2_target(n - r, m, r)
    seen = set()
    for p in dp.iter_elevated(n):
        towers = [t for t in dp.analyze(p, elevated=True).towers if t.colored]
        starts = [t.start for t in towers]
        tall = {t.start for t in towers if t.height >= 2}
        for chosen in combinations(starts, m):
            for w in combinations([s for s in chosen if s in tall], r):
                src = dp.LabeledPath(p, "towers", chosen, w)
                img = dp.lemma2_forward(src)
                key = (img.path, img.s_labels, img.w_labels)
                if key in seen:
                    return _fail(src, key, "two sources map to the same image")
                if key not in target:
                    return _fail(src, key, "image outside the labeled tower family")
                if dp.lemma2_inverse(img) != src:
                    return _fail(src, dp.lemma2_inverse(img), "round trip broke")
                seen.add(key)
    if len(seen) != len(target):
        return _fail(len(seen), len(target), "cardinality mismatch")
    return None


@lru_cache(maxsize=None)
def _brute_tuple_peaks(t, r):
    acc = {}
    for tup in dp.iter_ballot_tuples(t, r):
        pk = sum(p.count("UD") for p in tup)
        acc[pk] = acc.get(pk, 0) + 1
    return Poly._raw(tuple(acc.get(i, 0) for i in range(max(acc) + 1)))


def _chk_ballot_lassalle(n, r):
    lhs = _brute_tuple_peaks(n, r)
    rhs = Poly.zero()
    for m in range(1, n + 1):
        sgn = 1 if m % 2 == 1 else -1
        for k in range(m, n + 1):
            c = comb(n - k + 1 + r, m) * comb(k - 1, m - 1)
            if not c:
                continue
            term = (_omq_pow(k - m) * _brute_tuple_peaks(n - k, r) * c).shift(m)
            rhs = rhs + (term if sgn == 1 else -term)
    return _eq(lhs, rhs)


def _tr21(r, n):
    lead = r * r - r
    t = (q_binomial_sq(n, r) * q_binomial(2 * n - 2 * r, n - 1)).shift(lead)
    if n >= 2:
        sub = q_binomial_sq(n - 1, r) * q_binomial(2 * n - 2 * r - 1, n - 2)
        t = t - (sub * (Poly.q() + Poly.monomial(n + 1))).shift(lead)
    return t


def _chk_andrews(n):
    total = Poly.zero()
    for r in range(1, (n + 1) // 2 + 1):    # terms vanish below n = 2r-1
        t = _tr21(r, n)
        total = total + (t if r % 2 == 1 else -t)
    return _eq(total, q_catalan(n))


def _chk_t_forms(n, r):
    forms = t_term(r, n, 1)
    direct = t_term_poly(r, n, 1)
    res = _eq(direct, forms.tr21)
    if res:
        return res
    base = RationalForm(forms.tr21, Poly.one())
    for name, rat in forms.rational_forms():
        if not rational_equal(base, rat):
            return _fail("tr21 %s" % forms.tr21, "%s %s / %s" % (name, rat.num, rat.den),
                         "form %s deviates" % name)
    if forms.tr22_parts is not None:
        total = Poly.zero()
        for part in forms.tr22_parts:
            total = total + part
        res = _eq(total, forms.tr21)
        if res:
            return res
    if r == 1:
        lhs = q_binomial(2 * n - 1, n)
        rhs = q_catalan(n) + q_binomial(2 * n - 1, n - 2).shift(1)
        res = _eq(lhs, rhs)
        if res:
            return res
    return None


def _first_negative(p: Poly):
    for i, c in enumerate(p.coeffs):
        if c < 0:
            return i, c
    return None


def _chk_theorem1_even(n, r):
    t = t_term_poly(r, n, 1)
    if t.is_zero():
        return _fail(t, "nonzero", "term vanished on an admissible cell")
    neg = _first_negative(t)
    if neg:
        return _fail(t, "nonnegative coefficients",
                     "coefficient %d at q^%d" % (neg[1], neg[0]))
    return None


def _chk_theorem1_odd(n, r):
    t = t_term_poly(r, n, 1)
    if t.is_zero():
        return _fail(t, "nonzero", "term vanished on an admissible cell")
    p = Poly(1, 1) * t
    neg = _first_negative(p)
    if neg:
        return _fail(p, "nonnegative coefficients",
                     "coefficient %d at q^%d" % (neg[1], neg[0]))
    return None


def _chk_theorem1_negq(r):
    n = 2 * r - 1
    lhs = t_term_poly(r, n, 1).negate_q()
    rhs = (q_int(n) * q_catalan(r - 1).subs_power(2)).shift(r * r - r)
    return _eq(lhs, rhs)


def _divisors(k):
    return [x for x in range(2, k + 1) if k % x == 0]


def _chk_cyclo_div(n, r):
    from .poly import exact_div
    from .errors import DivisionInexact

    d = gcd(n, r)
    binom = q_binomial(2 * n - 2 * r, n - 1)
    if binom.is_zero():
        return _fail(binom, "nonzero", "binomial vanished on an admissible cell")
    for x in _divisors(2 * d):
        try:
            exact_div(binom, cyclotomic(x))
        except DivisionInexact:
            return _fail(binom, "divisible by Phi_%d" % x, "inexact division")
    try:
        exact_div(binom, q_int(2 * d))
    except DivisionInexact:
        return _fail(binom, "divisible by [%d]_q" % (2 * d), "inexact division")
    return None


def _chk_invT(n):
    lhs = q_binomial(2 * n - 1, n - 2)
    rhs = Poly.zero()
    for r in range(1, (n + 1) // 2 + 1):
        term = (q_binomial_sq(n - 1, r) * q_binomial(2 * n - 2 * r - 1, n - 2))
        term = term.shift(r * r - r)
        rhs = rhs + (term if r % 2 == 1 else -term)
    res = _eq(lhs, rhs)
    if res:
        return res
    if n <= 10:
        box = n - 1
        total = Poly.zero()
        for r in pt.level_range(n, 1):
            ms = Poly.zero()
            for mu in pt.enumerate_partitions(
                box, exact_length=r, strict=True,
                cap_schedule=[box - i for i in range(r)],
            ):
                ms = ms + Poly.q() ** (2 * sum(mu))
            ns = Poly.zero()
            for nu in pt.enumerate_partitions(box, exact_length=n + 1 - 2 * r):
                ns = ns + Poly.q() ** sum(nu)
            term = ms * ns
            total = total + (term if r % 2 == 0 else -term)
        if not total.is_zero():
            return _fail(total, 0, "alternating partition sum did not vanish")
    return None


def _chk_partheo(n, r):
    res = _eq(pt.mu_side(n, 1, r),
              q_binomial_sq(n - 1, r).shift(r * r + r))
    if res:
        return res
    ell = n + 1 - 2 * r
    res = _eq(pt.nu_side(n, 1, r),
              q_binomial(n - 2 + ell, ell).shift(ell) if ell else Poly.one())
    if res:
        return res
    if r == 0:
        return _eq(pt.lambda_side(n, 1), q_binomial(2 * n - 1, n + 1).shift(n + 1))
    return None


@lru_cache(maxsize=32)
def _iepar_table(n):
    box = n - 1
    table = {}
    for lam in pt.enumerate_partitions(box, exact_length=n + 1):
        rep = pt.repetition_statistic(lam)
        w = sum(lam)
        table.setdefault(rep, {})
        table[rep][w] = table[rep][w] + 1 if w in table[rep] else 1
    return {
        rep: Poly._raw(tuple(acc.get(i, 0) for i in range(max(acc) + 1)))
        for rep, acc in table.items()
    }


def _chk_iepar(n, r):
    lhs = Poly.zero()
    for rep, poly in _iepar_table(n).items():
        c = comb(rep, r)
        if c:
            lhs = lhs + poly * c
    rhs = pt.mu_side(n, 1, r) * pt.nu_side(n, 1, r)
    return _eq(lhs, rhs)


def _chk_qballot_forms(n, j):
    a = q_ballot(j, n, method="quotient")
    b = q_ballot(j, n, method="difference")
    res = _eq(a, b)
    if res:
        return res
    if j == 1:
        res = _eq(a, q_catalan(n))
        if res:
            return res
    return _eq(a(1), ballot_number(n, j - 1))


def _chk_qballot_koshy(n, j):
    total = Poly.zero()
    for r in range(1, n + 1):
        t = t_term_poly(r, n, j)
        total = total + (t if r % 2 == 1 else -t)
    return _eq(total, q_ballot(j, n))


def _chk_tj_poly(n, r, j):
    t = t_term_poly(r, n, j)
    lhs = t * (Poly.one() - Poly.monomial(n))
    core = (q_binomial_sq(n, r) * q_binomial(2 * n + j - 1 - 2 * r, n - 1))
    rhs = (core * (Poly.one() - Poly.monomial(j))).shift(r * r - r)
    return _eq(lhs, rhs)


def _chk_tj_negq(r, j):
    n = 2 * r - j
    p = t_term_poly(r, n, j).negate_q()
    if p.is_zero():
        return _fail(p, "positive polynomial", "vanished")
    neg = _first_negative(p)
    if neg:
        return _fail(p, "positive polynomial",
                     "coefficient %d at q^%d" % (neg[1], neg[0]))
    return None


def _chk_qlucas(m, k, d):
    if q_lucas_check(m, k, d):
        return None
    return _fail("[%d choose %d]_q mod Phi_%d" % (m, k, d),
                 "base-%d digit product" % d, "congruence failed")


def _chk_maj_catalan(n):
    acc = {}
    for p in dp.iter_dyck(n):
        w = dp.major_index(p)
        acc[w] = acc.get(w, 0) + 1
    lhs = Poly._raw(tuple(acc.get(i, 0) for i in range(max(acc) + 1)))
    return _eq(lhs, q_catalan(n))


def _chk_maj_ballot(n, j):
    acc = {}
    for p in dp.iter_ballot_paths(n, j):
        w = dp.major_index(p)
        acc[w] = acc.get(w, 0) + 1
    lhs = Poly._raw(tuple(acc.get(i, 0) for i in range(max(acc) + 1)))
    return _eq(lhs, q_ballot(j, n))


def _chk_succ_ranks(n, j):
    return _eq(pt.rank_family_gen(n, j), q_ballot(j, n))


def _chk_brunetti(n, r):
    p = q_int(gcd(n, r)) * q_binomial(n, r)
    sh = shape(p)
    if not sh.is_unimodal:
        from .poly import unimodal_break_index
        return _fail(p, "unimodal", "break at q^%d" % unimodal_break_index(p))
    if not sh.is_reciprocal:
        return _fail(p, "reciprocal", "coefficient list is not palindromic")
    return None


# -- cell builders ----------------------------------------------------


def _cells_n(bounds, lo_floor=None):
    lo, hi = bounds["n"]
    if lo_floor is not None:
        lo = max(lo, lo_floor)
    return [(n,) for n in range(lo, hi + 1)]


def _cells_upeak_label(bounds):
    out = []
    for n in _rng(bounds, "n"):
        for m in _rng(bounds, "m"):
            if m <= n + 1:
                out.append((n, m))
    return sorted(out)


def _cells_tower_closed(bounds):
    return sorted((n, m) for n in _rng(bounds, "n")
                  for m in _rng(bounds, "m") if 1 <= m <= n)


def _cells_lemma1(bounds):
    return sorted((n, m) for n in _rng(bounds, "n")
                  for m in _rng(bounds, "m") if 1 <= m <= n)


def _cells_lemma2(bounds):
    return sorted((n, m, r) for n in _rng(bounds, "n")
                  for m in _rng(bounds, "m") if 1 <= m <= n
                  for r in _rng(bounds, "r") if 1 <= r <= m)


def _cells_ballot_lassalle(bounds):
    return sorted((n, r) for n in _rng(bounds, "n") if n >= 1
                  for r in _rng(bounds, "r") if r >= 0)


def _cells_t_forms(bounds):
    return sorted((n, r) for n in _rng(bounds, "n") if n >= 1
                  for r in _rng(bounds, "r")
                  if 1 <= r <= min(n, (n + 1) // 2))


def _cells_theorem1_even(bounds):
    return sorted((n, r) for n in _rng(bounds, "n") if n >= 2 and n % 2 == 0
                  for r in _rng(bounds, "r") if 1 <= r <= n // 2)


def _cells_theorem1_odd(bounds):
    return sorted((n, r) for n in _rng(bounds, "n") if n % 2 == 1
                  for r in _rng(bounds, "r") if 1 <= r <= (n + 1) // 2)


def _cells_theorem1_negq(bounds):
    return [(r,) for r in _rng(bounds, "r") if r >= 1]


def _cells_cyclo_div(bounds):
    return sorted((n, r) for n in _rng(bounds, "n") if n >= 2 and n % 2 == 0
                  for r in _rng(bounds, "r") if 1 <= r <= n // 2)


def _cells_partheo(bounds):
    return sorted((n, r) for n in _rng(bounds, "n") if n >= 1
                  for r in _rng(bounds, "r") if r in pt.level_range(n, 1))


def _cells_iepar(bounds):
    return sorted((n, r) for n in _rng(bounds, "n") if n >= 2
                  for r in _rng(bounds, "r") if r in pt.level_range(n, 1))


def _cells_nj(bounds, n_floor=1):
    return sorted((n, j) for n in _rng(bounds, "n") if n >= n_floor
                  for j in _rng(bounds, "j") if j >= 1)


def _cells_tj_poly(bounds):
    return sorted((n, r, j) for n in _rng(bounds, "n") if n >= 1
                  for j in _rng(bounds, "j") if j >= 1
                  for r in _rng(bounds, "r")
                  if 1 <= r <= min(n, (n + j) // 2))


def _cells_tj_negq(bounds):
    return sorted((r, j) for r in _rng(bounds, "r") if r >= 1
                  for j in _rng(bounds, "j") if 1 <= j <= r)


def _cells_qlucas(bounds):
    return sorted((m, k, d) for m in _rng(bounds, "m") if m >= 0
                  for k in _rng(bounds, "k") if 0 <= k <= m
                  for d in _rng(bounds, "d") if d >= 2)


def _cells_brunetti(bounds):
    return sorted((n, r) for n in _rng(bounds, "n") if n >= 2
                  for r in _rng(bounds, "r") if 1 <= r <= n - 1)


CHECKS: dict[str, Check] = {}


def _register(id, params, defaults, caps, cells, checker):
    CHECKS[id] = Check(id, params, defaults, caps, cells, checker)


_register("koshy", ("n",), {"n": (1, 200)}, {"n": 2000},
          lambda b: _cells_n(b), _chk_koshy)
_register("upeak-label", ("n", "m"), {"n": (0, 10), "m": (0, 11)},
          {"n": 12, "m": 14}, _cells_upeak_label, _chk_upeak_label)
_register("upeak-gf", ("n",), {"n": (0, 12)}, {"n": 13},
          lambda b: _cells_n(b), _chk_upeak_gf)
_register("lassalle", ("n",), {"n": (1, 60)}, {"n": 200},
          lambda b: _cells_n(b, 1), _chk_lassalle)
_register("lassalle-transform", ("n",), {"n": (1, 20)}, {"n": 120},
          lambda b: _cells_n(b, 1), _chk_lassalle_transform)
_register("tower-ie", ("n",), {"n": (1, 9)}, {"n": 12},
          lambda b: _cells_n(b, 1), _chk_tower_ie)
_register("tower-closed", ("n", "m"), {"n": (1, 9), "m": (1, 9)},
          {"n": 12, "m": 12}, _cells_tower_closed, _chk_tower_closed)
_register("lemma1", ("n", "m"), {"n": (1, 8), "m": (1, 8)},
          {"n": 10, "m": 10}, _cells_lemma1, _chk_lemma1)
_register("lemma2", ("n", "m", "r"), {"n": (1, 8), "m": (1, 8), "r": (1, 8)},
          {"n": 10, "m": 10, "r": 10}, _cells_lemma2, _chk_lemma2)
_register("ballot-lassalle", ("n", "r"), {"n": (1, 8), "r": (0, 3)},
          {"n": 10, "r": 6}, _cells_ballot_lassalle, _chk_ballot_lassalle)
_register("andrews", ("n",), {"n": (1, 60)}, {"n": 120},
          lambda b: _cells_n(b, 1), _chk_andrews)
_register("t-forms", ("n", "r"), {"n": (1, 30), "r": (1, 30)},
          {"n": 80, "r": 80}, _cells_t_forms, _chk_t_forms)
_register("theorem1-even", ("n", "r"), {"n": (1, 60), "r": (1, 60)},
          {"n": 120, "r": 120}, _cells_theorem1_even, _chk_theorem1_even)
_register("theorem1-odd", ("n", "r"), {"n": (1, 60), "r": (1, 60)},
          {"n": 120, "r": 120}, _cells_theorem1_odd, _chk_theorem1_odd)
_register("theorem1-negq", ("r",), {"r": (1, 30)}, {"r": 60},
          _cells_theorem1_negq, _chk_theorem1_negq)
_register("cyclo-div", ("n", "r"), {"n": (2, 40), "r": (1, 40)},
          {"n": 100, "r": 100}, _cells_cyclo_div, _chk_cyclo_div)
_register("invT", ("n",), {"n": (2, 40)}, {"n": 80},
          lambda b: _cells_n(b, 2), _chk_invT)
_register("partheo", ("n", "r"), {"n": (1, 12), "r": (0, 12)},
          {"n": 30, "r": 15}, _cells_partheo, _chk_partheo)
_register("iepar", ("n", "r"), {"n": (2, 10), "r": (0, 10)},
          {"n": 12, "r": 12}, _cells_iepar, _chk_iepar)
_register("qballot-forms", ("n", "j"), {"n": (1, 40), "j": (1, 6)},
          {"n": 120, "j": 12}, _cells_nj, _chk_qballot_forms)
_register("qballot-koshy", ("n", "j"), {"n": (1, 40), "j": (1, 6)},
          {"n": 120, "j": 12}, _cells_nj, _chk_qballot_koshy)
_register("tj-poly", ("n", "r", "j"),
          {"n": (1, 40), "r": (1, 40), "j": (1, 6)},
          {"n": 120, "r": 60, "j": 12}, _cells_tj_poly, _chk_tj_poly)
_register("tj-negq", ("r", "j"), {"r": (1, 40), "j": (1, 40)},
          {"r": 60, "j": 60}, _cells_tj_negq, _chk_tj_negq)
_register("qlucas", ("m", "k", "d"),
          {"m": (0, 40), "k": (0, 40), "d": (2, 12)},
          {"m": 120, "k": 120, "d": 40}, _cells_qlucas, _chk_qlucas)
_register("maj-catalan", ("n",), {"n": (0, 10)}, {"n": 13},
          lambda b: _cells_n(b), _chk_maj_catalan)
_register("maj-ballot", ("n", "j"), {"n": (1, 8), "j": (1, 4)},
          {"n": 10, "j": 8}, _cells_nj, _chk_maj_ballot)
_register("succ-ranks", ("n", "j"), {"n": (1, 8), "j": (1, 4)},
          {"n": 10, "j": 6}, _cells_nj, _chk_succ_ranks)
_register("brunetti-instance", ("n", "r"), {"n": (2, 60), "r": (1, 60)},
          {"n": 200, "r": 200}, _cells_brunetti, _chk_brunetti)


def list_identities():
    return list(CHECKS)


def _run_one(identity_id, cell):
    try:
        return CHECKS[identity_id].checker(*cell)
    except QKoshyError as exc:
        return _fail("exception", "clean evaluation", repr(exc))


def _worker(args):
    identity_id, cell = args
    return cell, _run_one(identity_id, cell)


def verify(identity_id: str, bounds: dict | None = None, jobs: int = 1,
           force: bool = False) -> IdentityReport:
    """Run one registry row over a parameter box and report the outcome.

    bounds maps parameter names to inclusive (lo, hi) pairs and merges
    over the row's defaults; cells are checked in sorted order and the
    first counterexample ends the run.  force bypasses the per-row caps,
    though enumeration-backed rows still hit the hard path-count guards.
    """
    if identity_id not in CHECKS:
        raise UnknownIdentity("no identity %r; known: %s"
                              % (identity_id, ", ".join(CHECKS)))
    chk = CHECKS[identity_id]
    eff = {k: tuple(v) for k, v in chk.defaults.items()}
    for k, v in (bounds or {}).items():
        if k not in eff:
            raise DomainError("identity %s has no parameter %r" % (identity_id, k))
        lo, hi = int(v[0]), int(v[1])
        eff[k] = (lo, hi)
    if not force:
        for k, (lo, hi) in eff.items():
            cap = chk.caps.get(k)
            if cap is not None and hi > cap:
                raise ScaleLimit("%s: %s up to %d exceeds guard %d"
                                 % (identity_id, k, hi, cap))
    cells = sorted(chk.cells(eff))
    t0 = time.perf_counter()
    found = None
    checked = 0
    if jobs > 1 and len(cells) > 1:
        chunk = max(1, min(16, len(cells) // (jobs * 4) or 1))
        with Pool(jobs) as pool:
            for cell, res in pool.imap(
                _worker, [(identity_id, c) for c in cells], chunksize=chunk
            ):
                checked += 1
                if res is not None:
                    found = (cell, res)
                    pool.terminate()
                    break
    else:
        for cell in cells:
            checked += 1
            res = _run_one(identity_id, cell)
            if res is not None:
                found = (cell, res)
                break
    elapsed = int((time.perf_counter() - t0) * 1000)
    if not cells:
        status, ce = "skipped", None
    elif found:
        cell, res = found
        status = "fail"
        ce = {"cell": dict(zip(chk.params, cell)),
              "left": res["left"], "right": res["right"], "diff": res["diff"]}
    else:
        status, ce = "pass", None
    return IdentityReport(
        identity=identity_id,
        params={k: [lo, hi] for k, (lo, hi) in sorted(eff.items())},
        status=status,
        counterexample=ce,
        cells_checked=checked,
        elapsed_ms=elapsed,
    )
