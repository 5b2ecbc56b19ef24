"""Counterexample sweeps for the positivity and unimodality conjectures.

Two one-parameter families of polynomials are conjectured unimodal:

  odd-n:   (1 + q^n) * qbinom(m, n-1)           for odd n,  m >= n >= 1
  even-n:  (1 + q^n) * [j]_q * qbinom(m, n-1)   for even n, even j >= 2

Both families are reciprocal by construction, so reciprocality is asserted
on every cell as a sanity check rather than swept for.  A sweep never stops
at the first hit: it walks the whole requested grid and reports every
violating cell, because a refutation is the interesting outcome here.

The odd-n sweep also spot-checks the downstream consequence that motivates
it: the quotient polynomials from the factor family stay coefficientwise
nonnegative for odd n >= 2r + 1 (checked up to n = 60).
"""

import json
import os
import time
from dataclasses import dataclass, field
from functools import lru_cache
from multiprocessing import Pool

from .errors import DomainError, InvariantViolation
from .poly import Poly, exact_div, shape, unimodal_break_index
from .qfuncs import q_binomial, q_int, t_term_poly

CASES = ("odd-n", "even-n")

# n = 150 keeps a full default sweep near a minute on one core; the cell
# polynomials top out around degree 5700 with ~150-bit coefficients
DEFAULT_M_MAX = 150
DEFAULT_N_MAX = 150
DEFAULT_J_MAX = 10

CONSEQUENCE_N_CAP = 60


def conjecture_poly(case: str, m: int, n: int, j: int = None) -> Poly:
    """The conjecturally unimodal polynomial at one grid cell.

    odd-n needs odd n and no j; even-n needs even n and an even j >= 2.
    Both need m >= n >= 1.  Anything else raises DomainError.
    """
    if case not in CASES:
        raise DomainError("unknown conjecture case %r" % (case,))
    if n < 1 or m < n:
        raise DomainError("conjecture cell needs m >= n >= 1")
    lead = Poly.one() + Poly.monomial(n)
    if case == "odd-n":
        if n % 2 == 0:
            raise DomainError("odd-n case needs odd n, got %d" % n)
        if j is not None:
            raise DomainError("odd-n case takes no j")
        return lead * q_binomial(m, n - 1)
    if n % 2 == 1:
        raise DomainError("even-n case needs even n, got %d" % n)
    if j is None or j < 2 or j % 2 == 1:
        raise DomainError("even-n case needs even j >= 2, got %r" % (j,))
    return lead * q_int(j) * q_binomial(m, n - 1)


@dataclass
class SweepReport:
    case_id: str
    grid: dict
    verified_cells: int
    counterexamples: list
    frontier: dict
    elapsed_ms: int = 0

    @property
    def status(self) -> str:
        return "pass" if not self.counterexamples else "fail"

    def to_dict(self) -> dict:
        return {
            "case": self.case_id,
            "grid": dict(self.grid),
            "status": self.status,
            "verified_cells": self.verified_cells,
            "counterexamples": list(self.counterexamples),
            "frontier": self.frontier,
            "elapsed_ms": self.elapsed_ms,
        }


@lru_cache(maxsize=512)
def _one_minus(k: int) -> Poly:
    return Poly.one() - Poly.monomial(k)


def _covered(skip, m, n, j) -> bool:
    if skip is None:
        return False
    if m > skip["m_max"] or n > skip["n_max"]:
        return False
    return j is None or j <= skip["j_max"]


def _cell_record(params: dict, p: Poly, index: int) -> dict:
    return {"params": params, "poly": str(p), "break_index": index}


def _sweep_column(case, n, m_max, j_max, skip):
    """All cells of one n-column.  Returns (cells_checked, counterexamples).

    The q-binomial is advanced in m by one multiply/exact-divide pair per
    step instead of being rebuilt, which is what makes the default grid
    cheap.
    """
    if case == "odd-n":
        jays = (None,)
    else:
        jays = tuple(range(2, j_max + 1, 2))
        if not jays:
            return 0, []
    start = n
    if skip is not None and n <= skip["n_max"]:
        jays_covered = all(j is None or j <= skip["j_max"] for j in jays)
        if jays_covered:
            start = skip["m_max"] + 1
            if start > m_max:
                return 0, []
            start = max(start, n)
    lead = Poly.one() + Poly.monomial(n)
    mults = {j: lead if j is None else lead * q_int(j) for j in jays}
    checked = 0
    bad = []
    binom = None
    for m in range(start, m_max + 1):
        if binom is None:
            binom = q_binomial(m, n - 1)
        else:
            binom = exact_div(binom * _one_minus(m), _one_minus(m - n + 1))
        for j in jays:
            if _covered(skip, m, n, j):
                continue
            p = binom * mults[j]
            checked += 1
            c = p.coeffs
            if c != c[::-1]:
                # construction guarantees this; a miss means broken arithmetic
                raise InvariantViolation(
                    "cell m=%d n=%d j=%r is not reciprocal" % (m, n, j)
                )
            hit = unimodal_break_index(p)
            if hit is not None:
                params = {"m": m, "n": n}
                if j is not None:
                    params["j"] = j
                bad.append(_cell_record(params, p, hit))
    return checked, bad


def _sweep_column_star(args):
    return _sweep_column(*args)


def _consequence_cells(n_max, skip):
    """Nonnegativity of the plain factor-family quotients for odd n >= 2r+1."""
    checked = 0
    bad = []
    for n in range(1, min(n_max, CONSEQUENCE_N_CAP) + 1, 2):
        if skip is not None and n <= skip["n_max"]:
            continue
        for r in range(1, (n - 1) // 2 + 1):
            t = t_term_poly(r, n, 1)
            checked += 1
            sh = shape(t)
            if not sh.is_nonnegative:
                bad.append(
                    _cell_record({"n": n, "r": r}, t, sh.nonneg_prefix_degree + 1)
                )
    return checked, bad


def _box_cells(case, box) -> int:
    m_max, n_max, j_max = box["m_max"], box["n_max"], box["j_max"]
    first = 1 if case == "odd-n" else 2
    per_n = 1 if case == "odd-n" else len(range(2, j_max + 1, 2))
    total = 0
    for n in range(first, n_max + 1, 2):
        total += max(0, m_max - n + 1) * per_n
    return total


def _load_frontier(path, case):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        return None
    if not isinstance(data, dict) or data.get("case") != case:
        raise DomainError(
            "frontier file %s tracks case %r, not %r"
            % (path, data.get("case") if isinstance(data, dict) else None, case)
        )
    box = data.get("verified", {})
    for key in ("m_max", "n_max", "j_max"):
        if not isinstance(box.get(key), int):
            raise DomainError("frontier file %s has a malformed verified box" % path)
    data.setdefault("counterexamples", [])
    return data


def _write_frontier(path, obj):
    tmp = "%s.tmp.%d" % (path, os.getpid())
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def _merge_counterexamples(old, new):
    seen = set()
    out = []
    for rec in list(old) + list(new):
        key = json.dumps(rec.get("params", {}), sort_keys=True)
        if key in seen:
            continue
        seen.add(key)
        out.append(rec)
    return out


def sweep(
    case: str,
    m_max: int = DEFAULT_M_MAX,
    n_max: int = DEFAULT_N_MAX,
    j_max: int = DEFAULT_J_MAX,
    jobs: int = 1,
    frontier_path: str = None,
) -> SweepReport:
    """Exhaustively check one conjecture case over a finite grid.

    Cells already inside the verified box of an existing frontier file are
    skipped, so repeated runs extend coverage instead of repeating it.  The
    persisted box only ever grows: if neither the old box nor the new grid
    contains the other, the one covering more cells is kept, since the
    frontier records a single fully swept rectangle.
    """
    if case not in CASES:
        raise DomainError("unknown conjecture case %r" % (case,))
    if m_max < 1 or n_max < 1 or j_max < 1:
        raise DomainError("sweep bounds must be >= 1")
    if jobs < 1:
        raise DomainError("jobs must be >= 1")
    t0 = time.perf_counter()
    prior = _load_frontier(frontier_path, case) if frontier_path else None
    skip = prior["verified"] if prior else None

    columns = [
        (case, n, m_max, j_max, skip)
        for n in range(1 if case == "odd-n" else 2, n_max + 1, 2)
    ]
    checked = 0
    bad = []
    if jobs > 1 and len(columns) > 1:
        with Pool(processes=jobs) as pool:
            for cells, hits in pool.imap(_sweep_column_star, columns):
                checked += cells
                bad.extend(hits)
    else:
        for args in columns:
            cells, hits = _sweep_column(*args)
            checked += cells
            bad.extend(hits)
    if case == "odd-n":
        cells, hits = _consequence_cells(n_max, skip)
        checked += cells
        bad.extend(hits)

    grid = {"m_max": m_max, "n_max": n_max, "j_max": j_max}
    if prior is None:
        frontier = {
            "case": case,
            "verified": dict(grid),
            "counterexamples": list(bad),
        }
    else:
        old_box = prior["verified"]
        keys = ("m_max", "n_max", "j_max")
        if all(grid[k] >= old_box[k] for k in keys):
            box = dict(grid)
        elif all(old_box[k] >= grid[k] for k in keys):
            box = dict(old_box)
        elif _box_cells(case, grid) > _box_cells(case, old_box):
            box = dict(grid)
        else:
            box = dict(old_box)
        frontier = {
            "case": case,
            "verified": box,
            "counterexamples": _merge_counterexamples(prior["counterexamples"], bad),
        }
    if frontier_path:
        _write_frontier(frontier_path, frontier)

    elapsed = int((time.perf_counter() - t0) * 1000)
    return SweepReport(
        case_id=case,
        grid=grid,
        verified_cells=checked,
        counterexamples=bad,
        frontier=frontier,
        elapsed_ms=elapsed,
    )
