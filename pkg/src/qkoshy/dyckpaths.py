"""Dyck-path enumeration, tower coloring, and the two label-moving bijections.

Paths are U/D strings.  An elevated path is U + inner + D where the inner
part is itself a Dyck word; statistics (peaks, up-peaks, U-steps, major
index) are always computed on the string as given, while towers live on
the inner part.  Tower records use inner-path indices; U-step labels use
whole-path indices, so the elevating first U-step is addressable as 0.

Coloring runs in one left-to-right pass.  A tower is colored when its
immediately preceding element is a U-step (the elevating step included)
or an uncolored tower.  The "frozen" variant, kept for the adjudication
test, instead asks whether the preceding tower was uncolored after the
U-step rule alone; on chains of three or more height-1 towers the two
disagree, and only the sequential reading reproduces the labeled-path
counts, so sequential is the default everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import DomainError, InvariantViolation, MalformedLabel, ScaleLimit
from .poly import Poly
from .qfuncs import narayana_poly

SCALE_LIMIT = 14


def _check_scale(n: int, force: bool) -> None:
    if n > SCALE_LIMIT and not force:
        raise ScaleLimit(
            "n=%d exceeds enumeration guard %d (pass force to override)"
            % (n, SCALE_LIMIT)
        )


def is_dyck(word: str) -> bool:
    h = 0
    for c in word:
        if c == "U":
            h += 1
        elif c == "D":
            h -= 1
            if h < 0:
                return False
        else:
            return False
    return h == 0


def is_elevated(word: str) -> bool:
    return len(word) >= 2 and word[0] == "U" and word[-1] == "D" and is_dyck(word[1:-1])


def iter_dyck(n: int, force: bool = False):
    """All Dyck words with n U-steps, in lexicographic order (U < D)."""
    if n < 0:
        raise DomainError("need n >= 0")
    _check_scale(n, force)
    if n == 0:
        yield ""
        return
    word = []

    def rec(ups, downs, h):
        if ups == 0 and downs == 0:
            yield "".join(word)
            return
        if ups:
            word.append("U")
            yield from rec(ups - 1, downs, h + 1)
            word.pop()
        if downs and h:
            word.append("D")
            yield from rec(ups, downs - 1, h - 1)
            word.pop()

    yield from rec(n, n, 0)


def iter_elevated(n: int, force: bool = False):
    """Elevated paths U + inner + D over all inner Dyck words with n U-steps."""
    for inner in iter_dyck(n, force):
        yield "U" + inner + "D"


def iter_ballot_tuples(n: int, r: int, force: bool = False):
    """(r+1)-tuples of Dyck words with n U-steps in total."""
    if n < 0 or r < 0:
        raise DomainError("need n, r >= 0")
    _check_scale(n, force)
    if r == 0:
        for p in iter_dyck(n, force):
            yield (p,)
        return
    for k in range(n + 1):
        for head in iter_dyck(k, force):
            for tail in iter_ballot_tuples(n - k, r - 1, force):
                yield (head,) + tail


def iter_ballot_paths(n: int, j: int, force: bool = False):
    """Lattice paths with n U-steps and n+j-1 D-steps never going below
    -(j-1), lexicographic."""
    if n < 0 or j < 1:
        raise DomainError("need n >= 0 and j >= 1")
    _check_scale(n, force)
    word = []

    def rec(ups, downs, h):
        if ups == 0 and downs == 0:
            yield "".join(word)
            return
        if downs and h > -(j - 1):
            word.append("D")
            yield from rec(ups, downs - 1, h - 1)
            word.pop()
        if ups:
            word.append("U")
            yield from rec(ups - 1, downs, h + 1)
            word.pop()

    yield from rec(n, n + j - 1, 0)


def major_index(word: str) -> int:
    """Sum of 1-based positions i with step i = D and step i+1 = U."""
    return sum(i + 1 for i in range(len(word) - 1) if word[i] == "D" and word[i + 1] == "U")


@dataclass(frozen=True)
class Tower:
    """Maximal pyramid factor U^h D^h of the inner path.

    start and bottom_index are inner-path step indices; bottom_index is
    set only for height >= 2 (it equals start, the first U-step).
    """

    start: int
    height: int
    colored: bool
    bottom_index: int | None

    @property
    def end(self) -> int:
        return self.start + 2 * self.height - 1


def _tower_spans(inner: str):
    """(start, height) of each maximal pyramid, left to right.

    At every boundary between a U-run of length a and a D-run of length
    b the unique maximal pyramid has height min(a, b) and occupies the
    last min(a, b) U's and the first min(a, b) D's.
    """
    spans = []
    i = 0
    m = len(inner)
    while i < m:
        if inner[i] == "U":
            a = 1
            while i + a < m and inner[i + a] == "U":
                a += 1
            jdx = i + a
            b = 0
            while jdx + b < m and inner[jdx + b] == "D":
                b += 1
            h = min(a, b)
            spans.append((jdx - h, h))
            i = jdx + b
        else:
            i += 1
    return spans


def decompose_towers(inner: str, coloring: str = "sequential"):
    """Tower decomposition of an inner Dyck word, with the elevating
    U-step of the surrounding elevated path counted as a predecessor."""
    if coloring not in ("sequential", "frozen"):
        raise DomainError("coloring must be 'sequential' or 'frozen'")
    spans = _tower_spans(inner)
    towers = []
    step1 = []
    colored = []
    for k, (s, h) in enumerate(spans):
        if s == 0:
            by_step1 = True          # follows the elevating U-step
        elif inner[s - 1] == "U":
            by_step1 = True
        else:
            by_step1 = False
        follows_prev = k > 0 and spans[k - 1][0] + 2 * spans[k - 1][1] == s
        if by_step1:
            c = True
        elif follows_prev:
            prev_uncolored = (not colored[k - 1]) if coloring == "sequential" else (not step1[k - 1])
            c = prev_uncolored
        else:
            c = False
        step1.append(by_step1)
        colored.append(c)
        towers.append(Tower(s, h, c, s if h >= 2 else None))
    return tuple(towers)


@dataclass(frozen=True)
class PathStats:
    peaks: int
    up_peaks: int
    u_steps: int
    uu_steps: int
    maj: int
    towers: tuple[Tower, ...] | None


def analyze(path: str, elevated: bool = False, coloring: str = "sequential") -> PathStats:
    """Statistics of a Dyck word; tower decomposition when elevated."""
    if elevated:
        if not is_elevated(path):
            raise DomainError("not an elevated Dyck path: %r" % path)
    elif not is_dyck(path):
        raise DomainError("not a Dyck path: %r" % path)
    peaks = up = uu = 0
    for i in range(len(path) - 1):
        if path[i] == "U":
            if path[i + 1] == "D":
                peaks += 1
                if i > 0 and path[i - 1] == "U":
                    up += 1
            else:
                uu += 1
    towers = None
    if elevated:
        towers = decompose_towers(path[1:-1], coloring)
        if len(path) > 2 and not any(t.colored for t in towers):
            raise InvariantViolation("elevated path %r has no colored tower" % path)
    return PathStats(
        peaks=peaks,
        up_peaks=up,
        u_steps=path.count("U"),
        uu_steps=uu,
        maj=major_index(path),
        towers=towers,
    )


@lru_cache(maxsize=16)
def _elevated_stats(n: int, coloring: str = "sequential"):
    """(up_peaks, u_steps, colored_towers, peaks) per elevated path over
    inner words with n U-steps.  Cached; bounded by the scale guard."""
    out = []
    for p in iter_elevated(n):
        st = analyze(p, elevated=True, coloring=coloring)
        out.append((st.up_peaks, st.u_steps, sum(t.colored for t in st.towers), st.peaks))
    return tuple(out)


_SELECTOR_INDEX = {"up-peaks": 0, "U-steps": 1, "colored-towers": 2}


def labeled_gen(
    n: int,
    selector: str,
    m: int,
    weight: str = "unit",
    coloring: str = "sequential",
) -> Poly:
    """Sum over elevated paths of binom(#selector-elements, m) times the
    weight, which is 1 or q^peaks."""
    if selector not in _SELECTOR_INDEX:
        raise DomainError("unknown selector %r" % selector)
    if weight not in ("unit", "peak-weight-q"):
        raise DomainError("unknown weight %r" % weight)
    if n < 0 or m < 0:
        raise DomainError("need n, m >= 0")
    _check_scale(n, False)
    idx = _SELECTOR_INDEX[selector]
    acc: dict[int, int] = {}
    for row in _elevated_stats(n, coloring):
        c = comb(row[idx], m)
        if not c:
            continue
        k = row[3] if weight == "peak-weight-q" else 0
        acc[k] = acc.get(k, 0) + c
    if not acc:
        return Poly.zero()
    top = max(acc)
    return Poly._raw(tuple(acc.get(i, 0) for i in range(top + 1)))


def distribution(n: int, selector: str, coloring: str = "sequential") -> Poly:
    """Ordinary generating polynomial of the selector count over elevated
    paths: coefficient of q^k is the number of paths with k elements."""
    if selector not in _SELECTOR_INDEX:
        raise DomainError("unknown selector %r" % selector)
    _check_scale(n, False)
    idx = _SELECTOR_INDEX[selector]
    acc: dict[int, int] = {}
    for row in _elevated_stats(n, coloring):
        acc[row[idx]] = acc.get(row[idx], 0) + 1
    top = max(acc)
    return Poly._raw(tuple(acc.get(i, 0) for i in range(top + 1)))


@lru_cache(maxsize=None)
def _peak_dist(k: int) -> Poly:
    """Peak-count polynomial of single Dyck paths: 1 for k = 0, else
    q times the Narayana polynomial."""
    if k == 0:
        return Poly.one()
    return narayana_poly(k).shift(1)


@lru_cache(maxsize=None)
def ballot_weighted_gen(n: int, r: int) -> Poly:
    """Peak generating polynomial over (r+1)-tuples of Dyck paths with n
    U-steps in total."""
    if n < 0 or r < 0:
        raise DomainError("need n, r >= 0")
    if r == 0:
        return _peak_dist(n)
    out = Poly.zero()
    for k in range(n + 1):
        out = out + _peak_dist(k) * ballot_weighted_gen(n - k, r - 1)
    return out


# -- labeled paths and the two bijections -----------------------------


@dataclass(frozen=True)
class LabeledPath:
    """An elevated path with labeled statistic elements.

    kind "towers": s_labels (and w_labels) are tower start indices in
    the inner path.  kind "usteps": s_labels are U-step indices in the
    whole path, 0 being the elevating step.
    """

    path: str
    kind: str
    s_labels: tuple[int, ...]
    w_labels: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("towers", "usteps"):
            raise MalformedLabel("unknown label kind %r" % self.kind)
        if len(set(self.s_labels)) != len(self.s_labels):
            raise MalformedLabel("duplicate s-labels")
        if not set(self.w_labels) <= set(self.s_labels):
            raise MalformedLabel("w-labels must be a subset of s-labels")
        object.__setattr__(self, "s_labels", tuple(sorted(self.s_labels)))
        object.__setattr__(self, "w_labels", tuple(sorted(self.w_labels)))


def _tower_map(path: str, coloring: str = "sequential"):
    towers = decompose_towers(path[1:-1], coloring)
    return towers, {t.start: t for t in towers}


def _require_labeled_colored_towers(lp: LabeledPath, coloring: str):
    if lp.kind != "towers":
        raise MalformedLabel("expected tower labels, got %r" % lp.kind)
    if not is_elevated(lp.path):
        raise MalformedLabel("label carrier is not an elevated path")
    towers, tmap = _tower_map(lp.path, coloring)
    for s in lp.s_labels:
        t = tmap.get(s)
        if t is None:
            raise MalformedLabel("no tower starts at inner index %d" % s)
        if not t.colored:
            raise MalformedLabel("tower at inner index %d is not colored" % s)
    return towers, tmap


def lemma1_forward(lp: LabeledPath, coloring: str = "sequential") -> LabeledPath:
    """Move m labels from colored towers to U-steps, shrinking the path
    by one U and one D per label.

    Height-1 towers after a U-step are deleted and the preceding U-step
    takes the label; height-1 towers after an uncolored tower transfer
    the label to that tower's peak U-step; taller towers lose their
    outer U and D and keep the label on the shrunken pyramid's peak.
    Each labeled tower is classified by its surroundings in the input
    path, then all edits are applied at once; the label targets are
    pairwise distinct and disjoint from every edited span.
    """
    towers, tmap = _require_labeled_colored_towers(lp, coloring)
    index_of = {t.start: k for k, t in enumerate(towers)}
    inner = lp.path[1:-1]
    deleted: list[int] = []
    targets: list[int] = []      # inner indices of target U-steps; -1 = elevating U
    for s in lp.s_labels:
        t = tmap[s]
        if t.height == 1:
            prev_is_ustep = t.start == 0 or inner[t.start - 1] == "U"
            if prev_is_ustep:
                deleted += [t.start, t.start + 1]
                targets.append(t.start - 1)     # -1 when it is the elevating U
            else:
                t1 = towers[index_of[t.start] - 1]
                deleted += [t.start, t.start + 1]
                targets.append(t1.start + t1.height - 1)
        else:
            deleted += [t.start, t.end]
            targets.append(t.start + t.height - 1)
    dset = sorted(deleted)
    new_inner = "".join(c for i, c in enumerate(inner) if i not in set(dset))

    def shifted(i: int) -> int:
        if i < 0:
            return -1
        drop = 0
        for d in dset:
            if d < i:
                drop += 1
        return i - drop

    labels = tuple(shifted(t) + 1 for t in targets)
    return LabeledPath("U" + new_inner + "D", "usteps", labels)


def lemma1_inverse(lp: LabeledPath, coloring: str = "sequential") -> LabeledPath:
    """Rebuild the tower-labeled path from a U-step-labeled one.

    Labels are processed left to right and each one is classified on the
    path as edited so far: at that moment the prefix already agrees with
    the source path, so tower colors seen locally match the source.  A
    labeled U-step followed by U regains a height-1 tower right after
    it; one followed by D is the peak of a tower, which is wrapped in
    U...D if colored and followed by a new height-1 tower if not.
    """
    if lp.kind != "usteps":
        raise MalformedLabel("expected U-step labels, got %r" % lp.kind)
    if not is_elevated(lp.path):
        raise MalformedLabel("label carrier is not an elevated path")
    cur = lp.path
    pending = list(lp.s_labels)
    out_towers: list[int] = []
    shift = 0
    for orig in pending:
        u = orig + shift
        if orig < 0 or u >= len(cur) or cur[u] != "U":
            raise MalformedLabel("label %d is not a U-step" % orig)
        if cur[u + 1] == "U":
            cur = cur[: u + 1] + "UD" + cur[u + 1 :]
            out_towers.append(u)         # inner index of the inserted tower
            shift += 2
            continue
        inner = cur[1:-1]
        if not inner:
            cur = "UUDD"
            out_towers.append(0)
            shift += 2
            continue
        towers = decompose_towers(inner, coloring)
        u_inner = u - 1
        t = next((x for x in towers if x.start <= u_inner <= x.end), None)
        if t is None or t.start + t.height - 1 != u_inner:
            raise MalformedLabel("label %d is not a peak U-step" % orig)
        if t.colored:
            s_el, e_el = t.start + 1, t.end + 1
            cur = cur[:s_el] + "U" + cur[s_el : e_el + 1] + "D" + cur[e_el + 1 :]
            out_towers.append(t.start)
        else:
            pos = t.end + 2              # whole-path position right after t
            cur = cur[:pos] + "UD" + cur[pos:]
            out_towers.append(t.end + 1)
        shift += 2
    return LabeledPath(cur, "towers", tuple(out_towers))


def lemma2_forward(lp: LabeledPath, coloring: str = "sequential") -> LabeledPath:
    """Shrink every s,w-labeled tower by its bottom U-step and one
    D-step, keeping both labels on the shrunken tower."""
    towers, tmap = _require_labeled_colored_towers(lp, coloring)
    for s in lp.w_labels:
        if tmap[s].height < 2:
            raise MalformedLabel("w-label on height-1 tower at %d" % s)
    inner = lp.path[1:-1]
    dset = sorted(d for s in lp.w_labels for d in (tmap[s].start, tmap[s].end))
    new_inner = "".join(c for i, c in enumerate(inner) if i not in set(dset))

    def shifted(i: int) -> int:
        return i - sum(1 for d in dset if d < i)

    s_labels = []
    for s in lp.s_labels:
        s_labels.append(shifted(s + 1) if s in lp.w_labels else shifted(s))
    w_labels = tuple(shifted(s + 1) for s in lp.w_labels)
    return LabeledPath("U" + new_inner + "D", "towers", tuple(s_labels), w_labels)


def lemma2_inverse(lp: LabeledPath, coloring: str = "sequential") -> LabeledPath:
    """Wrap every s,w-labeled tower as U tower D, the new bottom carrying
    the w-label."""
    towers, tmap = _require_labeled_colored_towers(lp, coloring)
    inserts = sorted(lp.w_labels, reverse=True)
    cur = lp.path
    for s in inserts:
        t = tmap[s]
        s_el, e_el = t.start + 1, t.end + 1
        cur = cur[:s_el] + "U" + cur[s_el : e_el + 1] + "D" + cur[e_el + 1 :]

    def shifted(i: int) -> int:
        # the wrap around a tower starting at w inserts its U exactly at
        # the old start, so only wraps strictly to the left displace i
        return i + sum(2 for s in lp.w_labels if s < i)

    s_labels = tuple(shifted(s) for s in lp.s_labels)
    w_labels = tuple(shifted(s) for s in lp.w_labels)
    return LabeledPath(cur, "towers", s_labels, w_labels)
