from math import comb

import pytest

from qkoshy.dyckpaths import (
    LabeledPath,
    Tower,
    analyze,
    ballot_weighted_gen,
    decompose_towers,
    distribution,
    is_dyck,
    is_elevated,
    iter_ballot_paths,
    iter_ballot_tuples,
    iter_dyck,
    iter_elevated,
    labeled_gen,
    lemma1_forward,
    lemma1_inverse,
    lemma2_forward,
    lemma2_inverse,
    major_index,
)
from qkoshy.errors import DomainError, InvariantViolation, MalformedLabel, ScaleLimit
from qkoshy.poly import Poly
from qkoshy.qfuncs import ballot_number, catalan, q_ballot, q_catalan


def test_predicates():
    assert is_dyck("")
    assert is_dyck("UUDD") and is_dyck("UDUD")
    assert not is_dyck("DU") and not is_dyck("UUD") and not is_dyck("UDX")
    assert is_elevated("UUDD") and is_elevated("UD")
    assert not is_elevated("UDUD") and not is_elevated("")


def test_enumeration_counts_and_order():
    for n in range(8):
        assert sum(1 for _ in iter_dyck(n)) == catalan(n)
    assert list(iter_dyck(0)) == [""]
    assert list(iter_dyck(3)) == ["UUUDDD", "UUDUDD", "UUDDUD", "UDUUDD", "UDUDUD"]
    # elevated paths wrap a Dyck path one size down
    assert list(iter_elevated(2)) == ["UUUDDD", "UUDUDD"]
    for n in range(7):
        assert sum(1 for _ in iter_elevated(n)) == catalan(n)
    with pytest.raises(ScaleLimit):
        list(iter_dyck(15))
    assert is_dyck(next(iter(iter_dyck(15, force=True))))


def test_ballot_enumerations():
    for n in range(1, 6):
        for r in range(4):
            tuples = list(iter_ballot_tuples(n, r))
            assert len(tuples) == ballot_number(n, r), (n, r)
            for t in tuples:
                assert len(t) == r + 1
                assert sum(len(p) for p in t) == 2 * n
                assert all(is_dyck(p) for p in t)
    for n in range(1, 6):
        for j in range(1, 5):
            paths = list(iter_ballot_paths(n, j))
            assert len(paths) == ballot_number(n, j - 1), (n, j)


def test_major_index_distributions():
    # maj over Dyck paths is the q-Catalan number; this is the brute side
    for n in range(7):
        acc = {}
        for p in iter_dyck(n):
            k = major_index(p)
            acc[k] = acc.get(k, 0) + 1
        got = Poly(*[acc.get(i, 0) for i in range(max(acc) + 1)]) if acc else Poly.one()
        assert got == q_catalan(n), n
    assert major_index("UDUD") == 2
    assert major_index("UUDD") == 0


def test_major_index_ballot():
    for n in range(1, 6):
        for j in range(1, 5):
            acc = {}
            for p in iter_ballot_paths(n, j):
                k = major_index(p)
                acc[k] = acc.get(k, 0) + 1
            got = Poly(*[acc.get(i, 0) for i in range(max(acc) + 1)])
            assert got == q_ballot(j, n), (n, j)


def test_analyze_frozen_example():
    st = analyze("UUUDDUDUDD", elevated=True)
    assert st.peaks == 3
    assert st.up_peaks == 1
    assert st.u_steps == 5
    assert st.uu_steps == 2
    assert [(t.start, t.height, t.colored) for t in st.towers] == [
        (0, 2, True),
        (4, 1, False),
        (6, 1, True),
    ]


def test_analyze_smallest_paths():
    st = analyze("UD", elevated=True)
    assert st.towers == () and st.u_steps == 1 and st.uu_steps == 0
    st = analyze("UUDD", elevated=True)
    assert [(t.start, t.height, t.colored) for t in st.towers] == [(0, 1, True)]
    with pytest.raises(DomainError):
        analyze("UDUD", elevated=True)
    with pytest.raises(DomainError):
        analyze("UDX")


def test_usteps_split_into_uu_and_towers():
    for n in range(1, 8):
        for p in iter_elevated(n):
            st = analyze(p, elevated=True)
            assert st.u_steps == st.uu_steps + len(st.towers), p
            if len(p) > 2:
                assert len(st.towers) >= 1
                assert any(t.colored for t in st.towers), p


def test_tower_coloring_rules():
    # a tower is colored iff its predecessor is a U-step (the elevating one
    # counts) or an uncolored tower ending right before it
    for n in range(1, 8):
        for p in iter_elevated(n):
            inner = p[1:-1]
            for t in analyze(p, elevated=True).towers:
                if t.colored:
                    if t.start == 0:
                        continue  # preceded by the elevating U
                    prev = inner[t.start - 1]
                    if prev == "U":
                        continue
                    found = False
                    for u in analyze(p, elevated=True).towers:
                        if u.end == t.start - 1 and not u.colored:
                            found = True
                    assert found, (p, t)


def test_labeled_gen_frozen_spots():
    # n = 3: all six statistics-choose-1 sums match hand counts
    assert labeled_gen(3, "up-peaks", 1)(1) == 6
    assert labeled_gen(3, "colored-towers", 1)(1) == 6
    assert labeled_gen(3, "U-steps", 1)(1) == 20
    assert labeled_gen(0, "up-peaks", 0) == Poly.one()
    assert labeled_gen(0, "up-peaks", 1) == Poly.zero()
    with pytest.raises(DomainError):
        labeled_gen(3, "nope", 1)
    with pytest.raises(DomainError):
        labeled_gen(3, "up-peaks", 1, weight="heavy")


def test_label_count_identity():
    # choosing m marked up-peaks or m marked colored towers both count
    # binom(n-m+1, m) * catalan(n-m); marked U-steps count binom(n+1, m) * catalan(n)
    for n in range(0, 8):
        for m in range(0, n + 2):
            want = comb(n - m + 1, m) * catalan(n - m) if m <= n else 0
            assert labeled_gen(n, "up-peaks", m)(1) == want, (n, m, "up-peaks")
            assert labeled_gen(n, "colored-towers", m)(1) == want, (n, m, "towers")
            assert labeled_gen(n, "U-steps", m)(1) == comb(n + 1, m) * catalan(n)


def test_frozen_coloring_fails_adjudication():
    # the step-once coloring variant breaks the count identity at n=4, m=1;
    # keeping it available documents why the sequential rule is the right one
    n, m = 4, 1
    want = comb(n - m + 1, m) * catalan(n - m)
    assert labeled_gen(n, "colored-towers", m, coloring="frozen")(1) != want
    for nn in range(1, 4):
        assert (
            labeled_gen(nn, "colored-towers", 1, coloring="frozen")(1)
            == comb(nn, 1) * catalan(nn - 1)
        )


def test_distribution_consistency():
    for n in range(0, 7):
        d = distribution(n, "up-peaks")
        assert d(1) == catalan(n)
        # peak-weighted m=1 sum equals sum over paths of up_peaks * q^peaks
        acc = {}
        for p in iter_elevated(n):
            st = analyze(p, elevated=True)
            acc[st.peaks] = acc.get(st.peaks, 0) + st.up_peaks
        want = Poly(*[acc.get(i, 0) for i in range(max(acc) + 1)]) if acc else Poly.zero()
        assert labeled_gen(n, "up-peaks", 1, weight="peak-weight-q") == want


def test_ballot_weighted_gen():
    assert ballot_weighted_gen(1, 1) == Poly(0, 2)
    for n in range(1, 5):
        for r in range(0, 3):
            acc = {}
            for t in iter_ballot_tuples(n, r):
                k = sum(p.count("UD") for p in t)
                acc[k] = acc.get(k, 0) + 1
            want = Poly(*[acc.get(i, 0) for i in range(max(acc) + 1)])
            assert ballot_weighted_gen(n, r) == want, (n, r)


def lemma1_all_sources(n, m):
    for p in iter_elevated(n):
        st = analyze(p, elevated=True)
        colored = [t.start for t in st.towers if t.colored]
        from itertools import combinations

        for s in combinations(colored, m):
            yield LabeledPath(p, "towers", s)


def test_lemma1_roundtrip_and_counts():
    for n in range(1, 6):
        for m in range(1, n + 1):
            seen = set()
            total = 0
            for lp in lemma1_all_sources(n, m):
                out = lemma1_forward(lp)
                assert out.kind == "usteps" and len(out.s_labels) == m
                back = lemma1_inverse(out)
                assert back == lp, (lp, out, back)
                seen.add((out.path, out.s_labels))
                total += 1
            assert len(seen) == total, (n, m)
            assert total == comb(n - m + 1, m) * catalan(n - m), (n, m)


def test_lemma1_regression_pair():
    src = LabeledPath("UUDUDUDD", "towers", (0, 4))
    img = lemma1_forward(src)
    assert img == LabeledPath("UUDD", "usteps", (0, 1))
    assert lemma1_inverse(img) == src


def test_lemma1_malformed():
    with pytest.raises(MalformedLabel):
        lemma1_forward(LabeledPath("UUUDDD", "usteps", (0,)))
    with pytest.raises(MalformedLabel):
        # inner index 2 is a D-step, not a tower start
        lemma1_forward(LabeledPath("UUUDDD", "towers", (2,)))
    with pytest.raises(MalformedLabel):
        lemma1_inverse(LabeledPath("UUDD", "usteps", (3,)))
    with pytest.raises(MalformedLabel):
        LabeledPath("UUDD", "towers", (0, 0))


def lemma2_all_sources(n, m, r):
    from itertools import combinations

    for p in iter_elevated(n):
        st = analyze(p, elevated=True)
        colored = [t for t in st.towers if t.colored]
        tall = [t.start for t in colored if t.height >= 2]
        for w in combinations(tall, r):
            rest = [t.start for t in colored if t.start not in w]
            for extra in combinations(rest, m - r):
                s = tuple(sorted(w + extra))
                yield LabeledPath(p, "towers", s, w)


def test_lemma2_roundtrip():
    for n in range(1, 6):
        for m in range(1, n + 1):
            for r in range(1, m + 1):
                for lp in lemma2_all_sources(n, m, r):
                    out = lemma2_forward(lp)
                    assert len(out.path) == len(lp.path) - 2 * r
                    back = lemma2_inverse(out)
                    assert back == lp, (lp, out, back)


def test_lemma2_frozen_example():
    # one height-3 tower, shrink it once: UUUUDDDD -> UUUDDD
    src = LabeledPath("UUUUDDDD", "towers", (0,), (0,))
    out = lemma2_forward(src)
    assert out == LabeledPath("UUUDDD", "towers", (0,), (0,))
    assert lemma2_inverse(out) == src


def test_tower_decomposition_direct():
    towers = decompose_towers("UUDDUD")
    assert [(t.start, t.height, t.colored) for t in towers] == [
        (0, 2, True),
        (4, 1, False),
    ]
    assert towers[0].end == 3
    with pytest.raises(DomainError):
        decompose_towers("UUDDUD", "rainbow")
