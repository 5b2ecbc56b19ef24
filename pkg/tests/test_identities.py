import dataclasses
import json

import pytest

from qkoshy import registry
from qkoshy.errors import DomainError, ScaleLimit, UnknownIdentity

ALL_IDS = [
    "koshy",
    "upeak-label",
    "upeak-gf",
    "lassalle",
    "lassalle-transform",
    "tower-ie",
    "tower-closed",
    "lemma1",
    "lemma2",
    "ballot-lassalle",
    "andrews",
    "t-forms",
    "theorem1-even",
    "theorem1-odd",
    "theorem1-negq",
    "cyclo-div",
    "invT",
    "partheo",
    "iepar",
    "qballot-forms",
    "qballot-koshy",
    "tj-poly",
    "tj-negq",
    "qlucas",
    "maj-catalan",
    "maj-ballot",
    "succ-ranks",
    "brunetti-instance",
]


def test_registry_roster():
    assert registry.list_identities() == ALL_IDS


def test_report_shape_and_pass():
    rep = registry.verify("koshy", bounds={"n": (1, 30)})
    d = rep.to_dict()
    assert set(d) == {
        "identity",
        "params",
        "status",
        "counterexample",
        "cells_checked",
        "elapsed_ms",
    }
    assert d["identity"] == "koshy"
    assert d["status"] == "pass"
    assert d["counterexample"] is None
    assert d["cells_checked"] == 30
    assert d["params"] == {"n": [1, 30]}
    json.dumps(d)  # must be serializable as-is


SMALL_BOUNDS = {
    "koshy": {"n": (1, 40)},
    "upeak-label": {"n": (0, 6), "m": (0, 7)},
    "upeak-gf": {"n": (0, 7)},
    "lassalle": {"n": (1, 12)},
    "lassalle-transform": {"n": (1, 8)},
    "tower-ie": {"n": (1, 6)},
    "tower-closed": {"n": (1, 6), "m": (1, 6)},
    "lemma1": {"n": (1, 5), "m": (1, 5)},
    "lemma2": {"n": (1, 5), "m": (1, 5), "r": (1, 5)},
    "ballot-lassalle": {"n": (1, 5), "r": (0, 2)},
    "andrews": {"n": (1, 15)},
    "t-forms": {"n": (1, 10), "r": (1, 10)},
    "theorem1-even": {"n": (1, 16), "r": (1, 16)},
    "theorem1-odd": {"n": (1, 15), "r": (1, 15)},
    "theorem1-negq": {"r": (1, 8)},
    "cyclo-div": {"n": (2, 12), "r": (1, 12)},
    "invT": {"n": (2, 10)},
    "partheo": {"n": (1, 7), "r": (0, 7)},
    "iepar": {"n": (2, 7), "r": (0, 7)},
    "qballot-forms": {"n": (1, 10), "j": (1, 3)},
    "qballot-koshy": {"n": (1, 10), "j": (1, 3)},
    "tj-poly": {"n": (1, 10), "r": (1, 10), "j": (1, 3)},
    "tj-negq": {"r": (1, 10), "j": (1, 10)},
    "qlucas": {"m": (0, 12), "k": (0, 12), "d": (2, 5)},
    "maj-catalan": {"n": (0, 7)},
    "maj-ballot": {"n": (1, 5), "j": (1, 3)},
    "succ-ranks": {"n": (1, 5), "j": (1, 3)},
    "brunetti-instance": {"n": (2, 15), "r": (1, 15)},
}


@pytest.mark.parametrize("ident", ALL_IDS)
def test_rows_pass_on_reduced_grids(ident):
    rep = registry.verify(ident, bounds=SMALL_BOUNDS[ident])
    assert rep.status == "pass", rep.to_dict()
    assert rep.cells_checked > 0


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        registry.verify("no-such-id")


def test_bad_parameter_name():
    with pytest.raises(DomainError):
        registry.verify("koshy", bounds={"j": (1, 2)})


def test_scale_cap_and_force():
    bounds = {"m": (0, 5), "k": (0, 5), "d": (2, 45)}
    with pytest.raises(ScaleLimit):
        registry.verify("qlucas", bounds=bounds)
    rep = registry.verify("qlucas", bounds=bounds, force=True)
    assert rep.status == "pass" and rep.cells_checked == 924


def test_skipped_on_empty_cell_set():
    rep = registry.verify("brunetti-instance", bounds={"n": (2, 2), "r": (5, 5)})
    assert rep.status == "skipped"
    assert rep.cells_checked == 0
    assert rep.counterexample is None


def test_forced_failure_is_reported(monkeypatch):
    orig = registry.CHECKS["koshy"]

    def bad(n):
        if n == 7:
            return {"left": "1", "right": "0", "diff": "1"}
        return None

    monkeypatch.setitem(registry.CHECKS, "koshy", dataclasses.replace(orig, checker=bad))
    rep = registry.verify("koshy", bounds={"n": (1, 20)})
    assert rep.status == "fail"
    assert rep.counterexample == {
        "cell": {"n": 7},
        "left": "1",
        "right": "0",
        "diff": "1",
    }
    # the run stops at the first counterexample in sorted cell order
    assert rep.cells_checked == 7


def test_checker_exception_becomes_failure(monkeypatch):
    orig = registry.CHECKS["koshy"]

    def boom(n):
        if n == 3:
            raise DomainError("synthetic")
        return None

    monkeypatch.setitem(registry.CHECKS, "koshy", dataclasses.replace(orig, checker=boom))
    rep = registry.verify("koshy", bounds={"n": (1, 5)})
    assert rep.status == "fail"
    assert rep.counterexample["cell"] == {"n": 3}
    assert rep.counterexample["left"] == "exception"
    assert "synthetic" in rep.counterexample["diff"]


def test_jobs_determinism():
    a = registry.verify("lemma1", bounds={"n": (1, 5), "m": (1, 5)}, jobs=1).to_dict()
    b = registry.verify("lemma1", bounds={"n": (1, 5), "m": (1, 5)}, jobs=3).to_dict()
    a.pop("elapsed_ms")
    b.pop("elapsed_ms")
    assert a == b


def test_csv_rendering():
    rep = registry.verify("koshy", bounds={"n": (1, 5)})
    row = registry.report_csv_row(rep)
    assert row.startswith("koshy,")
    assert registry.CSV_HEADER.count(",") == row.count(",") or '"' in row
    # a failing report renders the counterexample fields
    fake = dataclasses.replace(
        rep,
        status="fail",
        counterexample={"cell": {"n": 2}, "left": "a,b", "right": "c", "diff": "d"},
    )
    frow = registry.report_csv_row(fake)
    assert '"a,b"' in frow
    assert ',fail,' in frow
    assert frow.startswith('koshy,"{""n"": [1, 5]}",fail,')
