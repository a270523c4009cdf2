import json

import pytest

from cosetsemi import report as rp
from cosetsemi.catalog import Catalog, CatalogEntry
from cosetsemi.errors import UnknownSuite
from cosetsemi.suites import Options, SUITES, Workspace, describe_group, reconstruction_pairs, run_suite

from conftest import group


def cat(*specs):
    return Catalog([CatalogEntry(s, s) for s in specs])


def by_group(reports):
    return {r.groups: r for r in reports}


def test_counting_row_for_klein_four():
    reps = by_group(run_suite("counting", cat("C2xC2", "C6", "S3", "Q8")))
    row = reps[("C2xC2",)]
    assert row.verdict == rp.PASS and row.evidence["sigma"] == 8 and row.evidence["J"] == [2]
    assert reps[("S3",)].reason == rp.HYPOTHESIS_FAILED
    assert reps[("Q8",)].reason == rp.DEGENERATE


def test_units_dual_rows():
    reps = by_group(run_suite("units-dual", cat("C2xC2", "C6", "S3", "Q8", "C5")))
    assert reps[("C2xC2",)].evidence["sigma_bruteforce"] == 8
    assert reps[("C6",)].evidence["sigma_tuples"] == 6
    assert reps[("S3",)].verdict == rp.SKIPPED and reps[("S3",)].reason == rp.HYPOTHESIS_FAILED
    assert reps[("Q8",)].reason == rp.DEGENERATE
    assert reps[("C5",)].reason == rp.DEGENERATE


def test_abelian_char():
    reps = run_suite("abelian-char", cat("C6", "Q8", "S3", "D8"))
    assert all(r.verdict == rp.PASS for r in reps)


def test_corrupted_cayley_file_is_skipped(tmp_path):
    g = group("S3")
    rows = [list(r) for r in g.rows]
    rows[2][3], rows[2][4] = rows[2][4], rows[2][3]
    bad = tmp_path / "bad.txt"
    bad.write_text(f"{g.order}\n" + "\n".join(" ".join(map(str, r)) for r in rows) + "\n")
    catalog = Catalog([CatalogEntry("bad", f"file:{bad}"), CatalogEntry("C6", "C6")])
    reps = by_group(run_suite("axioms", catalog))
    assert reps[("bad",)].verdict == rp.SKIPPED and reps[("bad",)].reason == rp.BUILD_ERROR
    assert "AxiomError" in reps[("bad",)].evidence["error"]
    assert reps[("C6",)].verdict == rp.PASS


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope", cat("C6"))


def test_reconstruction_examples():
    reps = by_group(reconstruction_pairs([Workspace(CatalogEntry(s, s), Options()) for s in
                                          ("C6", "C2xC3", "C4xC2", "C2xC2xC2", "Q8", "C8")], Options()))
    assert reps[("C6", "C2xC3")].evidence["k1_isomorphic"] is True
    assert reps[("C4xC2", "C2xC2xC2")].evidence["k1_isomorphic"] is False
    assert reps[("Q8", "C8")].evidence["k1_isomorphic"] is False
    assert all(r.verdict == rp.PASS for r in reps.values())
    assert ("C6", "C6'") in reps


def test_pairs_need_a_shared_theorem():
    reps = by_group(reconstruction_pairs([Workspace(CatalogEntry(s, s), Options()) for s in ("S3", "A4")], Options()))
    assert ("S3", "A4") not in reps


def test_theorem_tags():
    tags = lambda s: Workspace(CatalogEntry(s, s), Options()).theorems
    assert "omega-p" in tags("Q8") and "metacyclic-p" in tags("Q8")
    assert "permutable-connected" in tags("C12")
    assert "omega-p2-odd" in tags("C3xC3")
    assert tags("C5") == []
    assert tags("S3") == []


def test_json_is_deterministic():
    c = cat("C2xC2", "S3", "C4")
    a = rp.to_json("all", run_suite("all", c))
    b = rp.to_json("all", run_suite("all", c))
    assert a == b
    doc = json.loads(a)
    assert doc["schema"] == 1 and doc["suite"] == "all"
    entry = doc["entries"][0]
    assert {"groups", "verdict", "evidence", "suite"} <= set(entry)


def test_every_suite_runs():
    c = cat("C2xC2", "C6", "S3", "C5")
    for name in SUITES:
        reps = run_suite(name, c)
        assert reps and all(r.suite == name for r in reps)


def test_exit_codes():
    ok = rp.passed("x", ["G"])
    assert rp.exit_code([ok, rp.skipped("x", ["G"], rp.BUDGET)]) == 0
    assert rp.exit_code([ok, rp.inconclusive("x", ["G"])]) == 3
    assert rp.exit_code([rp.inconclusive("x", ["G"]), rp.failed("x", ["G"], 1)]) == 1


def test_describe_examples():
    d = describe_group("C2xC2").evidence
    assert d["sigma"] == 8 and d["J_per_anchor"] == [2, 2, 2]
    assert d["eta_injective"] and not d["eta_surjective"]
    d = describe_group("Q8").evidence
    assert d["minimal_subgroups"] == 1 and d["J_per_anchor"] == "degenerate" and d["K1_abelian"]
    d = describe_group("C12").evidence
    assert d["sigma"] == 12 and d["J_per_anchor"] == [1, 1]
    assert d["eta_injective"] and d["eta_surjective"]


def test_budget_env(monkeypatch):
    monkeypatch.setenv("COSETSEMI_BUDGET", "2.5")
    assert Options().budget == 2.5
