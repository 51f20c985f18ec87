import json

import pytest

from birat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_analyze_quadratic_cremona(capsys):
    rep = run_json(capsys, "analyze", "corpus:std-quadratic")
    assert rep["birational"] and rep["inverse"]["degree"] == 2


def test_analyze_gabber(capsys):
    rep = run_json(capsys, "analyze", "corpus:gabber-n3-d2", "--r_max", "2")
    assert rep["inverse"]["degree"] == 4
    assert len(rep["invariants"]["f_values"]) == 2


def test_rees_veronese(capsys):
    out = run_json(capsys, "rees", "corpus:veronese")
    assert out["relation_type"] == 2
    assert sorted(map(tuple, out["bidegrees"])) == [(0, 2), (1, 1), (1, 1)]


def test_betti_terai(capsys):
    out = run_json(capsys, "betti", "corpus:terai", "--power", "1")
    assert out["linear"] and out["regularity"] == 3
    assert [(e["i"], e["j"], e["beta"]) for e in out["betti"]] == [(0, 3, 10), (1, 4, 15), (2, 5, 6)]
    out = run_json(capsys, "betti", "corpus:terai", "--power", "2")
    assert out["regularity"] == 7 and out["depth"] == 0


def test_oracle_matches_analyze(capsys):
    out = run_json(capsys, "oracle", "corpus:std-quadratic")
    rep = run_json(capsys, "analyze", "corpus:std-quadratic")
    assert out["birational"] is True is rep["birational"]
    assert out["elementary_divisors"] == [1, 1]


def test_inverse_and_bounds(capsys):
    out = run_json(capsys, "inverse", "corpus:squares-p1")
    assert out["birational"] is False and out["inverse"] is None
    out = run_json(capsys, "inverse", "corpus:cubic-dejonquieres")
    assert out["inverse"]["verified"] and out["inverse"]["degree"] == 3
    out = run_json(capsys, "bounds", "corpus:std-quadratic")
    assert {e["id"] for e in out["ledger"]} >= {"MR", "B22", "CRE_N2"}


def test_map_file_and_field_override(capsys, tmp_path):
    p = tmp_path / "map.json"
    p.write_text(json.dumps({"field": "Q", "variables": ["x", "y", "z"], "forms": ["y*z", "x*z", "x*y"]}))
    rep = run_json(capsys, "analyze", str(p), "--field-override", "Fp:32003")
    assert rep["map"]["field"] == "Fp:32003" and rep["birational"]


def test_input_errors_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 2 and err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "analyze", str(bad))[0] == 2
    bad.write_text(json.dumps({"variables": ["x", "y"], "forms": ["x +* y", "y"]}))
    assert run(capsys, "analyze", str(bad))[0] == 2
    assert run(capsys, "analyze", "corpus:nope")[0] == 2
    assert run(capsys, "analyze", "corpus:std-quadratic", "--field-override", "Fp:10")[0] == 2


def test_budget_exit_3(capsys):
    code, out, err = run(capsys, "analyze", "corpus:gabber-n3-d3", "--budget", "1")
    assert code == 3 and out == "" and "resource limit" in err


def test_failed_ledger_still_exits_0(capsys):
    rep = run_json(capsys, "analyze", "corpus:quintic-dejonquieres")
    assert rep["invariants"]["rees_cm"] is False


def test_deterministic_bytes(capsys):
    a = run(capsys, "analyze", "corpus:veronese", "--seed", "7")
    b = run(capsys, "analyze", "corpus:veronese", "--seed", "7")
    assert a == b
    assert json.loads(a[1])["invariants"]["reduction_number"]["seed"] == 7


def test_jobs_matches_serial(capsys):
    maps = ["corpus:std-quadratic", "corpus:veronese", "corpus:squares-p1"]
    serial = run(capsys, "oracle", *maps[:1], "corpus:identity-n2")
    parallel = run(capsys, "oracle", *maps[:1], "corpus:identity-n2", "--jobs", "2")
    assert serial == parallel
    out = run_json(capsys, "analyze", *maps, "--jobs", "2")
    assert list(out) == maps
    assert [out[m]["birational"] for m in maps] == [True, True, False]


def test_usage_errors():
    with pytest.raises(SystemExit):
        main(["frobnicate", "corpus:veronese"])
    with pytest.raises(SystemExit):
        main(["analyze"])


def test_corpus_all(capsys):
    from birat.corpus import corpus_names
    out = run_json(capsys, "rees", "corpus:all")
    assert list(out) == [f"corpus:{n}" for n in corpus_names()]
    assert out["corpus:veronese"]["relation_type"] == 2
