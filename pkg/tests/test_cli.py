"""Command line driver, exercised through main(argv)."""

import json

import pytest

from biheyt.algebras import chain_algebra, product
from biheyt.cli import main
from biheyt.free import free_algebra


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_dual_of_chain(capsys):
    code, payload = run_json(capsys, "dual", "--chain", "3")
    assert code == 0
    assert payload["size"] == 2
    assert payload["leq"] == [[True, False], [True, True]]


def test_dual_rejects_degenerate_chain(capsys):
    code, _ = run(capsys, "dual", "--chain", "1")
    assert code == 2


def test_dual_dot_to_stdout(capsys, tmp_path):
    f1 = free_algebra([chain_algebra(3)], 1)
    spec = tmp_path / "f1.json"
    spec.write_text(json.dumps(f1.algebra.to_json_dict()))
    code, out = run(capsys, "dual", "--algebra", str(spec), "--dot")
    assert code == 0
    assert out.startswith("digraph")
    assert out.count("n0") >= 1
    assert out.count("->") == 1  # one covering edge among the four points


def test_dual_dot_to_file(capsys, tmp_path):
    dot_file = tmp_path / "dual.dot"
    code, payload = run_json(capsys, "dual", "--chain", "3", "--dot", str(dot_file))
    assert code == 0
    assert payload["size"] == 2
    assert dot_file.read_text().startswith("digraph")


def test_updual_chain(capsys):
    code, payload = run_json(capsys, "updual", "--chain", "2")
    assert code == 0
    assert payload == chain_algebra(3).to_json_dict()


def test_hasse(capsys):
    code, out = run(capsys, "hasse", "--chain", "3")
    assert code == 0
    assert "n0 -> n1;" in out and "n1 -> n2;" in out


def test_free_command(capsys):
    code, payload = run_json(capsys, "free", "--gen", "chain3", "--vars", "1")
    assert code == 0
    assert payload["algebra"]["size"] == 12
    assert payload["generators"] == [2]
    code, payload = run_json(capsys, "free", "--gen", "chain3", "--vars", "0")
    assert code == 0
    assert payload["algebra"]["size"] == 2


def test_check_rule_witness(capsys):
    code, payload = run_json(
        capsys, "check-rule", "--rule", "dense-codense", "--on", "chain3"
    )
    assert code == 1
    assert payload["holds"] is False
    assert payload["witness"] == [1]
    assert payload["failing_target"] == 0


def test_check_rule_on_product_family(capsys):
    code, payload = run_json(
        capsys,
        "check-rule", "--rule", "dense-codense",
        "--on", "enum-products-with-2", "3",
    )
    assert code == 0
    assert payload["holds"] is True
    assert payload["targets"] == 8


def test_rule_from_text_file(capsys, tmp_path):
    rule_file = tmp_path / "collapse.rule"
    rule_file.write_text("x1 = 1 |- 0 = 1\n")
    code, payload = run_json(
        capsys, "check-rule", "--rule", str(rule_file), "--on", "chain2"
    )
    assert code == 1
    assert payload["rule"] == "x1 = 1 |- 0 = 1"


def test_rule_from_json_file(capsys, tmp_path):
    rule_file = tmp_path / "collapse.json"
    rule_file.write_text(
        json.dumps(
            {
                "premises": [{"left": {"var": 1}, "right": {"const": 1}}],
                "conclusion": {"left": {"const": 0}, "right": {"const": 1}},
            }
        )
    )
    code, payload = run_json(
        capsys, "check-rule", "--rule", str(rule_file), "--on", "chain2"
    )
    assert code == 1
    assert payload["rule"] == "x1 = 1 |- 0 = 1"


def test_malformed_rule_file(capsys, tmp_path):
    rule_file = tmp_path / "broken.rule"
    rule_file.write_text("x1 = |- 0 = 1")
    code, _ = run(capsys, "check-rule", "--rule", str(rule_file), "--on", "chain2")
    assert code == 2


def test_missing_file(capsys, tmp_path):
    code, _ = run(
        capsys, "check-rule", "--rule", str(tmp_path / "absent.rule"), "--on", "chain2"
    )
    assert code == 2


def test_admissible_evidence(capsys):
    code, payload = run_json(
        capsys,
        "admissible", "--rule", "dense-codense", "--gen", "chain3", "--max-vars", "1",
    )
    assert code == 0
    assert payload["verdicts"] == [True]
    assert payload["refuted"] is False
    assert payload["truncated_at"] is None


def test_admissible_refuted(capsys, tmp_path):
    rule_file = tmp_path / "bad.rule"
    rule_file.write_text("x1 = 1 |- 0 = 1")
    code, payload = run_json(
        capsys,
        "admissible", "--rule", str(rule_file), "--gen", "chain2", "--max-vars", "2",
    )
    assert code == 1
    assert payload["refuted"] is True
    assert payload["verdicts"] == [False, False]


def test_derivable_counterexample(capsys):
    code, payload = run_json(
        capsys,
        "derivable", "--rule", "dense-codense", "--gen", "chain3",
        "--power-bound", "1",
    )
    assert code == 1
    assert payload["counterexample"]["size"] == 3
    assert payload["counterexample"]["assignment"] == [1]


def test_derivable_none_in_boolean_variety(capsys):
    code, payload = run_json(
        capsys,
        "derivable", "--rule", "dense-codense", "--gen", "chain2",
        "--power-bound", "2",
    )
    assert code == 0
    assert payload["counterexample"] is None


def test_unify_not_found(capsys):
    code, payload = run_json(
        capsys,
        "unify", "--rule", "dense-codense", "--gen", "chain3", "--max-vars", "1",
    )
    assert code == 1
    assert payload["found"] is False


def test_embed_found(capsys):
    code, payload = run_json(
        capsys, "embed", "--source", "chain2", "--target", "chain3"
    )
    assert code == 0
    assert payload["maps"] == [[0, 2]]


def test_embed_none(capsys):
    code, payload = run_json(
        capsys, "embed", "--source", "chain3", "--target", "chain2"
    )
    assert code == 1
    assert payload["count"] == 0


def test_iso(capsys, tmp_path):
    spec = tmp_path / "square.json"
    sq = product(chain_algebra(2), chain_algebra(2))
    spec.write_text(json.dumps(sq.to_json_dict()))
    code, payload = run_json(capsys, "iso", "--left", str(spec), "--right", str(spec))
    assert code == 0
    assert payload["map"] == [0, 1, 2, 3]
    code, payload = run_json(capsys, "iso", "--left", "chain4", "--right", str(spec))
    assert code == 1
    assert payload["isomorphic"] is False


def test_si(capsys, tmp_path):
    code, payload = run_json(capsys, "si", "--algebra", "chain3")
    assert code == 0
    assert payload["subdirectly_irreducible"] is True
    assert payload["monolith_blocks"] == [[0, 1, 2]]

    spec = tmp_path / "product.json"
    sq = product(chain_algebra(3), chain_algebra(2))
    spec.write_text(json.dumps(sq.to_json_dict()))
    code, payload = run_json(capsys, "si", "--algebra", str(spec))
    assert code == 1
    assert payload["monolith_blocks"] is None


def test_verify_subset(capsys):
    code, payload = run_json(
        capsys, "verify", "--only", "C1,C9", "--no-timing"
    )
    assert code == 0
    assert payload["overall"] == "pass"
    assert [c["ms"] for c in payload["checks"]] == [0, 0]


def test_budget_env_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("BIHEYT_BUDGET", "1")
    code, _ = run(capsys, "embed", "--source", "chain3", "--target", "chain3")
    assert code == 3


def test_out_flag(capsys, tmp_path):
    out_file = tmp_path / "result.json"
    code, out = run(capsys, "dual", "--chain", "2", "--out", str(out_file))
    assert code == 0
    assert out == ""
    assert json.loads(out_file.read_text())["size"] == 1
