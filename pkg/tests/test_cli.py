"""Command-line driver: reports, exit codes, determinism."""

import json

from click.testing import CliRunner

from chowkit.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def run_json(*args):
    result = run(*args, "--json")
    assert result.output.strip(), result.output
    return result, json.loads(result.output)


def test_gram_command():
    result, doc = run_json("gram")
    assert result.exit_code == 0
    assert doc["status"] == "pass"
    assert doc["payload"]["matrix"] == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
    assert doc["payload"]["det"] == -2


def test_ss_weight_one():
    result, doc = run_json("ss", "--n", "3", "--weight", "1")
    assert result.exit_code == 0
    assert doc["payload"]["table"] == {"1": "Z"}


def test_ss_weight_three():
    result, doc = run_json("ss", "--n", "3", "--weight", "3")
    assert result.exit_code == 0
    assert doc["payload"]["table"] == {
        "1": "H^{0,2}(F)", "2": "H^{1,2}(F)", "3": "H^{2,2}(F)",
        "4": "Z + (F*)^n", "5": "nZ",
    }


def test_schubert_mul_xring():
    result, doc = run_json("schubert", "mul", "(2,2)", "(1)", "--xring")
    assert result.exit_code == 0
    assert doc["payload"]["result"] == "(2,2,2) + 2(3,2,1) + (3,3)"
    assert doc["payload"]["codim"] == 5


def test_schubert_mul_plain():
    result, doc = run_json("schubert", "mul", "(2,1)", "(2,1)")
    assert result.exit_code == 0
    assert doc["payload"]["codim"] == 6


def test_xring_mul_h():
    result, doc = run_json("xring", "mul-h", "(2,2)")
    assert result.exit_code == 0
    assert doc["payload"]["result"] == "(2,2,2) + 2(3,2,1) + (3,3)"


def test_verify_all_passes():
    result = run("verify", "all")
    assert result.exit_code == 0
    assert "result: pass (12/12 passed)" in result.output


def test_verify_all_deterministic():
    first = run("verify", "all", "--json")
    second = run("verify", "all", "--json")
    assert first.output == second.output
    doc = json.loads(first.output)
    assert doc["status"] == "pass"
    assert [c["status"] for c in doc["payload"]["checks"]] == ["pass"] * 12


def test_every_json_subcommand_emits_one_document():
    invocations = [
        ("gram",), ("alphas",), ("bases",), ("quadric",),
        ("tateiso", "--invert", "2"),
        ("glmotive", "--n", "3"),
        ("d2", "--n", "3", "--q", "2"),
        ("ss", "--n", "3", "--weight", "2"),
        ("plucker", "--a", "2", "--b", "3"),
        ("charts", "--degree", "3"),
        ("ideals", "--n", "3", "--q", "2", "--k", "2"),
        ("witt", "--form", "1,-2,-3,6,-1"),
        ("schubert", "mul", "(1)", "(1)"),
        ("xring", "mul-h", "(1)"),
    ]
    for args in invocations:
        result, doc = run_json(*args)
        assert result.exit_code == 0, (args, result.output)
        assert set(doc) == {"command", "inputs", "status", "payload"}


def test_tateiso_fails_over_z():
    result = run("tateiso")
    assert result.exit_code == 1
    assert "[fail]" in result.output


def test_usage_errors_exit_two():
    assert run("d2", "--n", "4", "--q", "1").exit_code == 2
    assert run("ss", "--n", "3", "--weight", "9").exit_code == 2
    assert run("witt", "--form", "nonsense").exit_code == 2
    assert run("schubert", "mul", "(2,1)", "(2,1)", "--xring").exit_code == 2
    assert run("xring", "mul-h", "(3,2)").exit_code == 2
    assert run("nonexistent").exit_code == 2


def test_charts_reports_verbatim_equation():
    _, doc = run_json("charts", "--degree", "3")
    rows = {tuple(r["pivots"]): r for r in doc["payload"]["charts"]}
    assert rows[(1, 2, 4)]["kind"] == "graph"
    assert rows[(1, 2, 4)]["pivot_variable"] == "a33"
    assert len(rows) == 20


def test_ideals_counts():
    _, doc = run_json("ideals", "--n", "3", "--q", "2", "--k", "1")
    assert doc["payload"]["count"] == 7
    assert doc["payload"]["gaussian_binomial"] == 7
    assert doc["status"] == "pass"


def test_alphas_report():
    result, doc = run_json("alphas")
    assert result.exit_code == 0
    assert doc["payload"]["steps"]["1"]["holds"] is True
    assert len(doc["payload"]["cycles"]) == 5


def test_more_usage_errors_exit_two():
    assert run("xring", "mul-h", "(3,3,3)").exit_code == 2
    assert run("schubert", "mul", "(4)", "(1)").exit_code == 2
    assert run("glmotive", "--n", "0").exit_code == 2
    assert run("witt", "--form", "1,0,-1").exit_code == 2
    assert run("plucker", "--a", "0", "--b", "3").exit_code == 2
