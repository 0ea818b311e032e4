"""Tests for the quiverar command line."""

import json

import pytest
from typer.testing import CliRunner

from quiverar.main import app
from quiverar.workspace import canonical_form, parse

runner = CliRunner()


def invoke(*args):
    return runner.invoke(app, [str(a) for a in args])


def payload(result):
    text = result.stdout
    return json.loads(text[text.index("{") : text.rindex("}") + 1])


@pytest.fixture
def free_loop(tmp_path):
    path = tmp_path / "free_loop.quiver"
    path.write_text("vertex 1\narrow a: 1 -> 1\n", encoding="utf-8")
    return path


def test_build_reports_basis(data_dir):
    result = invoke("--json", "build", data_dir / "a2.quiver")
    assert result.exit_code == 0, result.output
    report = payload(result)
    assert report["dimension"] == 3
    assert report["status"] == "nilpotent-verified(2)"
    assert report["basis"]["1->2"] == ["a"]


def test_undecided_algebra_exits_with_two(free_loop):
    result = invoke("--json", "build", free_loop)
    assert result.exit_code == 2
    assert payload(result)["status"].startswith("undecided")
    assert invoke("tau", free_loop, "-m", "S1").exit_code == 2


def test_classify_loop(data_dir):
    result = invoke("--json", "classify", data_dir / "loop_stable.quiver")
    assert result.exit_code == 0, result.output
    report = payload(result)
    assert report["locally_semiperfect"]["value"] == "false"
    assert report["locally_semiperfect"]["witness"]["kind"] == "idempotent"
    assert report["locally_semiprimary"]["value"] == "false"


def test_conclusions_of_loop(data_dir):
    result = invoke("--json", "conclusions", data_dir / "loop_stable.quiver")
    assert result.exit_code == 0
    keys = [c["key"] for c in payload(result)["conclusions"]]
    assert keys == ["left_noetherian", "right_noetherian"]


def test_decompose_user_module(data_dir):
    result = invoke("--json", "decompose", data_dir / "kronecker.quiver", "-m", "R")
    assert result.exit_code == 0, result.output
    report = payload(result)
    assert report["module"]["dims"] == {"1": 1, "2": 1}
    assert [s["certificate"] for s in report["summands"]] == ["certified"]


def test_tau_of_projective_is_zero_with_note(data_dir):
    result = invoke("--json", "tau", data_dir / "a2.quiver", "-m", "P1")
    assert result.exit_code == 0, result.output
    report = payload(result)
    assert report["result"]["dims"] == {"1": 0, "2": 0}
    assert report["summands"] == []
    assert report["note"] == "P1 is projective, so τ is zero"


def test_tau_with_padding(data_dir):
    result = invoke(
        "--json", "tau", data_dir / "a2.quiver", "-m", "S1", "--pad-zero", "1",
        "--pad-identity", "2",
    )
    assert result.exit_code == 0, result.output
    report = payload(result)
    assert report["result"]["dims"] == {"1": 1, "2": 1}
    assert report["p1"] == ["2", "1", "2"]
    assert len(report["summands"]) == 2


def test_tau_minus(data_dir):
    result = invoke("--json", "tau-minus", data_dir / "a2.quiver", "-m", "S2")
    assert result.exit_code == 0, result.output
    report = payload(result)
    assert report["direction"] == "tau-minus"
    assert report["result"]["dims"] == {"1": 1, "2": 0}


def test_window_interior_is_safe(data_dir):
    result = invoke("--json", "tau", data_dir / "fp_window.quiver", "-m", "S1")
    assert result.exit_code == 0, result.output
    report = payload(result)
    assert report["window_unsafe"] is False
    assert (report["p0"], report["p1"]) == (["1"], ["0"])


@pytest.mark.parametrize(
    "name, module", [("fp_window", "S5"), ("fdim_window", "Sb2")]
)
def test_window_boundary_is_stamped(data_dir, name, module):
    result = invoke("--json", "tau", data_dir / f"{name}.quiver", "-m", module)
    assert result.exit_code == 2
    assert payload(result)["window_unsafe"] is True
    assert "window-unsafe" in result.output


def test_almost_split_sequence_with_verification(data_dir):
    result = invoke(
        "--json", "ass", data_dir / "a2.quiver", "-m", "S1", "--verify", "--probes", "all"
    )
    assert result.exit_code == 0, result.output
    report = payload(result)
    assert report["start"]["dims"] == {"1": 0, "2": 1}
    assert report["middle"]["dims"] == {"1": 1, "2": 1}
    assert all(report["certificates"].values())
    verification = report["verification"]
    assert verification["probes"] == ["M", "P2", "I1"]
    assert all(c["passed"] for c in verification["clauses"])


def test_almost_split_sequence_at_projective_fails(data_dir):
    result = invoke("ass", data_dir / "a2.quiver", "-m", "P2")
    assert result.exit_code == 1
    assert "projective" in result.output


def test_duality_check(data_dir):
    result = invoke(
        "--json", "duality-check", data_dir / "a3_bound.quiver", "-m", "S1",
        "--probes", "S1,S2,S3,P1",
    )
    assert result.exit_code == 0, result.output
    report = payload(result)
    assert report["passed"] is True
    assert [r["probe"] for r in report["rows"]] == ["S1", "S2", "S3", "P1"]


def test_dualize(data_dir):
    result = invoke("--json", "dualize", data_dir / "a2.quiver", "-m", "M")
    assert result.exit_code == 0, result.output
    report = payload(result)
    assert report["module"] == "D(M)"
    assert report["matrices"] == {"a^op": [["1"]]}


def test_canonical_output(data_dir):
    path = data_dir / "fdim_window.quiver"
    result = invoke("canonical", path)
    assert result.exit_code == 0
    assert result.stdout == canonical_form(parse(path))


def test_unknown_module_and_syntax_errors(data_dir, tmp_path):
    result = invoke("tau", data_dir / "a2.quiver", "-m", "Q7")
    assert result.exit_code == 1
    assert "unknown module" in result.output
    broken = tmp_path / "broken.quiver"
    broken.write_text("vertex 1\narrow a: 1 -> 2\n", encoding="utf-8")
    result = invoke("build", broken)
    assert result.exit_code == 1
    assert "line 2, column 15" in result.output


def test_invalid_configuration(data_dir, tmp_path):
    config = tmp_path / "config.json"
    config.write_text('{"path_length_cap": 1}', encoding="utf-8")
    result = invoke("--config", config, "build", data_dir / "a2.quiver")
    assert result.exit_code == 1
    assert "invalid configuration" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ["build", "missing.quiver"],
        ["--log-level", "BOGUS", "build", "a2.quiver"],
        ["build", "a2.quiver", "--bogus"],
        ["classify", "a2.quiver", "--len-cap", "1"],
    ],
)
def test_usage_errors_exit_with_one(data_dir, args):
    args = [data_dir / a if a.endswith(".quiver") else a for a in args]
    result = invoke(*args)
    assert result.exit_code == 1, result.output


def test_command_seed_overrides_global_seed(data_dir):
    path = data_dir / "kronecker.quiver"
    result = invoke("--json", "--seed", "11", "decompose", path, "-m", "R", "--seed", "3")
    assert result.exit_code == 0, result.output
    assert payload(result)["seed"] == 3
    result = invoke("--json", "ass", data_dir / "a2.quiver", "-m", "S1", "--verify", "--seed", "3")
    assert result.exit_code == 0, result.output
    assert all(c["passed"] for c in payload(result)["verification"]["clauses"])


def test_tau_presentation_minimal_or_file(data_dir, tmp_path):
    path = data_dir / "a2.quiver"
    result = invoke("--json", "tau", path, "-m", "S1", "--presentation", "minimal")
    assert result.exit_code == 0, result.output
    assert payload(result)["result"]["dims"] == {"1": 0, "2": 1}
    padding = tmp_path / "s1.presentation"
    padding.write_text("# P1 -> 0 and P2 -> P2\nzero 1\nidentity 2\n", encoding="utf-8")
    result = invoke("--json", "tau", path, "-m", "S1", "--presentation", padding)
    assert result.exit_code == 0, result.output
    report = payload(result)
    assert report["result"]["dims"] == {"1": 1, "2": 1}
    assert report["p1"] == ["2", "1", "2"]
    result = invoke("tau", path, "-m", "S1", "--presentation", tmp_path / "none.presentation")
    assert result.exit_code == 1
    assert "presentation file not found" in result.output


def test_translates_are_taken_summand_by_summand(tmp_path):
    path = tmp_path / "a3_sum.quiver"
    path.write_text(
        "field Q\nvertex 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n"
        "module T { dim 1 = 1; dim 2 = 1; mat a = [[0]]; }\n",
        encoding="utf-8",
    )
    result = invoke("--json", "tau", path, "-m", "T")
    assert result.exit_code == 0, result.output
    report = payload(result)
    assert report["result"]["dims"] == {"1": 0, "2": 1, "3": 1}
    parts = report["parts"]
    assert len(parts) == 2
    assert all(p["summand"]["certificate"] == "certified" for p in parts)
    pairs = sorted(
        (tuple(p["summand"]["dims"].values()), tuple(p["translate"]["dims"].values()))
        for p in parts
    )
    assert pairs == [((0, 1, 0), (0, 0, 1)), ((1, 0, 0), (0, 1, 0))]
    result = invoke("--json", "tau-minus", path, "-m", "T")
    assert result.exit_code == 0, result.output
    report = payload(result)
    assert len(report["parts"]) == 2
    assert report["result"]["dims"] == {"1": 1, "2": 0, "3": 0}
    assert report["note"].endswith("is injective, so τ⁻ is zero")
