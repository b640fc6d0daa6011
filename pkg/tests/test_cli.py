"""Tests for the command-line interface."""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from click.testing import CliRunner, Result

from tensorhn.cli import main

X0_SQUARED = {"bundle": {"a": 0, "b": 0}, "s": 2, "coeffs": ["1", "0", "0"]}


def write(tmp_path: Path, document: Dict[str, Any]) -> str:
    path = tmp_path / "input.json"
    path.write_text(json.dumps(document))
    return str(path)


def invoke(args: List[str], stdin: Optional[str] = None) -> Result:
    """Run the CLI with only errors logged, so the output stays JSON."""
    return CliRunner().invoke(
        main, ["--log-level", "ERROR"] + args, input=stdin
    )


def test_help() -> None:
    """Test help for main commands and subcommands."""
    runner = CliRunner()

    result = runner.invoke(main, ["-h"])
    assert result.exit_code == 0
    assert "Commands:" in result.output

    result = runner.invoke(main, ["help"])
    assert result.exit_code == 0
    assert "Commands:" in result.output

    result = runner.invoke(main, ["help", "stability"])
    assert result.exit_code == 0
    assert "Commands:" not in result.output
    assert "Options:" in result.output

    result = runner.invoke(main, ["help", "unknown-command"])
    assert result.exit_code != 0
    assert "Unknown help topic unknown-command" in result.output


def test_stability(tmp_path: Path) -> None:
    """X0^2 on O + O is unstable with value 2."""
    result = invoke(["--input", write(tmp_path, X0_SQUARED), "stability"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["command"] == "stability"
    assert report["result"]["verdict"] == "unstable"
    assert report["result"]["value"] == "2"
    assert report["result"]["witness"] == {
        "p": "0",
        "q": "1",
        "degree": 0,
    }
    assert report["options"]["tau"] == "1"
    assert len(report["inputs_digest"]) == 64
    assert report["warnings"] == []


def test_stability_is_deterministic(tmp_path: Path) -> None:
    """The same input gives byte-identical reports."""
    path = write(tmp_path, X0_SQUARED)
    first = invoke(["--input", path, "stability"])
    second = invoke(["--input", path, "-j", "2", "stability"])
    assert first.exit_code == second.exit_code == 0
    assert (
        json.loads(first.output)["result"]
        == json.loads(second.output)["result"]
    )
    assert first.output == invoke(["--input", path, "stability"]).output


def test_hn(tmp_path: Path) -> None:
    """Corrected Hilbert polynomials of the HN subsheaf of X0^2."""
    result = invoke(["--input", write(tmp_path, X0_SQUARED), "hn"])
    assert result.exit_code == 0
    hn = json.loads(result.output)["result"]["hn"]
    assert hn["epsilon"] == 0
    assert hn["corrected"]["P_bar_E"] == "2*m"
    assert hn["corrected"]["P_bar_L"] == "m + 1"
    assert hn["corrected"]["P_bar_quotient"] == "m - 1"


def test_hn_of_semistable_tensor(tmp_path: Path) -> None:
    """A semistable tensor has no HN subsheaf."""
    document = {"bundle": {"a": 0, "b": 0}, "s": 2, "coeffs": ["0", "1", "0"]}
    result = invoke(["--input", write(tmp_path, document), "hn"])
    assert result.exit_code == 0
    report = json.loads(result.output)["result"]
    assert report["verdict"] == "semistable"
    assert report["hn"] is None


def test_kempf(tmp_path: Path) -> None:
    """The destabilizing filtration of X0^2 at m = 10."""
    result = invoke(
        ["--input", write(tmp_path, X0_SQUARED), "--m", "10", "kempf"]
    )
    assert result.exit_code == 0
    report = json.loads(result.output)["result"]
    assert report["verdict"] == "unstable"
    assert report["K"] == "2"
    assert report["m"] == 10
    root = next(
        ident
        for ident in report["identifications"]
        if ident["section"]["p"] == "0"
    )
    assert root["kempf_square"] == "1/550"
    assert root["kempf_sign"] == 1
    assert root["filter_dimension"] == "11"


def test_kempf_unbalanced(tmp_path: Path) -> None:
    """Candidates with steps of different dimensions are identified too."""
    document = {"bundle": {"a": 3, "b": 0}, "s": 2, "coeffs": ["0", "0", "1"]}
    result = invoke(["--input", write(tmp_path, document), "kempf"])
    assert result.exit_code == 0
    report = json.loads(result.output)["result"]
    assert report["verdict"] == "unstable"
    assert report["identifications"]
    for ident in report["identifications"]:
        assert ident["closed_form_square"] == ident["kempf_square"]


def test_kempf_bad_level(tmp_path: Path) -> None:
    """P(m) - s delta(m) must be positive at the evaluation point."""
    path = write(tmp_path, X0_SQUARED)
    result = invoke(
        ["--input", path, "kempf", "--delta", "m + 1", "--m", "10"]
    )
    assert result.exit_code == 2


def test_options_after_subcommand() -> None:
    """Global options are accepted after the subcommand name."""
    result = invoke(["stability", "--tau", "1"], stdin=json.dumps(X0_SQUARED))
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["result"]["verdict"] == "unstable"
    assert report["result"]["value"] == "2"

    result = invoke(
        ["--tau", "1/4", "stability", "--tau", "1/2", "-f", "table"],
        stdin=json.dumps(X0_SQUARED),
    )
    assert result.exit_code == 0
    assert "value: 1" in result.output.splitlines()

    result = invoke(["stability", "--tau", "0"], stdin=json.dumps(X0_SQUARED))
    assert result.exit_code == 2


def test_envelope(tmp_path: Path) -> None:
    """Pooling of a weighted graph."""
    document = {"b": ["1", "1", "1"], "v": ["1", "-2", "1"]}
    result = invoke(["--input", write(tmp_path, document), "envelope"])
    assert result.exit_code == 0
    report = json.loads(result.output)["result"]
    assert report["gamma"] == ["-1/2", "-1/2", "1"]
    assert report["mu_squared"] == "3/2"
    assert report["sign"] == 1


def test_covering(tmp_path: Path) -> None:
    """The unbalanced example seen as a covering of the line."""
    document = {
        "bundle": {"a": 3, "b": 0},
        "s": 2,
        "coeffs": ["0", "0", "1"],
        "fibers": ["0", "2"],
    }
    result = invoke(
        ["--input", write(tmp_path, document), "--tau", "1/4", "covering"]
    )
    assert result.exit_code == 0
    report = json.loads(result.output)["result"]
    assert report["verdict"] == "unstable"
    assert report["value"] == "7/2"
    assert report["e"] == 3
    assert report["twist"] == -3
    assert report["hn_section"]["C0_dot_D"] == -3
    assert [f["direction_multiplicity"] for f in report["fiber_samples"]] == [
        2,
        2,
    ]


def test_fiber(tmp_path: Path) -> None:
    """Fibers of X0^2 carry a double point."""
    result = invoke(
        [
            "--input",
            write(tmp_path, X0_SQUARED),
            "fiber",
            "--x",
            "0",
            "--x",
            "1/3",
        ]
    )
    assert result.exit_code == 0
    fibers = json.loads(result.output)["result"]["fibers"]
    assert [f["x0"] for f in fibers] == ["0", "1/3"]
    assert {f["verdict"] for f in fibers} == {"unstable"}


def test_table_format(tmp_path: Path) -> None:
    """Human-readable report."""
    result = invoke(
        ["--input", write(tmp_path, X0_SQUARED), "-f", "table", "stability"]
    )
    assert result.exit_code == 0
    assert "command: stability" in result.output
    assert "verdict: unstable" in result.output
    assert "candidates:" in result.output


def test_input_errors(tmp_path: Path) -> None:
    """Malformed input and parameters exit with code 2."""
    result = invoke(["--input", str(tmp_path / "missing.json"), "stability"])
    assert result.exit_code == 2

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    result = invoke(["--input", str(bad), "stability"])
    assert result.exit_code == 2

    document = {"bundle": {"a": 0, "b": 0}, "s": 2, "coeffs": ["0", "0", "0"]}
    result = invoke(["--input", write(tmp_path, document), "stability"])
    assert result.exit_code == 2

    result = invoke(
        ["--input", write(tmp_path, X0_SQUARED), "--tau", "0", "stability"]
    )
    assert result.exit_code == 2
    assert "tau" in result.output


def test_strict_incomplete_search(tmp_path: Path) -> None:
    """X0^2 + X1^2 has no linear factor; --strict refuses to certify."""
    document = {"bundle": {"a": 0, "b": 0}, "s": 2, "coeffs": ["1", "0", "1"]}
    path = write(tmp_path, document)

    result = invoke(["--input", path, "stability"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["result"]["verdict"] == "stable"
    assert report["result"]["complete"] is False
    assert report["warnings"]

    result = invoke(["--input", path, "--strict", "stability"])
    assert result.exit_code == 3


def test_env_var(tmp_path: Path) -> None:
    """Options can be given through the environment."""
    runner = CliRunner()
    result = runner.invoke(
        main,
        ["--log-level", "ERROR", "stability"],
        env={"TENSORHN_INPUT": write(tmp_path, X0_SQUARED)},
    )
    assert result.exit_code == 0
    assert json.loads(result.output)["result"]["value"] == "2"


def test_selftest() -> None:
    """The embedded suites pass on a small sample."""
    result = invoke(["selftest", "--count", "5", "--seed", "3"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["inputs_digest"] == ""
    assert report["result"]["seed"] == 3
    assert all(suite["passed"] for suite in report["result"]["suites"])
