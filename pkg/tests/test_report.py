"""Tests for the configuration and the reports."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from tensorhn.algebra.poly import RationalPoly
from tensorhn.config import Config
from tensorhn.errors import (
    InputError,
    InvalidDelta,
    InvalidParameters,
    NonpositiveTau,
)
from tensorhn.report import Report, read_document, render_table


def test_config_defaults() -> None:
    """Defaults serialize to strings for the report."""
    config = Config()
    assert config.to_dict() == {
        "input": "-",
        "tau": "1",
        "delta": "1",
        "m": 20,
        "strict": False,
        "jobs": 1,
        "output_format": "json",
        "log_level": "WARNING",
    }


def test_config_validation() -> None:
    """Parameters are checked on construction."""
    with pytest.raises(NonpositiveTau):
        Config(tau=Fraction(0))
    with pytest.raises(InvalidDelta):
        Config(delta=RationalPoly.parse("-m"))
    with pytest.raises(InvalidParameters):
        Config(m=0)
    with pytest.raises(InputError):
        Config(jobs=0)
    with pytest.raises(InputError):
        Config(output_format="yaml")


def test_read_document(tmp_path: Path) -> None:
    """Raw bytes are kept next to the decoded document."""
    path = tmp_path / "doc.json"
    path.write_bytes(b'{"b": ["1"]}')
    raw, document = read_document(str(path))
    assert raw == b'{"b": ["1"]}'
    assert document == {"b": ["1"]}
    with pytest.raises(InputError):
        read_document(str(tmp_path / "missing.json"))


def test_report_json() -> None:
    """Keys are sorted and the digest is the SHA-256 of the input."""
    report = Report(
        command="envelope",
        inputs_digest=Report.digest(b""),
        options=Config().to_dict(),
        result={"sign": 1, "gamma": ["-1", "1"]},
    )
    text = report.asjson()
    assert text == report.render("json")
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data["inputs_digest"] == (
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
    )
    assert data["warnings"] == []


def test_report_table() -> None:
    """Scalars first, then one table per list of records."""
    report = Report(
        command="stability",
        inputs_digest="",
        options={},
        result={
            "verdict": "unstable",
            "witness": {"epsilon": 0},
            "candidates": [
                {"value": "2", "tie": False},
                {"value": "-2", "tie": None},
            ],
        },
        warnings=["Tie anomaly."],
    )
    lines = report.render("table").splitlines()
    assert lines[0] == "command: stability"
    assert "verdict: unstable" in lines
    assert "witness.epsilon: 0" in lines
    assert "candidates:" in lines
    assert lines[-1] == "warning: Tie anomaly."


def test_render_table() -> None:
    """Columns are aligned and ordered by first appearance."""
    table = render_table([{"a": "1", "bb": "22"}, {"c": "333"}])
    assert table.splitlines() == [
        "a  bb  c",
        "-  --  ---",
        "1  22",
        "       333",
    ]
