import pytest
import json
import numpy as np
from fractions import Fraction
from pathlib import Path
from niemytzki_lab.core.geometry import LensRegion
from niemytzki_lab.core.profile import parabolas
from niemytzki_lab.output import lens_figure, write_csv, write_report
from niemytzki_lab.output.writers import dumps_report

def test_dumps_report():
    """Test reports are sorted, indented and accept exact and numpy values"""
    text = dumps_report({"b": Fraction(1, 3), "a": np.int64(4), "c": Path("out"), "d": np.float64(0.5)})

    assert text.endswith("\n")
    assert list(json.loads(text)) == ["a", "b", "c", "d"]
    assert json.loads(text) == {"a": 4, "b": "1/3", "c": "out", "d": 0.5}

    with pytest.raises(TypeError):
        dumps_report({"x": object()})

def test_write_report(tmp_path):
    """Test report.json and summary.txt are written into a new directory"""
    path = write_report(tmp_path / "nested" / "out", {"kind": "Inconclusive"}, "verdict: Inconclusive\n\n")

    assert path.name == "report.json"
    assert json.loads(path.read_text()) == {"kind": "Inconclusive"}
    assert (path.parent / "summary.txt").read_text() == "verdict: Inconclusive\n"

def test_write_csv_round_trips_floats(tmp_path):
    """Test floats are written with full precision"""
    path = write_csv(tmp_path / "samples.csv", ["x", "label"], [(0.1 + 0.2, 1)])
    lines = path.read_text().splitlines()

    assert lines[0] == "x,label"
    assert float(lines[1].split(",")[0]) == 0.1 + 0.2

def test_lens_figure(tmp_path):
    """Test the lens figure is written for overlapping and disjoint anchors"""
    family = parabolas()
    path = lens_figure(LensRegion(0.0, 0.4, family, 2), tmp_path / "lens.svg")
    assert "<svg" in path.read_text()

    path = lens_figure(LensRegion(0.0, 1.5, family, 2), tmp_path / "apart.svg")
    assert path.exists()
