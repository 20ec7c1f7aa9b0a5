import pytest
import json
from typer.testing import CliRunner
from niemytzki_lab import __version__
from niemytzki_lab.cli import app

PARABOLA_SPEC = {
    "name": "parabolas",
    "kind": "power_law",
    "coefficient": {"form": "power", "param": 1},
    "exponent": {"form": "constant", "param": 2},
}

NEGATIVE_SPEC = {
    "name": "inverse-scaled",
    "kind": "power_law",
    "coefficient": {"form": "power", "param": -1},
    "exponent": {"form": "constant", "param": 2},
}

@pytest.fixture
def runner():
    """Create a CLI runner"""
    return CliRunner()

def read_report(out):
    return json.loads((out / "report.json").read_text())

def write_spec(path, spec):
    path.write_text(json.dumps(spec))
    return str(path)

def test_version(runner):
    """Test the version command"""
    result = runner.invoke(app, ["version"])

    assert result.exit_code == 0
    assert __version__ in result.output

def test_verify_family(runner, tmp_path):
    """Test verify-family writes a passing report"""
    out = tmp_path / "out"
    result = runner.invoke(app, ["verify-family", "--family", "power:s=1/2", "--n-max", "6",
                                 "--out", str(out)])

    assert result.exit_code == 0
    report = read_report(out)
    assert report["command"] == "verify-family"
    assert report["family"] == "power(s=1/2)"
    assert report["passed"] is True
    assert "basic" in (out / "summary.txt").read_text()

def test_verify_family_from_spec(runner, tmp_path):
    """Test verify-family reads a JSON family spec"""
    out = tmp_path / "out"
    spec = write_spec(tmp_path / "parabolas.json", PARABOLA_SPEC)
    result = runner.invoke(app, ["verify-family", "--family", spec, "--out", str(out)])

    assert result.exit_code == 0
    assert read_report(out)["passed"] is True

def test_verify_family_negative_control(runner, tmp_path):
    """Test a non-basic family is reported, not rejected"""
    out = tmp_path / "out"
    spec = write_spec(tmp_path / "negative.json", NEGATIVE_SPEC)
    result = runner.invoke(app, ["verify-family", "--family", spec, "--out", str(out)])

    assert result.exit_code == 0
    report = read_report(out)
    assert report["passed"] is False
    assert "NOT basic" in (out / "summary.txt").read_text()

def test_lens(runner, tmp_path):
    """Test lens writes the report, figure and samples"""
    out = tmp_path / "out"
    result = runner.invoke(app, ["lens", "--family", "parabolas", "--n", "2", "--a", "0",
                                 "--b", "0.4", "--grid", "200", "--out", str(out)])

    assert result.exit_code == 0
    report = read_report(out)
    assert report["components"] == 2
    assert report["intersect"] is True
    assert report["saddle_point"] == pytest.approx([0.2, 0.08])
    assert (out / "figure.svg").read_text().lstrip().startswith("<?xml")
    lines = (out / "samples.csv").read_text().splitlines()
    assert lines[0] == "x,y,label"
    assert len(lines) == 200 * 200 + 1

def test_lens_figure_is_reproducible(runner, tmp_path):
    """Test two identical lens runs give identical SVG bytes"""
    for name in ["one", "two"]:
        result = runner.invoke(app, ["lens", "--family", "disc", "--grid", "100",
                                     "--out", str(tmp_path / name)])
        assert result.exit_code == 0

    first = (tmp_path / "one" / "figure.svg").read_bytes()
    second = (tmp_path / "two" / "figure.svg").read_bytes()
    assert first == second

def test_lens_reversed_anchors(runner, tmp_path):
    """Test a > b exits with code 2 and a JSON error"""
    result = runner.invoke(app, ["lens", "--family", "parabolas", "--a", "0.4", "--b", "0",
                                 "--out", str(tmp_path / "out")])

    assert result.exit_code == 2
    assert '"ArgumentError"' in result.output

def test_lens_rejects_non_basic(runner, tmp_path):
    """Test families failing verification are rejected unless --no-verify"""
    spec = write_spec(tmp_path / "negative.json", NEGATIVE_SPEC)
    result = runner.invoke(app, ["lens", "--family", spec, "--out", str(tmp_path / "out")])
    assert result.exit_code == 2
    assert '"AxiomError"' in result.output

def test_refine(runner, tmp_path):
    """Test refine reports Equivalent for parabolas and discs"""
    out = tmp_path / "out"
    result = runner.invoke(app, ["refine", "--a", "parabolas", "--b", "disc", "--n-max", "4",
                                 "--out", str(out)])

    assert result.exit_code == 0
    report = read_report(out)
    assert report["verdict"] == "Equivalent"
    assert "Equivalent" in result.output

def test_refute(runner, tmp_path):
    """Test refute exits 0 with the verdict in the report"""
    out = tmp_path / "out"
    result = runner.invoke(app, ["refute", "--a", "triangles:alpha=0.7853981633974483",
                                 "--b", "disc", "--out", str(out)])

    assert result.exit_code == 0
    report = read_report(out)
    assert report["verdict"] == "NotHomeomorphic"
    assert {"verdict", "orientation", "witnesses", "closure_rule", "certificate_lines",
            "probes"} <= set(report)
    assert report["witnesses"][0] == {"n": 1, "m": 6}
    summary = (out / "summary.txt").read_text()
    assert "verdict: NotHomeomorphic" in summary

def test_refute_inconclusive_exit_code(runner, tmp_path):
    """Test an Inconclusive verdict still exits 0"""
    out = tmp_path / "out"
    result = runner.invoke(app, ["refute", "--a", "parabolas", "--b", "parabolas",
                                 "--n-max", "2", "--m-max", "4", "--out", str(out)])

    assert result.exit_code == 0
    assert read_report(out)["verdict"] == "Inconclusive"
    assert "NotHomeomorphic" not in (out / "summary.txt").read_text()

def test_refute_report_is_reproducible(runner, tmp_path):
    """Test identical refute runs write identical report bytes"""
    for name in ["one", "two"]:
        result = runner.invoke(app, ["refute", "--a", "w", "--b", "parabolas", "--probes",
                                     "--threads", "3", "--out", str(tmp_path / name)])
        assert result.exit_code == 0

    first = (tmp_path / "one" / "report.json").read_bytes()
    second = (tmp_path / "two" / "report.json").read_bytes()
    assert first == second

def test_liminf_function(runner, tmp_path):
    """Test liminf on a catalogue function"""
    out = tmp_path / "out"
    result = runner.invoke(app, ["liminf", "--function", "oscillating", "--out", str(out)])

    assert result.exit_code == 0
    report = read_report(out)
    assert report["value"] == pytest.approx(1.0, abs=0.05)
    assert report["seed"] is None
    assert (out / "samples.csv").read_text().startswith("x,F,window_id")

def test_liminf_random_instance(runner, tmp_path):
    """Test liminf without a function checks a seeded random instance"""
    out = tmp_path / "out"
    result = runner.invoke(app, ["liminf", "--seed", "7", "--out", str(out)])

    assert result.exit_code == 0
    report = read_report(out)
    assert report["seed"] == 7
    assert report["holds"] is True

def test_eq1(runner, tmp_path):
    """Test eq1 for x^3 at u = 1"""
    out = tmp_path / "out"
    result = runner.invoke(app, ["eq1", "--g", "cube", "--u", "1", "--out", str(out)])

    assert result.exit_code == 0
    report = read_report(out)
    assert report["estimate"]["value"] == pytest.approx(1.0, abs=0.01)

def test_eq1_grid_options(runner, tmp_path):
    """Test eq1 passes the grid options through to the estimate"""
    out = tmp_path / "out"
    result = runner.invoke(app, ["eq1", "--g", "cube", "--u", "1", "--x0", "0.05", "--ratio", "0.25",
                                 "--depth", "20", "--window", "4", "--oversample", "16",
                                 "--out", str(out)])

    assert result.exit_code == 0
    grid = read_report(out)["estimate"]["grid"]
    assert grid == {"x0": 0.05, "ratio": 0.25, "depth": 20, "window": 4, "oversample": 16}

def test_eq1_degenerate(runner, tmp_path):
    """Test a constant g exits with code 2"""
    result = runner.invoke(app, ["eq1", "--g", "constant", "--out", str(tmp_path / "out")])

    assert result.exit_code == 2
    assert '"AllDegenerateError"' in result.output

def test_power_map(runner, tmp_path):
    """Test power-map reports interleaving witnesses"""
    out = tmp_path / "out"
    result = runner.invoke(app, ["power-map", "--s", "2", "--t", "1", "--out", str(out)])

    assert result.exit_code == 0
    report = read_report(out)
    assert report["interleaves"] is True
    assert report["steps"][-1] == {"n": 8, "k_inside_image": 3, "k_image_inside": 64}

@pytest.mark.parametrize("args", [
    ["verify-family", "--family", "nosuch"],
    ["verify-family", "--family", "triangles:alpha=2.0"],
    ["refine", "--a", "parabolas", "--b", "disc", "--n-max", "0"],
    ["liminf", "--ratio", "1.5"],
    ["liminf", "--function", "nosuch"],
    ["power-map", "--s", "two"],
], ids=["unknown-family", "bad-angle", "bad-n-max", "bad-ratio", "unknown-function", "bad-exponent"])
def test_errors_exit_2(runner, tmp_path, args):
    """Test invalid input exits with code 2 and a JSON error object"""
    result = runner.invoke(app, args + ["--out", str(tmp_path / "out")])

    assert result.exit_code == 2
    assert '"error"' in result.output

def test_spec_unknown_field(runner, tmp_path):
    """Test unknown fields in a family spec report the field path"""
    spec = dict(PARABOLA_SPEC, colour="blue")
    path = write_spec(tmp_path / "bad.json", spec)
    result = runner.invoke(app, ["verify-family", "--family", path, "--out", str(tmp_path / "out")])

    assert result.exit_code == 2
    assert '"ParseError"' in result.output
    assert "colour" in result.output

def test_spec_invalid_json(runner, tmp_path):
    """Test malformed JSON reports the line"""
    path = tmp_path / "broken.json"
    path.write_text('{"kind": "disc",\n "name": }')
    result = runner.invoke(app, ["verify-family", "--family", str(path), "--out", str(tmp_path / "out")])

    assert result.exit_code == 2
    assert '"line": 2' in result.output
