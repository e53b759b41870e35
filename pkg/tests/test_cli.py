import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from moyalkw import __version__
from moyalkw.cli import (
    CASES,
    OUTPUT_DIR_ENV,
    InvalidBox,
    RunConfig,
    main,
    parse_box,
    render,
    run_case,
    sweep,
)
from moyalkw.gauge import ParameterError

SCHEMA = json.loads(resources.files("moyalkw").joinpath("report.schema.json").read_text())
FAST_CASES = ("chi-su2", "witten-classical", "witten-deformed", "dh-flat-classical", "dh-curved", "density-demo")


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list_cases(capsys):
    code, out, _ = _run(capsys, "list-cases")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == list(CASES)


@pytest.mark.parametrize("case", FAST_CASES)
def test_reports_validate_against_schema(capsys, case):
    code, out, _ = _run(capsys, "verify", case, "--samples", "8")
    d = json.loads(out)
    jsonschema.validate(d, SCHEMA)
    assert d["case"] == case and d["version"] == __version__
    assert code == (0 if d["pass"] else 1)


def test_failing_case_exits_one(capsys):
    code, out, _ = _run(capsys, "verify", "dh-flat-deformed", "--samples", "8")
    d = json.loads(out)
    jsonschema.validate(d, SCHEMA)
    assert code == 1 and d["pass"] is False
    assert d["notes"]["annihilating_conventions"] == []
    assert set(d["notes"]["conventions"]) == {
        f"{p}/{n}" for p in ("display", "operator") for n in ("unit", "ihbar", "-ihbar")
    }


def test_json_output_is_deterministic(capsys):
    outs = [_run(capsys, "verify", "witten-deformed", "--seed", "9", "--samples", "12")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    other = _run(capsys, "verify", "witten-deformed", "--seed", "10", "--samples", "12")[1]
    assert json.loads(other)["seed"] == 10


def test_render_is_deterministic_across_runs():
    cfg = RunConfig("dh-curved", samples=10, seed=4)
    assert render(run_case(cfg)) == render(run_case(cfg))
    assert render(run_case(cfg), "csv") == render(run_case(cfg), "csv")


def test_csv_output(capsys):
    code, out, _ = _run(capsys, "verify", "chi-su2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 9
    assert all(r["exact"] == "true" and r["pass"] == "true" for r in rows)


def test_csv_round_trips_floats(capsys):
    _, out, _ = _run(capsys, "verify", "density-demo", "--format", "csv", "--samples", "4")
    _, js, _ = _run(capsys, "verify", "density-demo", "--samples", "4")
    rows = list(csv.DictReader(io.StringIO(out)))
    eqs = json.loads(js)["equations"]
    assert [float(r["max_abs_residual"]) for r in rows] == [e["max_abs_residual"] for e in eqs]


def test_table_output(capsys):
    code, out, _ = _run(capsys, "verify", "hitchin-equivalence", "--format", "table", "--samples", "4")
    assert code == 0
    assert out.startswith("case hitchin-equivalence")
    assert out.rstrip().endswith("PASS")


def test_out_path_uses_env_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    code, out, _ = _run(capsys, "verify", "chi-su2", "--out", "sub/r.json")
    assert code == 0 and out == ""
    d = json.loads((tmp_path / "sub" / "r.json").read_text())
    assert d["case"] == "chi-su2"


def test_absolute_out_path(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / "ignored"))
    target = tmp_path / "abs.json"
    _run(capsys, "verify", "chi-su2", "--out", str(target))
    assert target.exists() and not (tmp_path / "ignored").exists()


def test_unknown_case_exits_two(capsys):
    code, _, err = _run(capsys, "verify", "nope")
    assert code == 2 and "unknown case" in err


@pytest.mark.parametrize("box", [["--box", "-1:1"], ["--box=-1:1"]])
def test_box_over_singular_locus(capsys, box):
    code, _, err = _run(capsys, "verify", "dh-flat-classical", *box)
    assert code == 2 and "InvalidBox" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "chi-su2", "--tol", "0"],
        ["verify", "chi-su2", "--samples", "0"],
        ["verify", "chi-su2", "--hbar", "abc"],
        ["verify", "density-demo", "--t", "0", "--samples", "2"],
        ["verify", "dh-curved", "--box", "2:1"],
        ["verify", "dh-curved", "--box", "0.5:2,0.5:2"],
        ["verify", "witten-classical", "--box", "x"],
        ["sweep", "chi-su2", "--param", "hbar", "--values", ","],
    ],
)
def test_invalid_input_exits_two(capsys, argv):
    assert _run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2


def test_per_coordinate_box():
    assert parse_box("0.5:2,0.5:2,1:3", "witten-classical") == {
        "x1": (0.5, 2.0),
        "x2": (0.5, 2.0),
        "x3": (1.0, 3.0),
    }
    assert parse_box("0:1", "hitchin-equivalence") == {"*": (0.0, 1.0)}
    with pytest.raises(InvalidBox):
        parse_box("0:1,0:1", "dh-curved")


def test_box_is_recorded(capsys):
    _, out, _ = _run(capsys, "verify", "witten-classical", "--box", "1:2,1:2,1:2", "--samples", "4")
    assert json.loads(out)["notes"]["box"] == {"x1": [1.0, 2.0], "x2": [1.0, 2.0], "x3": [1.0, 2.0]}


def test_parameters_are_recorded(capsys):
    _, out, _ = _run(capsys, "verify", "witten-deformed", "--hbar", "1/4", "--beta", "0", "--r", "2", "--samples", "4")
    assert json.loads(out)["parameters"] == {"r": "2", "hbar": "1/4", "beta": "0"}
    _, out, _ = _run(capsys, "verify", "chi-su2")
    assert json.loads(out)["parameters"] == {"hbar": "formal", "beta": "formal"}


def test_sweep_fits_hbar_squared(capsys):
    code, out, _ = _run(capsys, "sweep", "star-properties", "--param", "hbar", "--values", "0.1,0.01,0.001", "--samples", "5")
    d = json.loads(out)
    assert code == 0 and len(d["reports"]) == 3
    for r in d["reports"]:
        jsonschema.validate(r, SCHEMA)
    assert d["sweep"]["fitted_order"] == pytest.approx(2.0, abs=0.1)


def test_sweep_rejects_unknown_parameter():
    with pytest.raises(ParameterError):
        sweep(RunConfig("chi-su2"), "gamma", ["1"])


def test_sweep_table_and_csv(capsys):
    _, out, _ = _run(capsys, "sweep", "chi-su2", "--param", "hbar", "--values", "1,1/2", "--format", "table")
    assert "sweep hbar" in out
    _, out, _ = _run(capsys, "sweep", "chi-su2", "--param", "hbar", "--values", "1,1/2", "--format", "csv")
    assert out.count("case,equation") == 1 and len(out.splitlines()) == 19


def test_density_demo_notes(capsys):
    _, out, _ = _run(capsys, "verify", "density-demo", "--t", "2", "--samples", "4")
    d = json.loads(out)
    assert d["notes"]["topological_weight"] == pytest.approx((2 - 0.5) / (2 + 0.5))
    assert d["pass"]
