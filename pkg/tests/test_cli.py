import csv
import io
import os
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from walkcover.cli import fmt, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_coverage_ring_fixture(capsys):
    code, out, _ = run(capsys, "coverage", "--topology", "ring", "--cols", "5", "--start", "2",
                       "--model", "uniform", "--target", "60")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "coverage_time=3"
    table = rows("\n".join(lines[:-1]))
    assert table[0] == ["step", "start_mass", "gamma", "C_k"]
    assert table[1:] == [["0", "", "1", "1"], ["1", "0", "1", "2"], ["2", "0.5", "0.5", "2.5"],
                         ["3", "0.5", "0.5", "3"]]


def test_coverage_zero_bias(capsys, tmp_path):
    path = tmp_path / "trace.csv"
    code, out, _ = run(capsys, "coverage", "--rows", "5", "--cols", "5", "--model", "biased",
                       "--p", "0", "--target", "99", "--csv", str(path))
    assert code == 0
    t = int(out.strip().split("=")[1])
    assert abs(t - 55) <= 5.5
    assert len(rows(path.read_text())) == t + 2


def test_full_random_equals_uniform(capsys, tmp_path):
    _, a, _ = run(capsys, "coverage", "--model", "biased-random", "--p", "0.5", "--r", "1",
                  "--csv", str(tmp_path / "a.csv"))
    _, b, _ = run(capsys, "coverage", "--model", "uniform", "--csv", str(tmp_path / "b.csv"))
    assert a == b


def test_coverage_truncated(capsys, tmp_path):
    code, out, _ = run(capsys, "coverage", "--model", "biased", "--p", "1",
                       "--csv", str(tmp_path / "t.csv"))
    assert code == 2 and out.strip() == "coverage_time=truncated"


@pytest.mark.parametrize("argv", [
    ["coverage", "--model", "biased"],
    ["coverage", "--model", "biased", "--p", "1.5"],
    ["coverage", "--rows", "2"],
    ["coverage", "--topology", "ring"],
    ["coverage", "--target", "0"],
    ["coverage", "--nonsense"],
    ["validate", "--runs", "50"],
    ["sweep-bias", "--bias-range", "0.5", "0.1", "0.1"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 1


def test_sweep_bias_outputs(capsys, tmp_path):
    csv_path, svg_path = tmp_path / "s.csv", tmp_path / "s.svg"
    code, _, _ = run(capsys, "sweep-bias", "--r", "0.2", "--csv", str(csv_path),
                     "--svg", str(svg_path))
    assert code == 0
    table = rows(csv_path.read_text())
    assert table[0] == ["p", "coverage_time", "baseline", "r"]
    assert len(table) == 21
    assert table[1][0] == "0" and table[-1][0] == "0.95"
    first, last = int(table[1][1]), int(table[-1][1])
    assert abs(first - 70) <= 7 and abs(last - 158) <= 15.8
    root = ET.fromstring(svg_path.read_bytes())
    assert root.tag.endswith("svg")
    assert svg_path.read_text().count("<polyline") == 1


def test_sweep_is_byte_identical(capsys, tmp_path):
    outs = []
    for i in range(2):
        c, s = tmp_path / f"{i}.csv", tmp_path / f"{i}.svg"
        run(capsys, "sweep-bias", "--bias-range", "0", "0.9", "0.3", "--csv", str(c),
            "--svg", str(s), "--workers", str(1 + 3 * i))
        outs.append((c.read_bytes(), s.read_bytes()))
    assert outs[0] == outs[1]


def test_sweep_single_point_full_random(capsys):
    code, out, _ = run(capsys, "sweep-bias", "--bias-range", "0.4", "0.4", "0.05", "--r", "1")
    assert code == 0
    table = rows(out)
    assert len(table) == 2 and table[1][1] == table[1][2]


def test_sweep_truncated_point(capsys):
    code, out, _ = run(capsys, "sweep-bias", "--bias-range", "0.9", "1.0", "0.1")
    assert code == 2
    assert rows(out)[-1][:2] == ["1", ""]


def test_crossover(capsys, tmp_path):
    path = tmp_path / "iter.csv"
    code, out, _ = run(capsys, "crossover", "--csv", str(path))
    assert code == 0
    p = float(out.strip().split("=")[1])
    assert abs(p - 0.74) <= 0.03
    table = rows(path.read_text())
    assert table[0] == ["p", "coverage_time", "baseline"] and len(table) > 5


def test_crossover_none(capsys):
    code, out, _ = run(capsys, "crossover", "--r", "1")
    assert code == 2 and out.startswith("crossover=none")


def test_sweep_size(capsys, tmp_path):
    svg_path = tmp_path / "size.svg"
    code, out, _ = run(capsys, "sweep-size", "--sizes", "5", "6", "--svg", str(svg_path))
    assert code == 0
    table = rows(out)
    assert table[0][:4] == ["size", "N", "baseline", "crossover"]
    assert float(table[2][3]) > float(table[1][3])
    ET.fromstring(svg_path.read_bytes())


def test_sweep_size_reports_missing_bracket(capsys):
    # With the default east heading, 7x7 at bias 0 never reaches 99%.
    code, out, _ = run(capsys, "sweep-size", "--sizes", "7")
    assert code == 2 and rows(out)[1][3] == ""
    code, out, _ = run(capsys, "sweep-size", "--sizes", "7", "--lo", "0.5")
    assert code == 0 and 0.8 < float(rows(out)[1][3]) < 0.9


def test_validate(capsys, tmp_path):
    path = tmp_path / "v.csv"
    code, out, _ = run(capsys, "validate", "--topology", "ring", "--cols", "5", "--runs", "2000",
                       "--model", "biased", "--p", "0.75", "--target", "90", "--csv", str(path))
    assert code == 0 and out.startswith("validation=pass")
    assert rows(path.read_text())[0][0] == "step"


def test_validate_failure_exit_code(capsys, tmp_path):
    # Impossible band: any sampling noise fails it.
    code, out, _ = run(capsys, "validate", "--runs", "200", "--bands", "0.0001",
                       "--csv", str(tmp_path / "v.csv"))
    assert code == 3 and out.startswith("validation=fail")


def test_fmt():
    assert fmt(1 / 3) == "0.333333333333"
    assert fmt(None) == "" and fmt(float("nan")) == ""
    assert fmt(3) == "3" and fmt(True) == "true"


def test_backends_write_same_bytes(tmp_path):
    outs = []
    for flag in ("1", "0"):
        env = dict(os.environ, WALKCOVER_PURE_NUMPY=flag)
        res = subprocess.run([sys.executable, "-m", "walkcover", "sweep-bias", "--bias-range",
                              "0", "0.95", "0.35", "--r", "0.1"],
                             env=env, capture_output=True, check=True)
        outs.append(res.stdout)
    assert outs[0] == outs[1]
