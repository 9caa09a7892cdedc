import json
import math

import numpy as np
import pytest

from mub_eve.cli import CSV_HEADER, fmt, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    assert lines[0] == CSV_HEADER
    return [tuple(float(v) for v in line.split(",")) for line in lines[1:]]


def test_fmt_contract():
    assert fmt(0.0) == "0"
    assert fmt(0.25) == "0.25"
    assert "e" in fmt(3.2e-5)
    for x in (0.2113248654051871, 1.0, 7.5e-5, -0.109596, 123.456):
        assert float(fmt(x)) == pytest.approx(x, rel=1e-11)


def test_curves_csv_structure_and_crossing(tmp_path, capsys):
    out = tmp_path / "qutrit.csv"
    code, stdout, _ = run(
        capsys,
        "curves", "--dim", "3", "--bases", "2", "--d-min", "0", "--d-max", "0.5",
        "--steps", "101", "--out", str(out), "--format", "csv",
    )
    assert code == 0
    rows = parse_csv(out.read_text(encoding="utf-8"))
    assert len(rows) == 101
    d_vals = [r[0] for r in rows]
    assert all(b > a for a, b in zip(d_vals, d_vals[1:]))
    assert not any(math.isnan(v) for row in rows for v in row)
    # bits columns are the dits columns scaled by log2(3)
    for row in rows:
        assert row[4] == pytest.approx(row[2] * math.log2(3), abs=1e-9)
        assert row[5] == pytest.approx(row[3] * math.log2(3), abs=1e-9)
    # unique crossing bracketing the critical disturbance
    gaps = [r[3] - r[2] for r in rows]
    signs = [s for s in (np.sign(g) if abs(g) > 1e-9 else 0 for g in gaps) if s != 0]
    flips = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    assert flips == 1
    k = max(i for i, g in enumerate(gaps) if g < -1e-9)
    assert d_vals[k] < 0.2113248654 < d_vals[k + 2]


def test_curves_deterministic_without_timestamp(tmp_path, capsys):
    args = [
        "curves", "--dim", "3", "--bases", "2", "--d-min", "0", "--d-max", "0.4",
        "--steps", "11", "--format", "csv", "--no-timestamp",
    ]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, *args, "--out", str(out1))[0] == 0
    assert run(capsys, *args, "--out", str(out2))[0] == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert b"\r" not in out1.read_bytes()


def test_curves_data_section_stable_with_timestamp(tmp_path, capsys):
    args = [
        "curves", "--dim", "4", "--bases", "2", "--d-min", "0", "--d-max", "0.5",
        "--steps", "21", "--format", "csv",
    ]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, *args, "--out", str(out1))
    run(capsys, *args, "--out", str(out2))

    def data_section(path):
        text = path.read_text(encoding="utf-8")
        return text[text.index(CSV_HEADER):]

    assert data_section(out1) == data_section(out2)


def test_curves_csv_round_trip(tmp_path, capsys):
    out = tmp_path / "c.csv"
    run(
        capsys,
        "curves", "--dim", "3", "--bases", "3", "--d-min", "0", "--d-max", "0.5",
        "--steps", "26", "--out", str(out), "--no-timestamp",
    )
    rows = parse_csv(out.read_text(encoding="utf-8"))
    # reformatting the parsed values reproduces the data section byte for byte
    regenerated = [",".join(fmt(v) for v in row) for row in rows]
    original = [
        line for line in out.read_text(encoding="utf-8").splitlines()
        if not line.startswith("#")
    ][1:]
    assert regenerated == original


def test_curves_json_schema(tmp_path, capsys):
    out = tmp_path / "c.json"
    code, _, _ = run(
        capsys,
        "curves", "--dim", "4", "--bases", "2", "--d-min", "0", "--d-max", "0.5",
        "--steps", "26", "--out", str(out), "--format", "json",
    )
    assert code == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["schema"] == "mub-eve/1"
    assert doc["columns"] == CSV_HEADER.split(",")
    assert len(doc["rows"]) == 26
    gaps = [r[3] - r[2] for r in doc["rows"]]
    assert gaps[0] < 0 < gaps[-1]


def test_curves_usage_errors(tmp_path, capsys):
    out = tmp_path / "x.csv"
    code, _, err = run(
        capsys,
        "curves", "--dim", "3", "--d-max", "0.7", "--steps", "11", "--out", str(out),
    )
    assert code == 2 and "d_max" in err
    code, _, _ = run(
        capsys,
        "curves", "--dim", "3", "--d-max", "0.5", "--steps", "1", "--out", str(out),
    )
    assert code == 2


def test_curves_unwritable_path(tmp_path, capsys):
    code, _, err = run(
        capsys,
        "curves", "--dim", "3", "--d-max", "0.5", "--steps", "5",
        "--out", str(tmp_path / "missing-dir" / "x.csv"),
    )
    assert code == 1
    assert "cannot write" in err


def test_critical_two_bases(capsys):
    code, out, _ = run(capsys, "critical", "--dim", "5", "--bases", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "mub-eve/1"
    assert doc["D_c_closed_form"] == pytest.approx((1 - 1 / math.sqrt(5)) / 2, abs=1e-12)
    assert abs(doc["D_c_bisection"] - doc["D_c_closed_form"]) <= 1e-6
    assert abs(doc["gap_at_Dc"]) <= 1e-9


def test_critical_three_bases_no_closed_form(capsys):
    code, out, _ = run(capsys, "critical", "--dim", "3", "--bases", "3")
    assert code == 0
    doc = json.loads(out)
    assert "D_c_closed_form" not in doc
    assert abs(doc["D_c_bisection"] - 0.2247) <= 5e-4


def test_verify_pass(capsys):
    code, out, _ = run(
        capsys, "verify", "--dim", "3", "--bases", "2", "--disturbance", "0.1", "--w", "auto"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"]
    assert all(c["passed"] for c in doc["checks"])
    assert doc["w"] == pytest.approx(0.85, abs=1e-12)


def test_verify_suboptimal_w_flagged_informational_only(capsys):
    code, out, _ = run(
        capsys, "verify", "--dim", "3", "--bases", "2", "--disturbance", "0.1", "--w", "0.99"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"]
    by_name = {c["name"]: c for c in doc["checks"]}
    assert by_name["isometry_unitarity"]["passed"]
    assert by_name["equal_disturbance_fourier"]["passed"]
    assert by_name["w_is_stationary_optimum"]["informational"]
    assert not by_name["w_is_stationary_optimum"]["passed"]


def test_verify_domain_failure_reported_not_raised(capsys):
    code, out, _ = run(
        capsys, "verify", "--dim", "3", "--bases", "2", "--disturbance", "0.9", "--w", "auto"
    )
    assert code == 1
    doc = json.loads(out)
    assert not doc["passed"]
    assert "error" in doc


def test_simulate_deterministic_and_passing(tmp_path, capsys):
    args = [
        "simulate", "--dim", "3", "--bases", "2", "--disturbance", "0.1", "--w", "auto",
        "--rounds", "1000000", "--seed", "42", "--shards", "4",
    ]
    out1, out2 = tmp_path / "s1.json", tmp_path / "s2.json"
    code1, stdout, _ = run(capsys, *args, "--out", str(out1))
    code2, _, _ = run(capsys, *args, "--out", str(out2))
    assert code1 == code2 == 0
    assert "pass" in stdout
    assert out1.read_bytes() == out2.read_bytes()
    doc = json.loads(out1.read_text(encoding="utf-8"))
    assert doc["schema"] == "mub-eve/1"
    assert doc["verdict"]["passed"]
    assert doc["stats"]["rounds"] == 1000000


def test_simulate_zero_rounds_usage_error(tmp_path, capsys):
    code, _, err = run(
        capsys,
        "simulate", "--dim", "3", "--disturbance", "0.1", "--rounds", "0",
        "--out", str(tmp_path / "x.json"),
    )
    assert code == 2
    assert "rounds" in err


def test_simulate_identity_attack_exact(tmp_path, capsys):
    out = tmp_path / "id.json"
    code, _, _ = run(
        capsys,
        "simulate", "--dim", "4", "--disturbance", "0", "--w", "1", "--rounds", "100000",
        "--seed", "3", "--out", str(out),
    )
    assert code == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["stats"]["bob_error_rate"] == [0.0, 0.0]


def test_unknown_flag_exits_two(tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        main(["curves", "--dim", "3", "--frobnicate"])
    assert excinfo.value.code == 2


def test_invalid_w_string_exits_two():
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "--dim", "3", "--disturbance", "0.1", "--w", "best"])
    assert excinfo.value.code == 2
