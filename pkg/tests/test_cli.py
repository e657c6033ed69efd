import math
import os
import subprocess
import sys

import numpy as np
import pytest

from cpgraphene.cli import SweepSpec, main, read_csv
from cpgraphene.force import force_l0
from cpgraphene.kinematics import GrapheneParams, Scenario
from cpgraphene.materials import OscillatorModel, Vacuum, write_permittivity_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    return [dict(zip(header, l.split(","))) for l in lines[1:]]


def test_compute_classical(capsys):
    code, out, _ = run(capsys, "compute", "--substrate", "ideal-metal", "--mode", "classical",
                       "--a-um", "10", "--alpha0-cm3", "1")
    assert code == 0
    row = parse(out)[0]
    assert float(row["force_n"]) == pytest.approx(-3.106e-7, rel=1e-3)
    assert out.startswith("# cpgraphene ")


def test_compute_fig1_point(capsys):
    code, out, _ = run(capsys, "compute", "--a-um", "6", "--temp-k", "300", "--delta-ev", "0.2",
                       "--mu-ev", "0.05", "--substrate", "sio2", "--mode", "l0")
    row = parse(out)[0]
    s = Scenario.from_um(6.0)
    sio2 = OscillatorModel.sio2()
    expected = force_l0(s, GrapheneParams(0.2, 0.05), sio2).total / force_l0(s, None, sio2).total
    assert float(row["ratio_to_bare"]) == pytest.approx(expected, rel=1e-8)
    # between the bare plate and the ideal-metal envelope of the gap figure
    assert 1.0 < float(row["ratio_to_bare"]) <= 4.81 / 2.81


def test_vacuum_equals_unit_table(capsys, tmp_path):
    table = tmp_path / "one.txt"
    table.write_text("1e-6 1.0\n1e3 1.0\n")
    _, out1, _ = run(capsys, "compute", "--substrate", "vacuum", "--delta-ev", "0", "--mu-ev", "0",
                     "--mode", "l0", "--a-um", "6")
    _, out2, _ = run(capsys, "compute", "--substrate", f"table:{table}", "--delta-ev", "0",
                     "--mu-ev", "0", "--mode", "l0", "--a-um", "6")
    assert parse(out1)[0]["force_n"] == parse(out2)[0]["force_n"]


def test_sweep_count_two_and_determinism(capsys, tmp_path):
    out = tmp_path / "s.csv"
    args = ["sweep", "--start", "5.6", "--stop", "60", "--count", "2", "--spacing", "log",
            "--delta-ev", "0.2", "--mu-ev", "0.075", "--mode", "l0", "--out", str(out)]
    assert main(args) == 0
    first = out.read_bytes()
    assert main(args) == 0
    assert out.read_bytes() == first
    meta, rows = read_csv(out)
    assert len(rows) == 2
    assert float(rows[0]["a_um"]) == 5.6 and float(rows[1]["a_um"]) == 60.0
    assert meta["mode"] == "l0" and meta["delta_ev"] == "0.2"


def test_csv_round_trip(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--axis", "mu", "--start", "0", "--stop", "0.2", "--count", "3",
                 "--a-um", "7", "--delta-ev", "0.1", "--mode", "l0", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    for row, mu in zip(rows, (0.0, 0.1, 0.2)):
        assert float(row["mu_ev"]) == mu
        assert float(row["delta_ev"]) == 0.1 and float(row["a_um"]) == 7.0
        s = Scenario.from_um(7.0)
        res = force_l0(s, GrapheneParams(0.1, mu), OscillatorModel.sio2())
        assert float(row["force_n"]) == pytest.approx(res.total, rel=5e-9)
        assert row["substrate"] == "sio2" and row["mode"] == "l0"


def test_delta_sweep_monotone(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["sweep", "--axis", "delta", "--start", "0", "--stop", "0.5", "--count", "6",
                 "--a-um", "6", "--mu-ev", "0", "--mode", "l0", "--out", str(out)]) == 0
    ratio = [float(r["ratio_to_bare"]) for r in read_csv(out)[1]]
    assert all(r1 >= r2 for r1, r2 in zip(ratio, ratio[1:]))


def test_separation_sweep_delta_f_monotone(tmp_path):
    out = tmp_path / "a.csv"
    assert main(["sweep", "--start", "1", "--stop", "60", "--count", "30", "--spacing", "log",
                 "--delta-ev", "0.2", "--mu-ev", "0.075", "--mode", "l0", "--out", str(out)]) == 0
    df = np.array([float(r["delta_f"]) for r in read_csv(out)[1]])
    assert np.all(np.diff(df) > 0)


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec("separation", 2.0, 1.0, 5)
    with pytest.raises(ValueError):
        SweepSpec("separation", 1.0, 2.0, 1)
    with pytest.raises(ValueError):
        SweepSpec("delta", 0.0, 1.0, 3, "log")
    assert SweepSpec("mu", 0.0, 0.3, 4).points()[-1] == 0.3


def test_exit_codes(capsys, tmp_path):
    assert main(["compute", "--a-um", "-1"]) == 2
    assert main(["compute"]) == 2
    assert main(["compute", "--a-um", "6", "--mode", "asymptotic"]) == 2
    assert main(["figure", "fig9"]) == 2
    with pytest.raises(SystemExit) as info:
        main(["compute", "--mode", "bogus"])
    assert info.value.code == 2
    assert main(["compute", "--a-um", "6", "--substrate", f"table:{tmp_path / 'none'}"]) == 4
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n0.5 1\n")
    assert main(["compute", "--a-um", "6", "--substrate", f"table:{bad}"]) == 4
    assert main(["compute", "--a-um", "0.2", "--delta-ev", "0.1", "--mu-ev", "0.1",
                 "--rel-tol", "1e-8", "--out", str(tmp_path / "x.csv")]) == 0
    capsys.readouterr()


def test_numerical_failure_exit_code_and_no_partial_file(tmp_path, monkeypatch):
    from cpgraphene import cli
    from cpgraphene.exceptions import QuadratureError

    calls = {"n": 0}
    real = cli.run_record

    def flaky(*args, **kwargs):
        calls["n"] += 1
        if calls["n"] == 2:
            raise QuadratureError("forced")
        return real(*args, **kwargs)
    monkeypatch.setattr(cli, "run_record", flaky)
    out = tmp_path / "part.csv"
    code = main(["sweep", "--start", "6", "--stop", "7", "--count", "3", "--mode", "l0",
                 "--out", str(out)])
    assert code == 3
    assert not out.exists()
    assert not os.path.exists(f"{out}.part")


def test_figure_presets(capsys, tmp_path):
    out = tmp_path / "f2.csv"
    assert main(["figure", "fig2", "--points", "4", "--out", str(out)]) == 0
    meta, rows = read_csv(out)
    assert list(rows[0]) == ["a_um", "mu=0", "mu=0.025", "mu=0.05", "mu=0.075", "mu=0.1"]
    assert float(rows[0]["a_um"]) == 5.6 and float(rows[-1]["a_um"]) == 60.0
    out = tmp_path / "f6b.csv"
    assert main(["figure", "fig6b", "--points", "3", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert list(rows[0]) == ["a_um", "mu=0.15", "mu=0.2", "mu=0.25"]
    assert float(rows[-1]["a_um"]) == 30.0
    out = tmp_path / "f4.csv"
    assert main(["figure", "fig4", "--points", "3", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert list(rows[0])[1:] == ["delta=0.15", "delta=0.2", "delta=0.15 freestanding",
                                 "delta=0.2 freestanding"]
    out = tmp_path / "f1.csv"
    assert main(["figure", "fig1a", "--points", "3", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert float(rows[-1]["delta_ev"]) == 0.5
    assert float(rows[0]["ideal-metal"]) == pytest.approx(4.81 / 2.81, rel=1e-8)


def test_crossover_rows(capsys):
    code, out, _ = run(capsys, "crossover", "--delta-ev", "0.2", "--mu-ev", "0", "0.1",
                       "--a-low-um", "1", "--a-high-um", "100")
    assert code == 0
    rows = parse(out)
    assert [r["status"] for r in rows] == ["crossed", "below"]
    assert float(rows[1]["a_cross_um"]) == 1.0
    code, out, _ = run(capsys, "crossover", "--delta-ev", "0.2", "--mu-ev", "0",
                       "--substrate", "ideal-metal", "--a-low-um", "2", "--a-high-um", "50")
    row = parse(out)[0]
    assert row["status"] == "below" and float(row["a_cross_um"]) == 2.0
    code, out, _ = run(capsys, "crossover", "--delta-ev", "0.2", "--mu-ev", "0",
                       "--a-low-um", "1", "--a-high-um", "2")
    row = parse(out)[0]
    assert row["status"] == "not-reached" and math.isnan(float(row["a_cross_um"]))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cpgraphene", "compute", "--a-um", "10",
                           "--mode", "classical", "--substrate", "ideal-metal"],
                          capture_output=True, text=True, check=True)
    assert "classical" in proc.stdout
