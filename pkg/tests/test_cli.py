import json
import math

import pytest

from fordpu.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_order_six(capsys):
    code, out, _ = run(capsys, "classify", "--word", "I1I4I1I2I1I4I3", "--h", "0.5", "--t", "2*pi/3")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "regular-elliptic" and data["order"] == 6


def test_classify_bad_word(capsys):
    code, _, err = run(capsys, "classify", "--word", "I5")
    assert code != 0 and err


def test_verify_default_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_verify_out_of_scope_and_invalid(capsys):
    assert run(capsys, "verify", "--h", "0.6", "--t", "3.0")[0] == 2
    code, _, err = run(capsys, "verify", "--h", "sqrt(2)", "--t", "3.0")
    assert code == 2 and "fordpu verify" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["scan", "--grid", "many"])
    assert exc.value.code == 2
    capsys.readouterr()
    assert run(capsys, "scan", "--grid", "1")[0] == 2
    assert run(capsys, "mesh", "--h", "1.2", "--t", "1.0")[0] == 2


def test_scan_outputs(tmp_path, capsys):
    csv_path, curves = tmp_path / "s.csv", tmp_path / "c.json"
    code, _, _ = run(capsys, "scan", "--grid", "3", "--out", str(csv_path), "--curves", str(curves),
                     "--word", "I1I2I3I4")
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "h,t,I1I2I3I4" and len(lines) == 10
    assert json.loads(curves.read_text())["words"] == ["I1I2I3I4"]


def test_scan_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run(capsys, "scan", "--grid", "12", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_mesh_command(tmp_path, capsys):
    path = tmp_path / "m.obj"
    assert run(capsys, "mesh", "--word", "CBC", "--grid", "6", "--out", str(path))[0] == 0
    text = path.read_text()
    assert text.startswith("# I(CBC)")
    assert sum(1 for ln in text.splitlines() if ln.startswith("v ")) == 2 + 5 * 12


def test_spheres_command(capsys):
    code, out, _ = run(capsys, "spheres", "--k-max", "1")
    data = json.loads(out)
    assert code == 0 and data["dim"] == 2 and len(data["spheres"]) == 15
    row = next(r for r in data["spheres"] if r["word"] == "C")
    assert row["center"] == pytest.approx([-1, 0, -math.sqrt(15) / 2])
    assert row["radius"] == pytest.approx(2)


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("h = 0.5\nt = 2*pi/3\nword = I1I4I1I2I1I4I3\n")
    code, out, _ = run(capsys, "classify", "--config", str(cfg))
    assert code == 0 and json.loads(out)["order"] == 6
    code, out, _ = run(capsys, "classify", "--config", str(cfg), "--word", "I1I4")
    assert json.loads(out)["word"] == "I1I4"
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run(capsys, "classify", "--config", str(bad), "--word", "I1")[0] == 2
    assert run(capsys, "classify", "--config", str(tmp_path / "missing.cfg"), "--word", "I1")[0] == 2


def test_verify_report_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(capsys, "verify", "--grid", "256", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()
