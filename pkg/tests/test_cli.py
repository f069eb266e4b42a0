import csv
import io
import json

import pytest

from csl.cli import main


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def finite_file(tmp_path, *sets, name="t.json"):
    return write(tmp_path, name, {"ambient": {"free_rank": 1, "torsion": []},
                                  "colors": [{"kind": "finite", "elements": list(s)} for s in sets]})


def semilinear_file(tmp_path):
    piece = lambda b: {"base": b, "generators": [2]}  # noqa: E731
    return write(tmp_path, "s.json", {"colors": [{"kind": "semilinear", "pieces": [piece(0), piece(1)]}]})


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sumset(tmp_path, capsys):
    code, out, _ = run(["sumset", "--input", finite_file(tmp_path, [0, 1]), "--h", "3"], capsys)
    assert code == 0 and json.loads(out) == [0, 1, 2, 3]


def test_sumset_structured_needs_window(tmp_path, capsys):
    code, _, err = run(["sumset", "--input", semilinear_file(tmp_path), "--h", "2"], capsys)
    assert code == 3 and "window" in err
    code, out, _ = run(["sumset", "--input", semilinear_file(tmp_path), "--h", "2", "--window", "0:5"], capsys)
    assert code == 0 and json.loads(out) == [0, 1, 2, 3, 4, 5]


def test_missing_h_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["sumset", "--input", finite_file(tmp_path, [0, 1])])
    assert err.value.code == 2


def test_bad_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    code, _, err = run(["sumset", "--input", str(p), "--h", "1"], capsys)
    assert code == 2 and "invalid JSON" in err


def test_cover_verify_and_roundtrip(tmp_path, capsys):
    inp = finite_file(tmp_path, [0, 1], [0, 2])
    cert = tmp_path / "c.json"
    code, _, _ = run(["cover", "--input", inp, "--r", "2", "--h", "3,2", "--verify", "--output", str(cert)], capsys)
    obj = json.loads(cert.read_text())
    assert code == 0 and obj["status"] == "verified" and obj["size"] <= obj["bound"] == 9
    code, out, _ = run(["verify", "--input", inp, "--certificate", str(cert)], capsys)
    again = json.loads(out)
    assert code == 0 and again == obj


def test_verify_detects_tampering(tmp_path, capsys):
    inp = finite_file(tmp_path, [0, 1])
    cert = write(tmp_path, "c.json", {"method": "finite", "r": 2, "h": [3], "X": [0], "bound": 3, "status": "verified"})
    code, out, _ = run(["verify", "--input", inp, "--certificate", cert], capsys)
    obj = json.loads(out)
    assert code == 4 and obj["status"] == "failed" and obj["counterexample"] == 4


def test_cover_threshold_exit(tmp_path, capsys):
    code, _, err = run(["cover", "--input", semilinear_file(tmp_path), "--r", "2", "--h", "3", "--window", "0:40"], capsys)
    assert code == 5 and "= 4, got h=3" in err


def test_cover_semilinear_window(tmp_path, capsys):
    argv = ["cover", "--input", semilinear_file(tmp_path), "--r", "2", "--h", "6", "--window", "0:80", "--verify"]
    code, out, _ = run(argv, capsys)
    assert code == 0 and json.loads(out)["status"] == "verified"


def test_cover_shape_error(tmp_path, capsys):
    argv = ["cover", "--input", finite_file(tmp_path, [0, 1]), "--r", "2", "--h", "1", "--method", "submonoid"]
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_cover_inhomogeneous(tmp_path, capsys):
    inp = write(tmp_path, "b.json", {"colors": [{"kind": "finite", "elements": [0, 1]}], "shift": [0, 4]})
    argv = ["cover", "--input", inp, "--r", "2", "--h", "3", "--method", "inhomogeneous", "--verify"]
    code, out, _ = run(argv, capsys)
    obj = json.loads(out)
    assert code == 0 and obj["status"] == "verified" and obj["B"] == [0, 4] and obj["size"] <= 9


def test_capacity_exit(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CSL_CAPACITY", "enumerate=50")
    code, _, _ = run(["layers", "--input", finite_file(tmp_path, [0, 100]), "--h", "4", "--t", "1"], capsys)
    assert code == 6


def test_layers(tmp_path, capsys):
    code, out, _ = run(["layers", "--input", finite_file(tmp_path, [0, 1, 2]), "--h", "2", "--t", "2"], capsys)
    assert code == 0 and json.loads(out)["layer"] == [2]
    code, out, _ = run(["layers", "--input", finite_file(tmp_path, [0, 1]), "--h", "3", "--t", "1", "--structure"], capsys)
    obj = json.loads(out)
    assert obj["layer"] == [0, 1, 2, 3]
    s = obj["structure"]
    assert (s["C"], s["c"], s["d"], s["D"]) == ([], 0, 0, [])


def test_layers_figure(tmp_path, capsys):
    fig = tmp_path / "p.png"
    argv = ["layers", "--input", finite_file(tmp_path, [0, 1, 3]), "--h", "4", "--t", "2", "--figure", str(fig)]
    code, _, _ = run(argv, capsys)
    assert code == 0 and fig.stat().st_size > 0


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_scan(tmp_path, capsys):
    fig = tmp_path / "scan.png"
    argv = ["scan", "--input", finite_file(tmp_path, [0, 1]), "--r", "2", "--h-min", "1", "--h-max", "6",
            "--figure", str(fig)]
    code, out, _ = run(argv, capsys)
    table = rows(out)
    assert code == 0 and len(table) == 6
    assert list(table[0]) == ["h1", "method", "size", "bound", "oracle_min", "status"]
    assert all(r["status"] == "verified" and int(r["size"]) <= 3 for r in table)
    assert all(int(r["oracle_min"]) <= int(r["size"]) for r in table)
    assert fig.stat().st_size > 0


def test_scan_parallel_matches_serial(tmp_path, capsys):
    base = ["scan", "--input", finite_file(tmp_path, [0, 1], [0, 3]), "--r", "2", "--h-min", "0,0", "--h-max", "2,2"]
    _, serial, _ = run(base, capsys)
    _, parallel, _ = run(base + ["--jobs", "2"], capsys)
    assert serial == parallel


def test_scan_layers_flags_first(tmp_path, capsys):
    argv = ["scan", "--input", finite_file(tmp_path, [0, 1, 3]), "--r", "2", "--t", "2",
            "--h-min", "1", "--h-max", "8"]
    code, out, _ = run(argv, capsys)
    table = rows(out)
    assert code == 0 and "first_stabilized" in table[0]
    flagged = [r for r in table if r["first_stabilized"] == "true"]
    assert len(flagged) == 1


def test_scan_empty_box(tmp_path, capsys):
    argv = ["scan", "--input", finite_file(tmp_path, [0, 1]), "--r", "2", "--h-min", "3", "--h-max", "2"]
    code, out, _ = run(argv, capsys)
    assert code == 0 and out == "h1,method,size,bound,oracle_min,status\n"


def test_scan_threshold_rows(tmp_path, capsys):
    argv = ["scan", "--input", semilinear_file(tmp_path), "--r", "2", "--h-min", "3", "--h-max", "4",
            "--window", "0:40"]
    code, out, _ = run(argv, capsys)
    table = rows(out)
    assert code == 0 and table[0]["status"] == "threshold>=4" and table[1]["status"] == "verified"


def test_scan_length_mismatch(tmp_path, capsys):
    argv = ["scan", "--input", finite_file(tmp_path, [0, 1]), "--r", "2", "--h-min", "1,1", "--h-max", "2,2"]
    code, _, _ = run(argv, capsys)
    assert code == 2
