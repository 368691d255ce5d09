import json

import pytest

from circfam.boolmat import BoolMatrix, CirculantSpec, circulant
from circfam.cli import main


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_construct_then_verify(tmp_path, capsys):
    cert = tmp_path / "c.json"
    code, out, _ = run(
        ["construct", "--method", "small-p", "-t", "2", "-p", "3", "-q", "2",
         "-k", "5", "--out", str(cert)],
        capsys,
    )
    assert code == 0 and "order=5" in out and "k_used=5" in out
    code, out, _ = run(["verify", str(cert)], capsys)
    assert code == 0 and out.startswith("PASS p=3 q=2 shift=0")


def test_construct_blowup_defaults(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(["construct", "--method", "blowup", "-t", "2", "-q", "1"], capsys)
    assert code == 0 and "order=6" in out
    cert = tmp_path / "cert_blowup_t2_p5_q1.json"
    assert cert.exists()
    code, out, _ = run(["verify", str(cert)], capsys)
    assert code == 0 and "p=5 q=1" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["--method", "small-p", "-t", "3", "-p", "4", "-q", "2", "-k", "9"],
        ["--method", "mid-p", "-t", "3", "-p", "7", "-q", "2"],
        ["--method", "blowup", "-t", "4", "-q", "2"],
        ["--method", "recursive-q2", "-t", "4"],
    ],
)
def test_every_construct_output_passes_verify(argv, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code, _, _ = run(["construct", *argv, "--out", str(cert)], capsys)
    assert code == 0
    code, out, _ = run(["verify", str(cert)], capsys)
    assert code == 0 and out.startswith("PASS")


def test_construct_range_error_exit_code(capsys):
    code, _, err = run(
        ["construct", "--method", "mid-p", "-t", "3", "-p", "100", "-q", "1"], capsys
    )
    assert code == 2 and "p <= t^2" in err.replace("<=", "<=")


def test_verify_detects_tampering(tmp_path, capsys):
    cert = tmp_path / "c.json"
    run(
        ["construct", "--method", "small-p", "-t", "2", "-p", "3", "-q", "2",
         "-k", "5", "--out", str(cert)],
        capsys,
    )
    doc = json.loads(cert.read_text())
    doc["rows"][0] = [doc["rows"][0][0], 5 if doc["rows"][0][1] != 5 else 4]
    cert.write_text(json.dumps(doc))
    code, out, _ = run(["verify", str(cert)], capsys)
    assert code == 1 and out.startswith("FAIL at (")


def test_verify_handwritten_identity(tmp_path, capsys):
    cert = tmp_path / "id.json"
    cert.write_text(
        json.dumps(
            {
                "k": 4, "t": 2, "p": 1, "q": 1, "shift": 0,
                "rows": [[1, 2], [3, 4]], "cols": [[1, 2], [3, 4]],
            }
        )
    )
    code, out, _ = run(["verify", str(cert)], capsys)
    assert code == 0 and "p=1 q=1" in out


def test_verify_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code, _, err = run(["verify", str(bad)], capsys)
    assert code == 2 and "line" in err


def test_verify_duplicate_members(tmp_path, capsys):
    cert = tmp_path / "dup.json"
    cert.write_text(
        json.dumps(
            {
                "k": 4, "t": 2, "p": 2, "q": 0, "shift": 0,
                "rows": [[1, 2], [1, 2]], "cols": [[1, 2], [1, 3]],
            }
        )
    )
    code, out, _ = run(["verify", str(cert)], capsys)
    assert code == 1 and "duplicate" in out


def test_export_figure_matrix(capsys):
    code, out, _ = run(["export", "-p", "4", "-q", "4", "--format", "text"], capsys)
    assert code == 0
    assert BoolMatrix.from_text(out) == circulant(CirculantSpec(4, 4))


def test_export_pbm_round_trip(tmp_path, capsys):
    out_file = tmp_path / "m.pbm"
    code, _, _ = run(
        ["export", "-p", "1", "-q", "2", "--format", "pbm", "--out", str(out_file)],
        capsys,
    )
    assert code == 0
    assert BoolMatrix.from_pbm(out_file.read_text()) == BoolMatrix.identity(3)


def test_export_json_and_cert(tmp_path, capsys):
    cert = tmp_path / "c.json"
    run(
        ["construct", "--method", "small-p", "-t", "2", "-p", "1", "-q", "1",
         "-k", "4", "--out", str(cert)],
        capsys,
    )
    code, out, _ = run(["export", "--cert", str(cert), "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"] == 2 and doc["lines"] == ["10", "01"]


def test_export_unknown_format_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["export", "-p", "1", "-q", "1", "--format", "bmp"])
    assert exc.value.code == 2


def test_search_exit_codes(tmp_path, capsys):
    witness = tmp_path / "w.json"
    code, out, _ = run(
        ["search", "-t", "2", "-p", "5", "-q", "1", "-k", "5", "--out", str(witness)],
        capsys,
    )
    assert code == 0 and "status=witness" in out and witness.exists()
    code, out, _ = run(["verify", str(witness)], capsys)
    assert code == 0

    code, out, _ = run(["search", "-t", "2", "-p", "5", "-q", "2", "-k", "6"], capsys)
    assert code == 1 and "status=nonexistent" in out

    code, out, _ = run(
        ["search", "-t", "2", "-p", "5", "-q", "3", "-k", "6", "--budget-nodes", "2"],
        capsys,
    )
    assert code == 3 and "status=inconclusive" in out

    code, _, err = run(["search", "-t", "2", "-p", "6", "-q", "1", "-k", "8"], capsys)
    assert code == 2 and "binom" in err


def test_sweep_stream_resume_and_witnesses(tmp_path, capsys):
    out_file = tmp_path / "sweep.jsonl"
    wdir = tmp_path / "wits"
    argv = [
        "sweep", "-t", "2", "--p", "5", "--q", "1:2", "--k", "5:6",
        "--out", str(out_file), "--witness-dir", str(wdir),
    ]
    code, _, _ = run(argv, capsys)
    assert code == 0
    lines = [json.loads(ln) for ln in out_file.read_text().splitlines()]
    assert len(lines) == 4
    statuses = {(rec["k"], rec["q"]): rec["status"] for rec in lines}
    assert statuses[(5, 1)] == "witness" and statuses[(6, 2)] == "nonexistent"
    assert (wdir / "witness_t2_p5_q1_k5.json").exists()

    # resumable: a second run keeps the file stable and adds nothing
    code, _, _ = run(argv, capsys)
    assert code == 0
    assert len(out_file.read_text().splitlines()) == 4


def test_analyze_spec_mode(capsys):
    code, out, _ = run(["analyze", "-p", "3", "-q", "3", "-t", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["all_one_submatrix_check"]["ok"] is True
    assert doc["isolation_lower_bound"]["size"] == 6
    assert doc["isolation_lower_bound"]["exhausted"] is True
    assert doc["order_cap"]["ok"] is True


def test_analyze_certificate_mode(tmp_path, capsys):
    cert = tmp_path / "c.json"
    run(
        ["construct", "--method", "small-p", "-t", "2", "-p", "3", "-q", "2",
         "-k", "5", "--out", str(cert)],
        capsys,
    )
    code, out, _ = run(["analyze", "--cert", str(cert)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["certificate"]["verified"] is True
    assert doc["decomposition_audit"]["violations"] == []
    assert doc["q_cap_check"]["ok"] is True


def test_analyze_needs_arguments(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze"])
    assert exc.value.code == 2
