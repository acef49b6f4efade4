"""CLI subcommands: exit codes, file edits, report formats, serve."""

import hashlib
import json
import shutil
import socket
import subprocess
import sys
import time
import urllib.request
from pathlib import Path

import pytest

from tgrid import load_grid
from tgrid.cli import main

REPO_FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "paper-table1.json"


@pytest.fixture()
def fixture_copy(tmp_path):
    target = tmp_path / "grid.tgrid.json"
    shutil.copyfile(REPO_FIXTURE, target)
    return target


def read_grid(path):
    return load_grid(Path(path).read_bytes())


# --- init ---------------------------------------------------------------------


def test_init_defaults(tmp_path, capsys):
    path = tmp_path / "demo.tgrid.json"
    assert main(["init", str(path)]) == 0
    assert "wrote" in capsys.readouterr().out
    grid = read_grid(path)
    assert len(grid.kpis) == 8
    assert grid.kpis[0].id == "appeals-to-human-instinct"
    assert (
        grid.bands.advanced_capacity,
        grid.bands.intermediate_capacity,
        grid.bands.novice_capacity,
    ) == (6, 2, 3)
    assert grid.revision == 0
    assert main(["validate", str(path)]) == 0


def test_init_minimal_custom(tmp_path):
    entities = tmp_path / "entities.json"
    entities.write_text(json.dumps([{"name": "Solo Co", "subject": True}]))
    kpis = tmp_path / "kpis.json"
    kpis.write_text(json.dumps(["Quality", {"name": "Reach", "id": "reach"}]))
    path = tmp_path / "mini.tgrid.json"
    assert (
        main(
            [
                "init",
                str(path),
                "--kpis",
                str(kpis),
                "--entities",
                str(entities),
                "--bands",
                "1,1,1",
            ]
        )
        == 0
    )
    grid = read_grid(path)
    assert [k.id for k in grid.kpis] == ["quality", "reach"]
    assert grid.entities[0].id == "solo-co"
    assert grid.bands.advanced_capacity == 1


def test_init_rejects_zero_band(tmp_path, capsys):
    assert main(["init", str(tmp_path / "x.json"), "--bands", "0,1,1"]) == 1
    assert "error" in capsys.readouterr().err


def test_init_rejects_garbage_bands_and_missing_files(tmp_path):
    assert main(["init", str(tmp_path / "x.json"), "--bands", "a,b,c"]) == 1
    assert main(["init", str(tmp_path / "x.json"), "--entities", str(tmp_path / "none.json")]) == 1
    assert main(["init", str(tmp_path / "x.json"), "--kpis", str(tmp_path / "none.json")]) == 1


def test_init_rejects_two_subjects(tmp_path):
    entities = tmp_path / "entities.json"
    entities.write_text(
        json.dumps([{"name": "A", "subject": True}, {"name": "B", "subject": True}])
    )
    assert main(["init", str(tmp_path / "x.json"), "--entities", str(entities)]) == 1


# --- validate -------------------------------------------------------------------


def test_validate_reports_violations(tmp_path, capsys, fixture_copy):
    document = json.loads(fixture_copy.read_text())
    document["placements"].append(
        {"kpi": "rundle", "entity": "coursera", "band": "advanced", "row": 1}
    )
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(document))
    assert main(["validate", str(bad)]) == 1
    assert "DUP_CELL" in capsys.readouterr().out


def test_validate_unparseable(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("running out of tokens")
    assert main(["validate", str(path)]) == 1
    assert "PARSE" in capsys.readouterr().err


# --- place / unplace / move ------------------------------------------------------


def test_place_then_report_reflects_counts(tmp_path, capsys):
    path = tmp_path / "g.json"
    main(["init", str(path)])
    capsys.readouterr()
    assert main(["place", str(path), "rundle", "my-company", "advanced", "0"]) == 0
    capsys.readouterr()
    assert main(["report", str(path), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    rundle = next(a for a in payload["assessments"] if a["kpi"] == "rundle")
    assert rundle["advanced_count"] == 1
    assert rundle["competence"] == "advanced"
    assert rundle["strategy"] == "table_stakes"


def test_place_and_move_flow(fixture_copy, capsys):
    path = str(fixture_copy)
    assert main(["place", path, "rundle", "coursera", "intermediate", "0"]) == 0
    out = capsys.readouterr().out
    assert "revision 1" in out
    grid = read_grid(path)
    assert grid.revision == 1
    # illegal duplicate placement leaves the file unchanged
    before = Path(path).read_bytes()
    assert main(["place", path, "rundle", "coursera", "intermediate", "1"]) == 1
    err = capsys.readouterr().err
    assert "DUP_ENTITY" in err
    assert Path(path).read_bytes() == before


def test_move_subject_changes_competence(fixture_copy, capsys):
    path = str(fixture_copy)
    assert main(["report", path, "--format", "csv"]) == 0
    before_csv = capsys.readouterr().out
    assert main(["move", path, "likeability", "my-new-uni", "advanced", "3"]) == 0
    capsys.readouterr()
    assert main(["report", path, "--format", "csv"]) == 0
    after_csv = capsys.readouterr().out
    before_row = next(r for r in before_csv.splitlines() if r.startswith("likeability"))
    after_row = next(r for r in after_csv.splitlines() if r.startswith("likeability"))
    assert "intermediate" in before_row
    assert "advanced" in after_row


def test_unplace_and_validate(fixture_copy, capsys):
    path = str(fixture_copy)
    assert main(["unplace", path, "rundle", "my-new-uni"]) == 0
    assert main(["validate", path]) == 0
    capsys.readouterr()
    assert main(["unplace", path, "rundle", "my-new-uni"]) == 1
    assert "UNKNOWN_REF" in capsys.readouterr().err


# --- report ---------------------------------------------------------------------


def test_report_markdown_fixture(fixture_copy, capsys):
    assert main(["report", str(fixture_copy), "--format", "md"]) == 0
    out = capsys.readouterr().out
    vertical = next(line for line in out.splitlines() if "Vertical Integration" in line)
    assert "Differentiator" in vertical


def test_report_json_parses(fixture_copy, capsys):
    assert main(["report", str(fixture_copy), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["grid_revision"] == 0


def test_report_deterministic(fixture_copy, capsys):
    main(["report", str(fixture_copy)])
    first = capsys.readouterr().out
    main(["report", str(fixture_copy)])
    assert capsys.readouterr().out == first


def test_report_load_failure(tmp_path, capsys):
    missing = tmp_path / "missing.json"
    assert main(["report", str(missing)]) == 1
    assert "error" in capsys.readouterr().err


def test_report_chunk_limit_env(fixture_copy, capsys, monkeypatch):
    monkeypatch.setenv("TGRID_CHUNK_LIMIT", "9")
    main(["report", str(fixture_copy)])
    assert "Warnings:" not in capsys.readouterr().out
    monkeypatch.setenv("TGRID_CHUNK_LIMIT", "boom")
    assert main(["report", str(fixture_copy)]) == 1


# --- whatif ---------------------------------------------------------------------


def test_whatif_leaves_file_untouched(fixture_copy, capsys):
    digest = hashlib.sha256(fixture_copy.read_bytes()).hexdigest()
    assert main(["whatif", str(fixture_copy), "move", "likeability", "my-new-uni", "advanced", "3"]) == 0
    out = capsys.readouterr().out
    assert "likeability:" in out
    assert "competence: intermediate -> advanced" in out
    assert hashlib.sha256(fixture_copy.read_bytes()).hexdigest() == digest


def test_whatif_prints_only_target_kpi(fixture_copy, capsys):
    assert (
        main(
            [
                "whatif",
                str(fixture_copy),
                "place",
                "appeals-to-human-instinct",
                "coursera",
                "novice",
                "2",
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    kpi_headers = [line for line in out.splitlines() if not line.startswith(" ")]
    assert kpi_headers == ["appeals-to-human-instinct:"]


def test_whatif_illegal_and_usage_errors(fixture_copy, capsys):
    assert main(["whatif", str(fixture_copy), "move", "likeability", "my-new-uni", "intermediate", "1"]) == 1
    assert "DUP_CELL" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exit_info:
        main(["whatif", str(fixture_copy), "place", "likeability", "coursera"])
    assert exit_info.value.code == 2


def test_usage_error_unknown_subcommand():
    with pytest.raises(SystemExit) as exit_info:
        main(["explode"])
    assert exit_info.value.code == 2


# --- serve ----------------------------------------------------------------------


def free_port():
    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    sock.close()
    return port


def wait_for(url, timeout=15.0):
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        try:
            with urllib.request.urlopen(url, timeout=1) as response:
                return response.read().decode()
        except OSError:
            time.sleep(0.1)
    raise TimeoutError(f"no response from {url}")


def test_serve_healthz_and_ui(tmp_path):
    ui_dir = tmp_path / "dist"
    ui_dir.mkdir()
    (ui_dir / "index.html").write_text("<title>tgrid board</title>")
    port = free_port()
    process = subprocess.Popen(
        [
            sys.executable,
            "-m",
            "tgrid.cli",
            "serve",
            "--port",
            str(port),
            "--ui-dir",
            str(ui_dir),
        ],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
    )
    try:
        assert wait_for(f"http://127.0.0.1:{port}/healthz") == "ok"
        index = wait_for(f"http://127.0.0.1:{port}/")
        assert "tgrid board" in index
    finally:
        process.terminate()
        process.wait(timeout=10)


def test_serve_port_conflict_exits_1():
    sock = socket.socket()
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    sock.bind(("127.0.0.1", 0))
    sock.listen(1)
    port = sock.getsockname()[1]
    try:
        result = subprocess.run(
            [sys.executable, "-m", "tgrid.cli", "serve", "--port", str(port)],
            capture_output=True,
            text=True,
            timeout=30,
        )
        assert result.returncode == 1
        assert "cannot bind" in result.stderr
    finally:
        sock.close()


def test_serve_rejects_missing_ui_dir(tmp_path, capsys):
    assert main(["serve", "--ui-dir", str(tmp_path / "nope")]) == 1
    assert "not a directory" in capsys.readouterr().err
