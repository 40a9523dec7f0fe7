import json
import shutil
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from lsyscurves.cli import main

CATALOG_DIR = Path(__file__).resolve().parents[1] / "src" / "lsyscurves" / "catalog"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 10
    assert any(line.startswith("chaikin ") for line in lines)
    assert any("lane_riesenfeld" in line for line in lines)
    assert any("decasteljau_subdivision" in line for line in lines)


def test_list_json(capsys):
    code, out, _ = run(capsys, "list", "--json")
    assert code == 0
    entries = json.loads(out)
    assert len(entries) == 10
    by_id = {e["id"]: e for e in entries}
    assert by_id["lane_riesenfeld"]["parameters"] == ["n", "cycles"]


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["list", "--bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_derive_zero_cycles_prints_axiom(capsys):
    code, out, _ = run(capsys, "derive", "chaikin", "--cycles", "0")
    assert code == 0
    assert out.strip() == "P((0,0)) P((4,0)) P((4,4)) P((0,4))"


def test_derive_file_source(capsys):
    code, out, _ = run(capsys, "derive", str(CATALOG_DIR / "eq_demo.lsys"),
                       "--steps", "1")
    assert code == 0
    assert out.strip() == "A(4) A(3.5) A(7.5) B(10) C(1)"


def test_derive_trace_line_count(capsys):
    # axiom + insertion step + two averaging steps
    code, out, _ = run(capsys, "derive", "lane_riesenfeld", "--n", "2",
                       "--cycles", "1", "--format", "trace")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert lines[0].startswith("0 axiom:")
    assert lines[1].startswith("1 p:")
    assert lines[3].startswith("3 q:")


def test_derive_trace_counts_schedule_steps(capsys):
    code, out, _ = run(capsys, "derive", "chaikin", "--cycles", "3",
                       "--format", "trace")
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 3


def test_derive_unknown_source(capsys):
    code, _, err = run(capsys, "derive", "no_such_entry.lsys")
    assert code == 1
    assert "error" in err


def test_derive_bad_domain(capsys):
    code, _, err = run(capsys, "derive", "chaikin", "--cycles", "-1")
    assert code == 1
    assert "error" in err


def test_render_chaikin_segment_count(tmp_path, capsys):
    out_file = tmp_path / "chaikin.svg"
    code, _, _ = run(capsys, "render", "chaikin", "--cycles", "4",
                     "--out", str(out_file))
    assert code == 0
    text = out_file.read_text()
    root = ET.fromstring(text)  # well-formed XML
    assert root.tag.endswith("svg")
    polygons = [el for el in root.iter()
                if el.tag.endswith("polygon")]
    counts = [len(el.get("points").split()) for el in polygons]
    assert counts[0] == 4       # control square
    assert counts[-1] == 64     # 4 * 2**4 result vertices


def test_render_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run(capsys, "render", "lane_riesenfeld", "--n", "2", "--cycles", "3",
        "--out", str(a))
    run(capsys, "render", "lane_riesenfeld", "--n", "2", "--cycles", "3",
        "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_render_point_sweep_locus(tmp_path, capsys):
    out_file = tmp_path / "locus.svg"
    code, _, _ = run(capsys, "render", "decasteljau_point", "--grid", "0.01",
                     "--out", str(out_file))
    assert code == 0
    root = ET.fromstring(out_file.read_text())
    circles = [el for el in root.iter() if el.tag.endswith("circle")]
    # 5 control markers + 101 locus samples
    assert len(circles) == 5 + 101


def test_render_seeded_polygon_is_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run(capsys, "render", "chaikin", "--cycles", "2", "--seed", "7",
        "--out", str(a))
    run(capsys, "render", "chaikin", "--cycles", "2", "--seed", "7",
        "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    run(capsys, "render", "chaikin", "--cycles", "2", "--seed", "8",
        "--out", str(b))
    assert a.read_bytes() != b.read_bytes()


def test_render_subdivision_states(tmp_path, capsys):
    out_file = tmp_path / "sub.svg"
    code, _, _ = run(capsys, "render", "decasteljau_subdivision",
                     "--cycles", "1", "--out", str(out_file))
    assert code == 0
    text = out_file.read_text()
    # Both edge types survive one cycle and vertex states are marked.
    assert "#c8a02c" in text   # internal (I) edges
    assert "#444444" in text   # boundary (E) edges


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "fixed_degree")
    assert code == 0
    assert "PASS  fixed_degree_shortcut" in out


def test_verify_no_match(capsys):
    code, _, err = run(capsys, "verify", "--only", "zzz")
    assert code == 1
    assert "no properties match" in err


def test_verify_corrupted_catalog(tmp_path, capsys):
    bad = tmp_path / "catalog"
    shutil.copytree(CATALOG_DIR, bad)
    path = bad / "chaikin.lsys"
    path.write_text(path.read_text().replace("1/4", "1/3"))
    code, out, _ = run(capsys, "verify", "--only", "dsl",
                       "--catalog-dir", str(bad))
    assert code == 1
    assert "FAIL  dsl_roundtrip" in out
    assert "chaikin" in out
