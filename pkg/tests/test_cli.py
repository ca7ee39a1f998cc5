import io
import contextlib

import pytest

from mapglue.cli import main
from mapglue.enumeration import enumerate_boundary_maps, enumerate_maps
from mapglue.maps import BoundaryMap, map_to_line


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_count_anchor():
    code, out, _ = run("count", "--family", "spanning", "--q", "4",
                       "--faces", "2", "--root", "on-tree")
    assert code == 0
    assert out.strip() == "15"


def test_count_families():
    assert run("count", "--family", "decorated", "--q", "3", "--faces", "2",
               "--tree-edges", "1")[1].strip() == "9"
    assert run("count", "--family", "mullin", "--edges", "2")[1].strip() == "10"
    assert run("count", "--family", "bubble", "--edges", "0",
               "--tree-edges", "1")[1].strip() == "2"
    assert run("count", "--family", "catalan", "--m", "2",
               "--n", "2")[1].strip() == "15"
    assert run("count", "--family", "forest", "--q", "4", "--faces", "2",
               "--sizes", "1,1")[1].strip() == "6"


def test_count_usage_errors():
    code, _, err = run("count", "--family", "decorated")
    assert code == 2 and "required" in err
    code, _, err = run("count", "--family", "decorated", "--q", "3",
                       "--faces", "1", "--tree-edges", "1")
    assert code == 2 and "Infeasible" in err


def test_series_output():
    code, out, _ = run("series", "--which", "S", "--max-x", "5",
                       "--max-z", "3")
    assert code == 0
    assert "x^3 z^2 : 5" in out.splitlines()
    code, out, _ = run("series", "--which", "B1", "--max-x", "3")
    assert code == 0
    assert out.splitlines() == ["x^0 : 1", "x^1 : 2", "x^2 : 9", "x^3 : 54"]
    code, out, _ = run("series", "--which", "B", "--max-x", "2",
                       "--max-y", "4")
    assert code == 0
    assert "x^1 y^2 : 1" in out.splitlines()


def test_enumerate_prints_catalog():
    code, out, _ = run("enumerate", "--q", "4", "--faces", "1",
                       "--perimeter", "2", "--simple")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("catalog q=4 f=1 ")
    assert lines[-1].startswith("checksum=")
    assert len(lines) == 4  # header + 2 maps + checksum


def test_enumerate_save(tmp_path, monkeypatch):
    monkeypatch.setenv("MAPGLUE_CATALOG_DIR", str(tmp_path))
    code, out, _ = run("enumerate", "--q", "4", "--faces", "1",
                       "--perimeter", "4", "--simple", "--save")
    assert code == 0
    assert "saved" in out
    assert list(tmp_path.glob("*.cat"))


def test_glue_unglue_round_trip():
    pm = enumerate_boundary_maps(q=4, f=1, perimeter=2,
                                 simple=True).maps()[0]
    code, decorated, _ = run("glue", "--boundary", map_to_line(pm),
                             "--tree", "UD")
    assert code == 0
    code, pair, _ = run("unglue", "--decorated", decorated.strip())
    assert code == 0
    word, map_line = pair.splitlines()
    assert word == "tree=UD"
    code, again, _ = run("glue", "--boundary", map_line, "--tree", "UD")
    assert code == 0
    assert again == decorated


def test_glue_file_input(tmp_path):
    pm = enumerate_boundary_maps(q=4, f=1, perimeter=2,
                                 simple=True).maps()[0]
    path = tmp_path / "boundary.map"
    path.write_text(map_to_line(pm) + "\n")
    code, out, _ = run("glue", "--boundary", f"@{path}", "--tree", "UD")
    assert code == 0 and out.startswith("map ")


def test_glue_bridgeless_round_trip(tmp_path):
    for pm in enumerate_maps(2).maps():
        bm = BoundaryMap(pm)
        if bm.perimeter == 2 and bm.is_bridgeless() and not bm.is_simple():
            break
    code, bubble_text, _ = run("glue", "--boundary", map_to_line(pm),
                               "--tree", "UD", "--bridgeless")
    assert code == 0 and bubble_text.startswith("bubble spheres=")
    path = tmp_path / "one.bubble"
    path.write_text(bubble_text)
    code, out, _ = run("unglue", "--decorated", f"@{path}", "--bridgeless")
    assert code == 0
    assert out.splitlines()[0] == "tree=UD"


def test_glue_input_errors():
    code, _, err = run("glue", "--boundary", "nonsense", "--tree", "UD")
    assert code == 2 and "error" in err
    code, _, err = run("glue", "--boundary", "@/no/such/file",
                       "--tree", "UD")
    assert code == 2


def test_sample_deterministic():
    argv = ("sample", "--q", "4", "--faces", "1", "--tree-edges", "1",
            "--seed", "11", "--count", "5")
    code, a, _ = run(*argv)
    _, b, _ = run(*argv)
    assert code == 0
    assert a == b
    assert a.count("decorated vertices=") == 5


def test_sample_unknown_format():
    code, _, err = run("sample", "--q", "4", "--faces", "1", "--tree-edges",
                       "1", "--seed", "1", "--count", "1",
                       "--format", "json")
    assert code == 2 and "UnknownFormat" in err


def test_verify_integrality_and_bubbles():
    code, out, _ = run("verify", "--suite", "integrality")
    assert code == 0
    assert out.strip().endswith("suite integrality: ok")
    code, out, _ = run("verify", "--suite", "bubbles", "--cap", "3")
    assert code == 0


def test_verify_roundtrip_small_cap():
    code, out, _ = run("verify", "--suite", "roundtrip", "--cap", "3")
    assert code == 0
    assert "0 failures" in out


def test_verify_counts_reports_divergences():
    code, out, _ = run("verify", "--suite", "counts")
    assert code == 0
    flagged = [ln for ln in out.splitlines()
               if ln.startswith("flagged divergence")]
    assert any("spanning triangulations f=2" in ln and "3" in ln
               and "6" in ln for ln in flagged)
    assert len(flagged) >= 4
    assert out.strip().endswith("suite counts: ok")


def test_usage_exit_codes():
    assert run()[0] == 2
    assert run("bogus")[0] == 2
    assert run("verify", "--suite", "bogus")[0] == 2
    assert run("--help")[0] == 0
