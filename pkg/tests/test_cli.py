import json
import subprocess
import sys

import pytest

from kfc.catalog import catalog
from kfc.cli import main
from kfc.fileformat import parse_cfk, serialize_cfk
from kfc.split import obfuscate


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name in ("4_1", "11n42", "trefoil", "unknot"):
        p = tmp_path / f"{name}.cfk"
        p.write_text(serialize_cfk(catalog(name).complex))
        paths[name] = str(p)
    bad = tmp_path / "bad.cfk"
    bad.write_text("cfk v1\nname bad\ngen a 0 0\ngen b -1 -1\nd a = b\n")
    paths["bad"] = str(bad)
    broken = tmp_path / "broken.cfk"
    broken.write_text("cfk v1\ngen a 0 0\ngen b 1 -1\nd a = U.b + U.b\n")
    paths["broken"] = str(broken)
    return paths


def test_ord(capsys, files):
    assert run(capsys, "ord", files["11n42"])[:2] == (0, "1\n")


def test_validate_exit_codes(capsys, files):
    assert run(capsys, "validate", files["4_1"])[0] == 0
    code, out, _ = run(capsys, "validate", files["bad"])
    assert code == 1 and "reduced at a" in out
    code, obj = run_json(capsys, "validate", files["bad"])
    assert obj["violations"][0]["kind"] == "reduced"


def test_parse_error_exit_code(capsys, files):
    code, _, err = run(capsys, "homology", files["broken"])
    assert code == 2 and "line 4, col 13" in err
    code, obj = run_json(capsys, "homology", files["broken"])
    assert code == 2 and obj["error"] == "parse-error" and obj["line"] == 4


def test_invalid_complex_blocks_other_commands(capsys, files):
    assert run(capsys, "ord", files["bad"])[0] == 1


def test_split_trefoil(capsys, files):
    code, out, err = run(capsys, "split", files["trefoil"])
    assert code == 3 and "v-partner" in err
    code, obj = run_json(capsys, "split", files["trefoil"])
    assert code == 3 and obj["step"] == "v-partner"


def test_split_and_emit(capsys, files, tmp_path):
    o, _ = obfuscate(catalog("11n42").complex, seed=4, steps=120)
    src = tmp_path / "obf.cfk"
    src.write_text(serialize_cfk(o))
    out_path = tmp_path / "split.cfk"
    code, obj = run_json(capsys, "split", str(src), "--emit", str(out_path))
    assert code == 0 and obj["box_count"] == 8 and obj["replay_ok"]
    emitted = parse_cfk(out_path.read_text())
    code, obj = run_json(capsys, "boxes", str(out_path))
    assert obj["count"] == 8
    assert len(emitted) == 33


def test_bounds(capsys, files):
    code, out, _ = run(capsys, "bounds", files["11n42"], "--ribbon", "--fusion", "1", "--pattern", "5,1")
    assert code == 0
    assert "F    = 5 (exact)" in out and "F_sh = 1 (exact)" in out
    code, obj = run_json(capsys, "bounds", files["unknot"], "--ribbon")
    assert all(obj["rows"][r]["upper"] == 0 for r in ("F", "F_sh", "F_h"))
    code, _, err = run(capsys, "bounds", files["unknot"], "--ribbon", "--fusion", "2")
    assert code == 4 and "exceeds" in err
    code, _, _ = run(capsys, "bounds", files["4_1"], "--fusion", "1")
    assert code == 4


def test_cable(capsys, files):
    code, obj = run_json(capsys, "cable", files["4_1"], "--pattern", "2,1;3,1")
    assert code == 0 and obj["bound"] == 6 and obj["eights"] == 6
    code, obj = run_json(capsys, "cable", files["unknot"], "--pattern", "5,1")
    assert obj["bound"] == 0
    assert run(capsys, "cable", files["4_1"], "--pattern", "4,2")[0] == 2


def test_catalog_listing_and_names(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "11n42" in out
    code, out, _ = run(capsys, "catalog", "6_1")
    assert code == 0 and parse_cfk(out) == catalog("6_1").complex
    assert run(capsys, "catalog", "9_46")[0] == 2


def test_file_argument_accepts_catalog_names(capsys):
    assert run(capsys, "ord", "11n34")[:2] == (0, "1\n")
    assert run(capsys, "ord", "no-such-thing")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "cable", "4_1")[0] == 2


def test_render(capsys, tmp_path):
    out = tmp_path / "c.svg"
    code, obj = run_json(capsys, "render", "4_1", "--pattern", "3,1", "-o", str(out))
    assert code == 0 and obj["panels"] == 4
    assert out.read_text().startswith("<svg")


def test_every_subcommand_has_json(capsys, tmp_path):
    cmds = [
        ["validate", "4_1"],
        ["homology", "4_1"],
        ["ord", "4_1"],
        ["boxes", "4_1"],
        ["split", "4_1"],
        ["cable", "4_1", "--pattern", "3,1"],
        ["bounds", "4_1", "--ribbon"],
        ["render", "4_1", "-o", str(tmp_path / "x.svg")],
        ["catalog"],
        ["catalog", "4_1"],
    ]
    for argv in cmds:
        code, obj = run_json(capsys, *argv)
        assert code == 0 and isinstance(obj, dict)


def test_module_entry_point(files):
    out = subprocess.run([sys.executable, "-m", "kfc", "ord", files["4_1"]], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "1\n"
