"""CLI behaviour and golden outputs.

Golden files live in tests/golden. Regenerate them after an intended change
with ``python tests/test_cli.py``.
"""
from __future__ import annotations

import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from sphtiling.cli import run

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = {
    "catalog_show_8_2.json": ["--format", "json", "catalog", "show", "8,2"],
    "solve_antiprism_5.json": ["--format", "json", "solve", "antiprism", "--n", "5"],
    "solve_prism_endpoint.json": ["--format", "json", "solve", "prism", "--alpha", "acos(1/8)"],
    "enumerate_ico.json": ["--format", "json", "enumerate", "--alpha", "0.4", "--beta", "0.8", "--gamma", "0.4"],
    "generate_merges_m3.json": ["--format", "json", "generate", "merges", "--m", "3", "--dedup"],
    "catalog_list.txt": ["catalog", "list"],
}


def _run(argv):
    buf = io.StringIO()
    code = run(argv, buf)
    return code, buf.getvalue()


def _close(a, b, path="$"):
    """Structural equality with floats compared to 1e-12 relative."""
    if isinstance(a, float) or isinstance(b, float):
        assert a == pytest.approx(b, rel=1e-12, abs=1e-12), path
    elif isinstance(a, dict):
        assert a.keys() == b.keys(), path
        for k in a:
            _close(a[k], b[k], f"{path}.{k}")
    elif isinstance(a, list):
        assert len(a) == len(b), path
        for i, (x, y) in enumerate(zip(a, b)):
            _close(x, y, f"{path}[{i}]")
    else:
        assert a == b, path


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name):
    code, text = _run(GOLDEN_CASES[name])
    assert code == 0
    want = (GOLDEN / name).read_text()
    if name.endswith(".json"):
        got, exp = json.loads(text), json.loads(want)
        # residuals are rounding noise; only their size matters
        for doc in (got, exp):
            doc["result"].pop("residuals", None)
            ver = doc["result"].get("verification")
            if ver:
                ver.pop("r1"), ver.pop("r2"), ver.pop("edge_mismatch"), ver.pop("avc_defects")
        _close(got, exp)
    else:
        assert text == want


def test_json_envelope():
    code, text = _run(["--format", "json", "--units", "radians", "catalog", "show", "ico"])
    doc = json.loads(text)
    assert code == 0
    assert (doc["schema"], doc["version"], doc["units"]) == ("sphtiling.cli", 1, "radians")
    assert doc["result"]["angles"][0] == pytest.approx(0.4 * math.pi)


def test_units_for_bare_numbers():
    _, a = _run(["--format", "json", "solve", "prism", "--alpha", "0.6"])
    _, b = _run(["--format", "json", "--units", "radians", "solve", "prism", "--alpha", str(0.6 * math.pi)])
    ra, rb = json.loads(a)["result"], json.loads(b)["result"]
    assert ra["angles"][1] * math.pi == pytest.approx(rb["angles"][1], rel=1e-12)


@pytest.mark.parametrize(
    "argv",
    [
        ["catalog", "show", "99,1"],
        ["solve", "antiprism", "--n", "2"],
        ["solve", "prism"],
        ["export", "no-such-tiling"],
        ["enumerate", "--alpha", "x", "--beta", "1", "--gamma", "1"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(argv):
    assert _run(argv)[0] == 2


def test_flips_beyond_range_exit_1():
    code, text = _run(["--format", "json", "generate", "flips", "--k", "9"])
    doc = json.loads(text)
    assert code == 1 and doc["result"]["found"] is False


def test_generate_flips_k3():
    code, text = _run(["--format", "json", "generate", "flips", "--k", "3"])
    doc = json.loads(text)
    assert code == 0 and doc["result"]["valid"]
    assert doc["result"]["avc"] == "15ab2, 18a2bc2, 3a3c4"


def test_verify_round_trip(tmp_path):
    out = tmp_path / "oct.json"
    assert _run(["export", "cuboctahedron", "--format", "json", "--out", str(out)])[0] == 0
    code, text = _run(["verify", str(out)])
    assert code == 0 and "valid" in text
    assert _run(["verify", str(out), "--protoset", "prism@alpha=0.6*pi"])[0] == 1
    assert _run(["verify", str(tmp_path / "missing.json")])[0] == 2


def test_export_obj_and_closure_failure(tmp_path):
    out = tmp_path / "prism.obj"
    assert _run(["export", "prism", "--out", str(out)])[0] == 0
    assert out.read_text().count("\nf ") == 5
    assert _run(["export", "prism", "--protoset", "ico", "--out", str(out)])[0] == 1


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "sphtiling.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("sphtiling ")


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in GOLDEN_CASES.items():
        code, text = _run(argv)
        assert code == 0, (name, code)
        (GOLDEN / name).write_text(text)
        print("wrote", GOLDEN / name)
