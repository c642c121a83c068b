import json
import re
import subprocess
import sys

import pytest

from partialcp.cli import main
from partialcp.corpus import cycle, shift
from partialcp.partial import PartialSystem
from partialcp.sysfile import to_json, to_text


@pytest.fixture
def write(tmp_path):
    def _write(system, fmt="text"):
        p = tmp_path / f"sys.{fmt}"
        p.write_text(to_json(system) if fmt == "json" else to_text(system))
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_sigma3(capsys, write):
    code, out, _ = run(capsys, "analyze", write(shift(3)))
    assert code == 0
    assert "D_1 = {2,3}" in out and "nilpotent(3)" in out


def test_analyze_empty_map(capsys, write):
    code, out, _ = run(capsys, "analyze", write(PartialSystem.build([("a", 2)])))
    assert code == 0 and "trivial: crossed product = A" in out


def test_bad_dim_names_block(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("ok 1\nbroken 0\n")
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 1 and "line 2" in err and "'broken'" in err


def test_crossed_product_verify(capsys, write):
    code, out, _ = run(capsys, "crossed-product", write(shift(3), "json"), "--verify")
    assert code == 0
    assert "{finite_matrix(3)}" in out and "blocks [3] dim 9" in out and "match" in out


def test_crossed_product_cycle_skips_oracle(capsys, write):
    code, out, _ = run(capsys, "crossed-product", write(cycle(2)), "--verify")
    assert code == 0 and "circle_fibered(2)" in out and "skipped" in out


def test_crossed_product_zero_algebra(capsys, write):
    code, out, _ = run(capsys, "--json", "crossed-product", write(PartialSystem.build([])))
    assert code == 0 and json.loads(out)["report"]["descriptor"] == []


def test_duality_messages(capsys, write):
    code, out, _ = run(capsys, "duality", write(shift(3)))
    assert code == 0 and "FAILS: spectrum 3 points vs countably infinite" in out
    code, out, _ = run(capsys, "duality", write(cycle(2)))
    assert code == 0 and "HOLDS (automorphism)" in out


def test_subquotients_and_wold(capsys, write):
    code, out, _ = run(capsys, "subquotients", write(shift(3)), "--max-n", "3")
    assert code == 0 and "copy 3 of 3 -> 3" in out
    code, out, _ = run(capsys, "wold", write(cycle(2)))
    assert code == 0 and "core={1,2}" in out


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--size", "3")
    assert code == 0 and re.search(r"all properties passed over 43 systems", out)
    code, _, err = run(capsys, "enumerate", "--size", "9")
    assert code == 1 and "cap" in err


def test_sieben(capsys):
    code, out, _ = run(capsys, "sieben", "--n", "5", "--density", "2", "2", "--terms", "10", "50", "200")
    assert code == 0 and "proved" in out and "non-increasing" in out


def test_usage_errors_exit_1(capsys, write):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "subquotients", write(shift(2)))[0] == 1
    assert run(capsys, "sieben", "--n", "3", "--density", "x", "1")[0] == 1


def test_json_flag_position_and_numbers(capsys, write):
    path = write(shift(4))
    code_a, text, _ = run(capsys, "crossed-product", path)
    code_b, js, _ = run(capsys, "crossed-product", path, "--json")
    code_c, js2, _ = run(capsys, "--json", "crossed-product", path)
    assert code_a == code_b == code_c == 0 and js == js2
    rep = json.loads(js)["report"]
    for k, v in rep["spectral_dims"].items():
        if v:
            assert f"{k}:{v}" in text
    assert str(rep["total_dim"]) in text


def test_example_and_module_entry(tmp_path):
    out = subprocess.run([sys.executable, "-m", "partialcp", "example", "shift_n", "n=2"],
                         capture_output=True, text=True, check=True).stdout
    assert "1 -> 2" in out
