import json
import math
import os
import pathlib
import subprocess
from fractions import Fraction

import jsonschema
import pytest

import nvol

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMA = json.loads((ROOT / "schema" / "nvol-1.schema.json").read_text())


def cli_json(*args):
    code, out, err = nvol.cli([*args, "--format", "json"])
    assert code == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return doc


def test_exact_bound_returns_fractions():
    r = nvol.nv_bound("x1*x2 + x3^3 + x4^3", [3, 3, 2, 2])
    assert r["bound"] == Fraction(32, 3)
    assert r["v"] == 6
    assert r["exact"]


def test_fraction_weights():
    k = 5
    w = [Fraction(3, 2), Fraction(3, 2), 1, Fraction(3, k)]
    r = nvol.nv_bound(f"x1*x2 + x3^3 + x4^{k}", w)
    assert r["bound"] == Fraction(4 * (k + 3) ** 3, 9 * k * k)


def test_numeric_bound_d5():
    r = nvol.nv_bound("x1*x2 + x3^2*x4 + x4^4", [1.0, 1.0, 0.7320508, 0.5358984])
    assert not r["exact"]
    assert r["bound"] == pytest.approx(6 * math.sqrt(3), abs=1e-5)


def test_minimize_cubic_family():
    for k, want in [(3, Fraction(32, 3)), (4, Fraction(343, 36)), (5, Fraction(2048, 225)), (6, Fraction(9))]:
        r = nvol.minimize_bound(f"x1*x2 + x3^3 + x4^{k}")
        assert r["value"] == pytest.approx(float(want), abs=1e-6)
        assert r["status"] == "converged"
        assert r["value"] <= r["oracle_value"]


def test_grid_search_exact():
    g = nvol.grid_search("x1*x2 + x3^2 + x4^3", 11)
    assert g["value"] == Fraction(125, 9)
    assert g["witness"] == [Fraction(3, 11)] * 3 + [Fraction(2, 11)]


def test_errors_carry_kind():
    with pytest.raises(nvol.NvolError) as info:
        nvol.nv_bound("x1*x2*x3", [1, 1, 1], nvars=3)
    assert info.value.kind == "invalid-weight"
    with pytest.raises(ValueError):
        nvol.parse_polynomial("x1 + 1")


def test_catalog_and_classifier():
    assert nvol.classify("1/3(1,1,2)")[0]
    assert not nvol.classify("cA3")[0]
    assert nvol.mld("1/3(1,1,1)") == 1
    assert nvol.check_nv_mld("1/5(1,1,1)")["equality"]
    assert nvol.known_volumes() == [
        "9", "2048/225", "250/27", "343/36", "6*sqrt(3)", "32/3", "27/2", "125/9", "16", "27",
    ]
    assert nvol.catalog_volume("E7")["volume"] == "250/27"


def test_screen():
    r = nvol.screen_fano(22)
    assert r["liu_bound"] == "297/32"
    assert [a["tag"] for a in nvol.screen_fano(26, True)["allowed"]] == ["cA1"]
    assert nvol.screen_fano(Fraction(51, 2))["regime"] == ["R22", "R11"]


def test_reproduce_all_pass():
    claims = nvol.reproduce()
    assert claims and all(c["pass"] for c in claims)
    assert len(nvol.reproduce("example-5.1")) == 8


@pytest.mark.parametrize(
    "args",
    [
        ["bound", "--poly", "x1*x2 + x3^2*x4 + x4^4", "--weight", "1,1,0.7320508,0.5358984"],
        ["bound", "--poly", "x1*x2 + x3^3 + x4^3", "--weight", "3,3,2,2"],
        ["minimize", "--poly", "x1*x2 + x3^3 + x4^6"],
        ["minimize", "--poly", "x1^4 + x2^4 + x3^4 + x4^4"],
        ["oracle", "--poly", "x1*x2 + x3^2 + x4^4", "--denominator", "28"],
        ["classify", "--descriptor", "Dinf"],
        ["catalog"],
        ["catalog", "--known-volumes"],
        ["mld", "--descriptor", "A1"],
        ["screen", "--volume", "22"],
        ["screen", "--volume", "10", "--smoothable"],
        ["reproduce"],
    ],
)
def test_cli_json_matches_schema(args):
    doc = cli_json(*args)
    assert doc["command"] == args[0]


def test_screen_table_schema(tmp_path):
    table = tmp_path / "fanos.csv"
    table.write_text("V22,22\nP3,64\n")
    doc = cli_json("screen", "--table", str(table))
    assert len(doc["rows"]) == 2


def test_poly_file_round_trip(tmp_path):
    support = nvol.parse_polynomial("x1*x2 + x3^3 + x3*x4^3")
    path = tmp_path / "e7.json"
    path.write_text(json.dumps(support))
    doc = cli_json("bound", "--poly-file", str(path), "--weight", "9,9,6,4")
    assert doc["bound"] == "250/27"


def test_cli_exit_codes():
    assert nvol.cli(["bound", "--poly", "x1 +", "--weight", "1,1,1,1"])[0] == 2
    assert nvol.cli(["minimize", "--poly", "x1*x2*x3", "--nvars", "3"])[0] == 1


@pytest.mark.skipif("NVOL_BIN" not in os.environ, reason="executable path not given")
def test_executable_reproduce():
    proc = subprocess.run([os.environ["NVOL_BIN"], "reproduce", "--format", "json"], capture_output=True, text=True)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, SCHEMA)
    assert doc["all_pass"]
