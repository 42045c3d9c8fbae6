import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from bnlattice import brill_noether as bn
from bnlattice.cli import UsageError, main, parse_args
from bnlattice.divisors import DivisorClass
from bnlattice.geometry import Gauge
from bnlattice.graph import parse_graph

GRAPHS = Path(__file__).resolve().parent.parent / "graphs"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def k3():
    return GRAPHS / "k3.txt"


@pytest.fixture
def k4():
    return GRAPHS / "k4.txt"


# -- argument parsing ---------------------------------------------------------------

def test_parse_rank_command():
    cmd = parse_args(["rank", "g.txt", "--divisor", "1,1,1,1"])
    assert cmd.name == "rank" and cmd.graph_path == Path("g.txt")
    assert cmd.options["divisor"] == (1, 1, 1, 1)


def test_parse_gauge_literal():
    cmd = parse_args(["covrad", "g.txt", "--gauge", "P:1:3/2", "--grid", "8"])
    assert cmd.options["gauge"] == Gauge.minkowski(1, Fraction(3, 2))
    assert cmd.options["grid"] == 8


def test_parse_rational_divisor():
    cmd = parse_args(["rank", "g.txt", "--divisor", "1/2,-1/2,0"])
    assert cmd.options["divisor"] == (Fraction(1, 2), Fraction(-1, 2), 0)


@pytest.mark.parametrize("argv", [
    ["rank"],
    [],
    ["frobnicate", "g.txt"],
    ["rank", "g.txt"],
    ["rank", "g.txt", "--divisor", "1,,2"],
    ["rank", "g.txt", "--divisor", "1,x"],
    ["covrad", "g.txt", "--gauge", "P:0:0"],
    ["covrad", "g.txt", "--gauge", "hexagon"],
    ["covrad", "g.txt", "--grid", "0"],
    ["bounds", "g.txt", "--k", "0"],
])
def test_usage_errors(argv):
    with pytest.raises(UsageError):
        parse_args(argv)
    code, _, err = call(*argv)
    assert code == 2 and err


# -- exit codes -------------------------------------------------------------------

def test_missing_file_exit_66(tmp_path):
    code, _, err = call("info", tmp_path / "nope.txt")
    assert code == 66 and "nope.txt" in err


def test_parse_error_exit_65(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("graph 3\ne 0 1\nwhat\n")
    code, _, err = call("info", bad)
    assert code == 65 and "line 3" in err


@pytest.mark.parametrize("argv", [
    ["bn-scan", "k4.txt", "--degree", "9"],
    ["rank", "k4.txt", "--divisor", "1,1,1"],
    ["reduce", "k4.txt", "--divisor", "1/2,1/2,0,0"],
    ["info", "k4.txt", "--base", "7"],
])
def test_precondition_exit_64(argv):
    argv = [GRAPHS / a if a.endswith(".txt") else a for a in argv]
    code, out, err = call(*argv)
    assert code == 64 and err.count("\n") == 1 and not out


def test_disconnected_graph_exit_64(tmp_path):
    f = tmp_path / "two.txt"
    f.write_text("graph 4\ne 0 1\ne 2 3\n")
    assert call("info", f)[0] == 64


def test_verify_guard(tmp_path):
    f = tmp_path / "big.txt"
    f.write_text("graph 2\ne 0 1 12\n")
    code, _, err = call("verify", f)
    assert code == 64 and "--force" in err


def test_verify_exit_1_on_failure(k3, monkeypatch):
    def fake(G, N):
        return [bn.BNReport(G.name, 0, -1, DivisorClass(0, (0, 0, 0)), 0, bn.EXISTENCE_FAILS)]

    monkeypatch.setattr(bn, "verify_existence", fake)
    code, out, _ = call("verify", k3)
    assert code == 1 and "ExistenceFails" in out


# -- outputs ----------------------------------------------------------------------

def test_info_text(k3):
    code, out, _ = call("info", k3)
    assert code == 0 and out == "n=3 m=3 g=1 Γ=4 dense=false\n"


def test_intcovrad_k3(k3):
    assert call("intcovrad", k3)[1] == "2\n"
    assert json.loads(call("intcovrad", k3, "--json")[1]) == {"value": "2"}


def test_verify_k4(k4):
    code, out, _ = call("verify", k4)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5 and all(line.endswith("ExistenceHolds") for line in lines)
    reports = json.loads(call("verify", k4, "--json")[1])
    assert [r["d"] for r in reports] == [0, 1, 2, 3, 4]
    assert all(list(r) == ["graph", "d", "maxRank", "witness", "bnBound", "verdict"] for r in reports)


def test_rank_outputs(k3, k4):
    assert call("rank", k4, "--divisor", "1,1,1,1")[1] == "2\n"
    assert call("rank", k3, "--divisor", "1/2,-1/2,0")[1] == "-1/2\n"
    assert call("rank", k3, "--divisor", "1/2,-1/2,0", "--method", "geometric")[1] == "-1/2\n"


def test_reduce_output(k3):
    code, out, _ = call("reduce", k3, "--divisor", "2,-1,-1", "--base", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["reduced"] == [0, 0, 0] and data["base"] == 1


def test_nonspecial_output(k3):
    out = call("nonspecial", k3)[1]
    assert sorted(out.split()) == ["1,-1,0", "1,0,-1"]


def test_covrad_output(k3):
    data = json.loads(call("covrad", k3, "--gauge", "simplex", "--grid", "6", "--json")[1])
    assert data["value"] == "1" and data["certificate"] == "1" and data["certificateKind"] == "Exact"
    data = json.loads(call("covrad", k3, "--gauge", "P:1:3/2", "--json")[1])
    assert data["gauge"] == "P:1:3/2" and data["certificateKind"] == "LowerBound"
    Fraction(data["value"])


def test_gonality_and_bounds(k4):
    data = json.loads(call("gonality", k4, "--json")[1])
    assert data["value"] == "3"
    data = json.loads(call("bounds", GRAPHS / "k5x3.txt", "--json")[1])
    assert data["realGonalityBound"] == 14 and data["dense"] is True and data["bnBoundAtGminus1"] == 4


def test_rationals_never_printed_as_floats(k3):
    out = call("covrad", k3, "--gauge", "P:2/3:5", "--grid", "3", "--json")[1]
    assert "." not in out


@pytest.mark.parametrize("name", sorted(p.name for p in GRAPHS.glob("*.txt")))
def test_emit_round_trip(name, tmp_path):
    src = GRAPHS / name
    code, out, _ = call("info", src, "--emit")
    assert code == 0
    assert parse_graph(out) == parse_graph(src.read_text())
    f = tmp_path / name
    f.write_text(out)
    assert call("info", f, "--emit")[1] == out


@pytest.mark.parametrize("argv", [
    ["verify", "k4.txt", "--json"],
    ["bn-scan", "k5.txt", "--degree", "5", "--json"],
    ["covrad", "banana4.txt", "--gauge", "ell1", "--json"],
    ["info", "genus5.txt", "--json"],
])
def test_json_is_deterministic_across_processes(argv):
    argv = [str(GRAPHS / a) if a.endswith(".txt") else a for a in argv]
    runs = [subprocess.run([sys.executable, "-m", "bnlattice.cli", *argv], capture_output=True, check=True).stdout
            for _ in range(2)]
    assert runs[0] == runs[1]
    json.loads(runs[0])
