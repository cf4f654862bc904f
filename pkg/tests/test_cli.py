import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import mpmath
import pytest

from eqparts.cli import main
from eqparts.partset import parse_tuple_spec


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def parse_interval(text):
    lo, hi = text.strip("[]").split(",")
    return mpmath.mpf(lo), mpmath.mpf(hi)


def test_count_domino(capsys):
    doc = run_json(capsys, "count", "--parts", "{1,2}", "--n", "9", "--tuple-size", "2")
    assert doc["command"] == "count"
    assert doc["outputs"]["d_n"] == "931"
    assert doc["inputs"]["parts"] == "{1,2};{1,2}"
    assert "seconds" in doc["timing"]


def test_asym_pair_constant(capsys):
    doc = run_json(capsys, "asym", "--parts", "{1,2}", "--m", "2")
    with mpmath.workdps(50):
        lo, hi = parse_interval(doc["outputs"]["C_m"])
        assert lo <= mpmath.mpf(5) ** (mpmath.mpf(3) / 4) / 2 <= hi
        lo, hi = parse_interval(doc["outputs"]["rho"])
        assert lo < hi and hi - lo < mpmath.mpf(2) ** -120


def test_prob_rational(capsys):
    doc = run_json(capsys, "prob", "--parts", "N;N", "--n", "3")
    assert doc["outputs"]["pi_n"] == "3/8"


def test_big_numbers_are_strings(capsys):
    doc = run_json(capsys, "count", "--parts", "N", "--m", "3", "--n", "300")
    d_n = doc["outputs"]["d_n"]
    assert isinstance(d_n, str) and int(d_n) > 2**64


def test_echoed_spec_round_trips(capsys):
    text = " {2 ,1^3} ;N>=1; 3N "
    doc = run_json(capsys, "describe", "--parts", text)
    echoed = doc["inputs"]["parts"]
    assert echoed == "{1^3,2};N;3N"
    assert parse_tuple_spec(echoed) == parse_tuple_spec(text)
    coords = doc["outputs"]["coordinates"]
    assert coords[2]["support_gcd"] == "3" and coords[2]["aperiodic"] is False


def test_dist(capsys):
    doc = run_json(capsys, "dist", "--parts", "{1,2}", "--n", "4")
    assert doc["outputs"]["pmf"] == {"2": "1/5", "3": "3/5", "4": "1/5"}
    assert doc["outputs"]["variance"] == "2/5"


def test_decreasing(capsys):
    doc = run_json(capsys, "decreasing", "--parts", "{1,2}", "--m", "2", "--n", "3")
    assert doc["outputs"]["count"] == "7"


def test_llt(capsys):
    doc = run_json(capsys, "llt", "--parts", "N", "--n", "100")
    assert float(doc["outputs"]["deviation"]) < 0.05
    assert doc["outputs"]["degenerate"] is False


def test_sample_and_mc_deterministic(capsys):
    a = run_json(capsys, "sample", "--parts", "{1,2}", "--n", "10", "--seed", "4", "--samples", "5")
    b = run_json(capsys, "sample", "--parts", "{1,2}", "--n", "10", "--seed", "4", "--samples", "5")
    assert a["outputs"] == b["outputs"]
    assert all(sum(map(int, c.split("+"))) == 10 for c in a["outputs"]["compositions"])
    mc = run_json(capsys, "mc", "--parts", "N;N", "--n", "3", "--trials", "4000", "--seed", "2")
    assert abs(mc["outputs"]["estimate"] - 0.375) < 4 * mc["outputs"]["standard_error"]
    assert "MT19937" in mc["outputs"]["rng"]


def test_verify(capsys):
    code, out, err = run(capsys, "verify")
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"]["failed"] == "0"
    assert "PASS" in err and "FAIL" not in err


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--parts", "{1,2}", "--m", "2", "--ns", "50,100,200", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["n"] for r in rows] == ["50", "100", "200"]
    for r in rows:
        exact = Fraction(r["exact_pi_n"])
        ratio = float(exact) / float(r["asymptotic_pi_n"])
        assert abs(ratio - float(r["ratio"])) < 1e-12
    gaps = [abs(float(r["ratio"]) - 1) for r in rows]
    assert gaps == sorted(gaps, reverse=True)


def test_table_json(capsys):
    doc = run_json(capsys, "table", "--parts", "N", "--ns", "10")
    assert doc["outputs"]["rows"][0]["exact_pi_n"] == "12155/65536"


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["count", "--parts", "{1,2"], "--parts"),
        (["count", "--parts", "{1,2", "--n", "3"], "--parts"),
        (["count", "--parts", "{1,2};N", "--n", "3", "--m", "3"], "--m/--tuple-size"),
        (["dist", "--parts", "{1,2}", "--n", "3", "--format", "csv"], "--format"),
        (["count", "--parts", "N", "--n", "-1"], "--n"),
        (["table", "--parts", "N", "--ns", "10,x"], "--ns"),
        (["mc", "--parts", "N;N", "--n", "3", "--trials", "0"], "--trials"),
        (["frobnicate"], "COMMAND"),
    ],
)
def test_usage_errors(capsys, argv, flag):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert flag in err or "required" in err


@pytest.mark.parametrize(
    "argv, name",
    [
        (["asym", "--parts", "{2,4}"], "Periodic"),
        (["asym", "--parts", "{1}"], "NotSupercritical"),
        (["prob", "--parts", "2N;{1,2}", "--n", "3"], "UndefinedProbability"),
        (["dist", "--parts", "2N", "--n", "3"], "NoCompositions"),
        (["sample", "--parts", "2N", "--n", "3"], "NoCompositions"),
        (["count", "--parts", "N;N", "--n", "50", "--n-max-cap", "40"], "CapacityExceeded"),
    ],
)
def test_domain_errors(capsys, argv, name):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert name in err


def test_part_zero_flag(capsys):
    doc = run_json(capsys, "count", "--parts", "N;N>=0", "--n", "5", "--allow-zero")
    assert doc["outputs"]["d_n"] == "501"
    code, _, err = run(capsys, "count", "--parts", "N;N>=0", "--n", "5")
    assert code == 2 and "--parts" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "eqparts", "prob", "--parts", "{1,2};{1,2}", "--n", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outputs"]["pi_n"] == "1"
