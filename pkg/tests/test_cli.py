import json
import subprocess
import sys

import pytest

from semicurve.cli import main, run
from semicurve.curve import presentation
from semicurve.deform import build_family_4
from semicurve.orderbound import find_sm, order_bound, predict_sm
from semicurve.semigroup import from_generators, parse_semigroup, profile
from semicurve.smoothness import finite_field_smoothness_scan
from semicurve.t1 import t1_scan
from semicurve.weierstrass import buchweitz_test

BUCH = "gen:13,14,15,16,17,18,20,22,23"


def ok(argv):
    res = run(argv)
    assert res.status == 0, res.text
    return res


def test_profile_text():
    res = ok(["profile", "gen:4,9,11"])
    assert "c = 15" in res.text
    assert res.payload["profile"] == json.loads(json.dumps(profile(from_generators([4, 9, 11])).as_dict()))


def test_profile_natural_numbers():
    res = ok(["profile", "gen:1"])
    assert "S = N" in res.text and "ordinary" in res.text


def test_sm_example():
    res = ok(["sm", "elem:0,10,20,22,23,26;c=30"])
    assert res.payload["s_m"] == 46 and "s_m = 46" in res.text
    S = parse_semigroup("elem:0,10,20,22,23,26;c=30")
    assert res.payload["prediction"]["case"] == predict_sm(S).case


def test_nu_and_ordbound_are_thin():
    S = parse_semigroup("elem:0,8,12,14,15,16;c=20")
    res = ok(["nu", "elem:0,8,12,14,15,16;c=20", "--upto", "32"])
    assert dict(zip(res.payload["s"], res.payload["nu"]))[30] == 7
    assert res.payload["s_m"] == find_sm(S).s_m
    res = ok(["ordbound", "gen:4,9,11", "--k", "5"])
    assert res.payload["order_bound"] == order_bound(from_generators([4, 9, 11]), 5)


def test_buchweitz_verb():
    res = ok(["buchweitz", BUCH, "--no-shortcut"])
    assert res.payload == json.loads(json.dumps(buchweitz_test(parse_semigroup(BUCH), 2, shortcut=False).as_dict()))
    assert "non-Weierstrass" in res.text


def test_torres_and_reduce():
    res = ok(["torres", "gen:2,3", "--genus", "10"])
    assert res.payload["genus"] == 10 and res.payload["symmetric"]
    gens = ",".join(map(str, res.payload["generators"]))
    back = ok(["reduce", f"gen:{gens}", "--gamma", "1"])
    assert back.payload["generators"] == [2, 3]
    fail = ok(["reduce", "gen:3,4", "--gamma", "1"])
    assert fail.payload["failed"].startswith("condition 1")


def test_torres_hypothesis_is_usage_error():
    assert run(["torres", "gen:2,3", "--genus", "5"]).status == 2


def test_enumerate():
    res = ok(["enumerate", "--genus-max", "6", "--list"])
    assert res.payload["counts"] == [1, 1, 2, 4, 7, 12, 23]
    assert len(res.payload["semigroups"]) == sum(res.payload["counts"])


def test_curve_ideal_and_t1():
    res = ok(["curve", "ideal", "gen:4,9,11"])
    assert res.payload == json.loads(json.dumps({**presentation(from_generators([4, 9, 11])).as_dict(), "J1": res.payload["J1"]}))
    res = ok(["curve", "t1", "gen:4,9,11", "--table"])
    table = t1_scan(presentation(from_generators([4, 9, 11])))
    assert (res.payload["total"], res.payload["negative"]) == (table.total, table.negative) == (17, 15)
    assert sorted(int(k) for k in res.payload["generator_degrees"]) == [-18, -16, -11]


def test_curve_deform_verify_and_scan():
    res = ok(["curve", "deform", "gen:5,8,11,14", "--verify", "--ff-scan", "p=31,u=1"])
    assert res.payload["flatness"]["ok"]
    direct = finite_field_smoothness_scan(build_family_4(from_generators([5, 8, 11, 14])), 31, 1)
    assert res.payload["ff_scan"] == json.loads(json.dumps(direct.as_dict()))
    assert "consistent with a smooth fibre" in res.text


def test_curve_deform_variant_origin():
    res = ok(["curve", "deform", "gen:8,11,14,17", "--case", "variant", "--ff-scan", "p=13"])
    assert res.payload["origin_scan"]["singular_origin_on_every_fibre"]


def test_deform_bad_prime_is_usage_error():
    res = run(["curve", "deform", "gen:7,10,13,16", "--ff-scan", "p=2,u=1"])
    assert res.status == 2 and "bad prime" in res.payload["error"]


@pytest.mark.parametrize(
    "argv",
    [
        ["profile", "gen:4,9,11"],
        ["sm", "gen:5,8,11,14"],
        ["curve", "t1", "gen:5,8,11,14"],
        ["curve", "deform", "gen:7,10,13,16", "--verify"],
        ["enumerate", "--genus-max", "4"],
    ],
)
def test_json_round_trip(argv, capsys):
    res = run(argv + ["--json"])
    assert json.loads(res.to_json()) == res.payload
    assert main(["--json"] + argv) == 0
    assert json.loads(capsys.readouterr().out) == res.payload


def test_usage_errors():
    assert run(["frobnicate"]).status == 2
    assert run(["profile", "4,9,11"]).status == 2
    assert run(["curve", "ideal", "gen:5,6,8,9"]).status == 2
    assert run(["curve", "deform", "gen:5,8,11,14", "--ff-scan", "u=1"]).status == 2


def test_library_errors_exit_one():
    res = run(["ordbound", "gen:4,9,11", "--k", "-1"])
    assert res.status == 1


def test_conjecture_scan_resumable(tmp_path, monkeypatch):
    monkeypatch.setenv("SEMICURVE_SCAN_DIR", str(tmp_path))
    res = ok(["conjecture-scan", "--genus-max", "6", "--jsonl", "scan.jsonl"])
    path = tmp_path / "scan.jsonl"
    lines = path.read_text().splitlines()
    assert len(lines) == res.payload["checked"] > 0
    assert res.payload["counterexamples"] == []
    # Drop half the records and rerun: only the missing ones are recomputed.
    path.write_text("\n".join(lines[: len(lines) // 2]) + "\n")
    again = ok(["conjecture-scan", "--genus-max", "6", "--jsonl", "scan.jsonl", "--jobs", "2"])
    assert again.payload["checked"] == res.payload["checked"]
    assert sorted(path.read_text().splitlines()) == sorted(lines)


def test_conjecture_scan_default_name(tmp_path, monkeypatch):
    monkeypatch.setenv("SEMICURVE_SCAN_DIR", str(tmp_path / "nested"))
    ok(["conjecture-scan", "--genus-max", "4"])
    assert (tmp_path / "nested" / "conjecture-g4.jsonl").exists()


def test_paper_regress_reports_per_fixture():
    res = run(["paper-regress"])
    fixtures = {f["name"]: f["ok"] for f in res.payload["fixtures"]}
    assert len(fixtures) >= 7
    # Only the reference Buchweitz T^1 table disagrees with the computation.
    assert [n for n, good in fixtures.items() if not good] == ["buchweitz-t1"]
    assert res.status == 1


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "semicurve", "profile", "gen:4,9,11"], capture_output=True, text=True)
    assert out.returncode == 0 and "c = 15" in out.stdout
    bad = subprocess.run([sys.executable, "-m", "semicurve", "profile", "nonsense"], capture_output=True, text=True)
    assert bad.returncode == 2
