from __future__ import annotations

import json
from pathlib import Path

import pytest

from nelson_s.cli import main
from nelson_s.demos import DEMOS
from nelson_s.fixtures_dir import fixture_path

ALG = fixture_path("algebras")
PROOFS = fixture_path("proofs")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_proof_pass(capsys):
    code, out, _ = run(capsys, "check-proof", str(PROOFS / "il4.proof"))
    assert code == 0 and out.strip().endswith("accepted")


def test_check_proof_rejected(capsys, tmp_path):
    bad = tmp_path / "bad.proof"
    bad.write_text("goal: p\n1. p ; HYP\n")
    code, out, _ = run(capsys, "check-proof", str(bad))
    assert code == 1 and "rejected" in out


def test_historical_mode(capsys, tmp_path):
    from nelson_s.calculus_s import inconsistency_fixture
    from nelson_s.formula import parse
    from nelson_s.proofs import dump_proof

    f = tmp_path / "incons.proof"
    f.write_text(dump_proof(inconsistency_fixture(parse("q"))))
    assert run(capsys, "check-proof", str(f), "--mode", "historical")[0] == 0
    assert run(capsys, "check-proof", str(f))[0] == 1
    assert run(capsys, "check-proof", str(f), "--calculus", "sprime", "--mode", "historical")[0] == 2


def test_usage_and_io_errors(capsys, tmp_path):
    assert run(capsys, "check-proof", str(tmp_path / "missing.proof"))[0] == 2
    bad = tmp_path / "x.alg"
    bad.write_text("size 2\n")
    assert run(capsys, "check-algebra", str(bad), "--class", "cibrl")[0] == 2
    assert run(capsys, "check-algebra", str(ALG / "A4.n4"), "--class", "sprime")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["enumerate", "--class", "nope", "--size", "2"])
    assert info.value.code == 2
    assert run(capsys, "enumerate", "--class", "cibrl", "--size", "9")[0] == 2
    assert run(capsys, "eval", str(ALG / "L3.alg"), "x * y", "x=h")[0] == 2
    assert run(capsys, "countermodel", "--statement", "x ==")[0] == 2


@pytest.mark.parametrize(
    "file,cls,code",
    [("L3.alg", "sprime", 0), ("G3.alg", "sprime", 1), ("L3.alg", "s-def34", 0), ("A4.n4", "n4", 0), ("A4.n4", "n3", 1)],
)
def test_check_algebra(capsys, file, cls, code):
    assert run(capsys, "check-algebra", str(ALG / file), "--class", cls)[0] == code


def test_check_algebra_json(capsys):
    code, out, _ = run(capsys, "check-algebra", str(ALG / "G3.alg"), "--class", "sprime", "--json")
    data = json.loads(out)
    assert code == 1 and not data["passed"]
    assert [l["witness"] for l in data["laws"] if not l["passed"]] == [["h"]]


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", str(ALG / "A4.n4"), "x => x", "x=b")
    assert code == 0 and out.strip() == "b"
    code, out, _ = run(capsys, "eval", str(ALG / "L3.alg"), "x * y", "x=h,y=1")
    assert out.strip() == "h"


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--class", "sprime", "--size", "4", "--cumulative", "--json", "--dump")
    data = json.loads(out)
    assert code == 0 and data["counts"] == {"1": 1, "2": 1, "3": 1, "4": 2}
    assert data["algebras"]["3"][0].startswith("name s_prime-3-0")


def test_countermodel(capsys):
    code, out, _ = run(capsys, "countermodel", "--statement", "x => x == y => y", "--algebra", str(ALG / "A4.n4"), "--json")
    data = json.loads(out)
    assert code == 1 and data["valuation"] == {"x": "1", "y": "b"}
    code, _, _ = run(capsys, "countermodel", "--statement", "x => x == y => y", "--class", "sprime")
    assert code == 0


def test_compile_calculus(capsys, tmp_path):
    code, out, _ = run(capsys, "compile-calculus", "--builtin", "S", "--gamma-bound", "0")
    assert code == 0 and len(out.strip().splitlines()) == 27
    code, out2, _ = run(capsys, "compile-calculus", str(fixture_path("calculi", "S.calc")), "--gamma-bound", "0")
    assert out2 == out
    assert run(capsys, "compile-calculus")[0] == 2


def test_dmt(capsys, tmp_path):
    import random

    from nelson_s.calculus_sp import random_derivation
    from nelson_s.formula import to_text
    from nelson_s.proofs import dump_proof

    proof, phi = random_derivation(random.Random(5))
    f = tmp_path / "d.proof"
    f.write_text(dump_proof(proof))
    out_file = tmp_path / "out.proof"
    code, out, _ = run(capsys, "dmt", str(f), "--discharge", to_text(phi), "-o", str(out_file))
    assert code == 0 and "accepted" in out
    assert run(capsys, "check-proof", str(out_file), "--calculus", "sprime")[0] == 0
    assert run(capsys, "dmt", str(f), "--discharge", "zz")[0] == 1


@pytest.mark.parametrize("item", list(DEMOS))
def test_demo_passes_and_is_stable(capsys, item):
    code, first, _ = run(capsys, "demo", item)
    assert code == 0, first
    _, second, _ = run(capsys, "demo", item)
    assert first == second
    assert "result: PASS" in first


def test_demo_json(capsys):
    code, out, _ = run(capsys, "demo", "prop5.3", "--json")
    assert code == 0 and json.loads(out)["passed"]


def test_demo_seed_changes_dmt(capsys):
    _, a, _ = run(capsys, "demo", "dmt", "--seed", "1")
    _, b, _ = run(capsys, "demo", "dmt", "--seed", "2")
    assert a != b


def test_bundled_files_exist():
    assert Path(PROOFS).is_dir() and (Path(ALG) / "A4.n4").exists()
