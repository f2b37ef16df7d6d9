"""Acceptance suite: one test per criterion, each timed against its budget.

Caches are cleared before every test so each timing includes its own
enumeration and compilation work.
"""
from __future__ import annotations

import time

import numpy as np
import pytest
from mutations import single_step_mutations

from nelson_s import calculus_s
from nelson_s.algebra import (
    boolean2,
    bundled,
    check_s_prime,
    goedel,
    parse_statement,
    s_algebra_properties,
    to_s_algebra,
    to_s_prime,
)
from nelson_s.algebraizer import check_s_def34, s_conditions
from nelson_s.calculus_s import RuleId
from nelson_s.calculus_sp import bridge_fixtures, check_proof_sp
from nelson_s.formula import parse
from nelson_s.demos import (
    dmt_suite,
    squaring_outcome,
    n3_lattices,
    run_demo,
    s_prime_algebras,
    soundness_statements,
    soundness_violations,
)
from nelson_s.model_search import (
    CLASSES,
    brute_force_s_prime,
    canonical_key,
    enumerate_class,
    enumerate_upto,
    find_countermodel,
    isomorphic,
    lattices,
)
from nelson_s.n4 import a4, check_n3, check_n4_lattice, quotient, to_s_signature


@pytest.fixture(autouse=True)
def cold_caches():
    lattices.cache_clear()
    s_conditions.cache_clear()


class Timer:
    def __init__(self, budget: float):
        self.budget = budget

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False

    def check(self):
        assert self.elapsed < self.budget, f"took {self.elapsed:.3f}s, budget {self.budget}s"


def same_tables(a, b) -> bool:
    return all(np.array_equal(x, y) for x, y in zip((a.meet, a.join, a.imp, a.neg), (b.meet, b.join, b.imp, b.neg)))


def test_criterion_01_fixtures_and_mutations():
    rules = [r.value for r in RuleId]
    with Timer(1.0) as t:
        fixtures = calculus_s.fixtures()
        accepted = [calculus_s.check_proof(p).accepted for p in fixtures.values()]
        survivors, total = [], 0
        for name, p in fixtures.items():
            for tag, m in single_step_mutations(p, rules):
                total += 1
                if calculus_s.check_proof(m).accepted:
                    survivors.append(f"{name}: {tag}")
    assert all(accepted) and len(fixtures) == len(calculus_s.FIXTURE_NAMES)
    assert total > 1000 and survivors == []
    t.check()


def test_criterion_02_inconsistency_demo():
    with Timer(0.1) as t:
        res = run_demo("inconsistency")
        proof = calculus_s.inconsistency_fixture(parse("q"))
        hist = calculus_s.check_proof(proof, "historical").accepted
        std = calculus_s.check_proof(proof, "standard").accepted
    assert res.passed and hist and not std
    assert len(proof.steps) <= 6 and proof.goal == parse("q")
    t.check()


def test_criterion_03_l3_and_goedel():
    with Timer(0.5) as t:
        l3 = bundled("L3")
        sp = check_s_prime(l3)
        d = check_s_def34(to_s_algebra(l3), 2)
        g3 = goedel(3)
        failed = check_s_prime(g3).failed()
    assert sp.passed and d.passed
    assert [f.law for f in failed] == ["involution: ~~a = a"]
    assert failed[0].witness == (g3.names[1],)
    t.check()


def test_criterion_04_separation():
    with Timer(30.0) as t:
        A = a4()
        r = check_n4_lattice(A)
        q = quotient(A)
        eq = parse_statement("x => x == y => y")
        cm = find_countermodel(eq, [A])
        in_s_prime = find_countermodel(eq, "s_prime", 4)
    assert r.passed
    assert q.well_defined and isomorphic(q.as_algebra(), boolean2())
    assert cm is not None and (cm.valuation["x"], cm.valuation["y"]) == ("1", "b")
    assert in_s_prime is None
    t.check()


def test_criterion_05_term_equivalence():
    with Timer(60.0) as t:
        disagreements, not_identity = [], []
        for a in enumerate_upto("cibrl", 4):
            b = to_s_algebra(a)
            if check_s_def34(b, 2).passed != check_s_prime(a).passed:
                disagreements.append(a.name)
            if not same_tables(to_s_algebra(to_s_prime(b)), b):
                not_identity.append(a.name)
        s_algs = enumerate_upto("s_def34", 4)
        for b in s_algs:
            if not same_tables(to_s_algebra(to_s_prime(b)), b):
                not_identity.append(b.name)
    assert disagreements == [] and not_identity == []
    assert len(s_algs) == 5
    t.check()


def test_criterion_06_s_algebra_properties():
    with Timer(60.0) as t:
        algs = [a for a in enumerate_upto("s_def34", 4) if check_s_def34(a).passed]
        per_item: dict[str, list[str]] = {}
        for a in algs:
            for law in s_algebra_properties(a).laws:
                per_item.setdefault(law.law, [])
                if not law.passed:
                    per_item[law.law].append(a.name)
    assert len(per_item) == 11 and algs
    for item, bad in per_item.items():
        print(f"{item}: {'holds' if not bad else 'fails in ' + ', '.join(bad)} ({len(algs)} algebras)")
    assert {k: v for k, v in per_item.items() if v} == {}
    t.check()


def test_criterion_07_squaring_identities():
    with Timer(120.0) as t:
        o = squaring_outcome(4)
    print(f"item-4 falsifier among non-3-potent CIBRLs of size <= 4: {o['item4_falsifier'] or 'none found'}")
    assert o["cibrls"] == 11 and o["three_potent"] > 0
    assert o["item1_failures"] == [] and o["items234_failures"] == []
    assert "item4_falsifier" in o
    t.check()


def test_criterion_08_soundness():
    with Timer(60.0) as t:
        algs = s_prime_algebras(4)
        bad = soundness_violations(algs)
        labels = [label for label, _ in soundness_statements()]
    assert len(algs) == 5
    assert sum(l.startswith("axiom") for l in labels) == 18 and "modus ponens" in labels
    assert sum(l.startswith("S fixture") for l in labels) == len(calculus_s.FIXTURE_NAMES)
    assert bad == []
    t.check()


def test_criterion_09_deduction_metatheorem():
    with Timer(10.0) as t:
        rows = dmt_suite(count=20)
        bridges = [check_proof_sp(p).accepted for p in bridge_fixtures().values()]
    assert len(rows) == 20 and all(ok for _, ok, _ in rows)
    assert bridges == [True, True]
    t.check()


def test_criterion_10_enumeration():
    with Timer(120.0) as t:
        counts = [enumerate_class("s_prime", n).count for n in (1, 2)]
        oracle = brute_force_s_prime(2)
        same = enumerate_class("s_prime", 2).keys() == [canonical_key(a) for a in oracle]
        mismatched = [
            (cls, n)
            for cls in CLASSES
            for n in range(1, 5)
            if enumerate_class(cls, n).keys() != enumerate_class(cls, n, jobs=4).keys()
        ]
    assert counts == [1, 1] and len(oracle) == 1 and same
    assert mismatched == []
    t.check()


def test_criterion_11_n3_lattices_are_s_algebras():
    with Timer(120.0) as t:
        n3s = n3_lattices(4)
        failing = [a.names for a in n3s if not check_s_def34(to_s_signature(a)).passed]
        r = check_n3(a4())
    n13 = [l for l in r.laws if l.law.startswith("N13")]
    assert n3s and failing == []
    assert not r.passed and len(n13) == 1 and not n13[0].passed
    assert n13[0].witness == ("b", "n")
    t.check()
