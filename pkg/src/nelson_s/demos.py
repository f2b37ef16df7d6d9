"""Replication pipelines behind ``nelson-s demo``.

Each pipeline returns a :class:`DemoResult`: a list of checks, each a
pass/fail line with its details.  Transcripts contain no timings, so they
are byte-stable for a fixed seed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import calculus_s
from .algebra import (
    Equation,
    FiniteAlgebra,
    Quasiequation,
    boolean2,
    bundled,
    check_s_prime,
    goedel,
    is_three_potent,
    squaring_identities,
    parse_statement,
    scan,
    to_s_algebra,
    witness_names,
)
from .algebraizer import check_s_def34, s_conditions
from .calculus_sp import (
    S_PRIME,
    bridge_fixtures,
    check_proof_sp,
    deduction_transform,
    random_derivation,
)
from .formula import TOP, fuse, imp, parse, to_text
from .model_search import enumerate_upto, find_countermodel, isomorphic
from .n4 import a4, check_n3, check_n4_lattice, n4_lattices_on, quotient, to_s_signature

DEFAULT_SEED = 20240611
SEPARATION_EQUATION = "x => x == y => y"


@dataclass(frozen=True)
class Check:
    label: str
    passed: bool
    details: tuple[str, ...] = ()

    def lines(self) -> list[str]:
        out = [f"[{'PASS' if self.passed else 'FAIL'}] {self.label}"]
        out += [f"    {d}" for d in self.details]
        return out


@dataclass
class DemoResult:
    item: str
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, label: str, passed: bool, details: Iterable[str] = ()) -> Check:
        c = Check(label, bool(passed), tuple(details))
        self.checks.append(c)
        return c

    def lines(self) -> list[str]:
        out = [f"demo {self.item}: {self.title}"]
        for c in self.checks:
            out += c.lines()
        out.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return out

    def as_dict(self) -> dict:
        return {
            "item": self.item,
            "title": self.title,
            "passed": self.passed,
            "checks": [{"label": c.label, "passed": c.passed, "details": list(c.details)} for c in self.checks],
        }


# -- sweeps shared with the test-suite ---------------------------------------


def s_prime_algebras(max_size: int = 4) -> list[FiniteAlgebra]:
    return enumerate_upto("s_prime", max_size)


def soundness_statements() -> list[tuple[str, Quasiequation]]:
    """Fixture theorems of S and the axioms of S', as ``... |- f == 1``."""
    out = []
    for name, proof in calculus_s.fixtures().items():
        prem = tuple(Equation(a, TOP) for a in proof.assumptions)
        out.append((f"S fixture {name}", Quasiequation(prem, Equation(proof.goal, TOP))))
    for aid, schema in S_PRIME.axioms.items():
        out.append((f"axiom {aid}", Quasiequation((), Equation(schema, TOP))))
    out.append(("modus ponens", parse_statement("x == 1c, x => y == 1c |- y == 1c")))
    return out


def soundness_violations(algebras: Sequence[FiniteAlgebra]) -> list[tuple[str, str, dict]]:
    bad = []
    statements = soundness_statements()
    for a in algebras:
        for label, q in statements:
            r = scan(a, q)
            if not r.holds:
                bad.append((label, a.name, witness_names(a, r.witness)))
    return bad


def dmt_suite(seed: int = DEFAULT_SEED, count: int = 20) -> list[tuple[str, bool, str]]:
    """Transform ``count`` seeded random derivations; one row per derivation."""
    rng = random.Random(seed)
    rows = []
    for k in range(count):
        proof, phi = random_derivation(rng)
        gamma = tuple(a for a in proof.assumptions if a != phi)
        out = deduction_transform(proof, phi)
        ok = (
            check_proof_sp(out).accepted
            and out.goal == imp(fuse(phi, phi), proof.goal)
            and out.assumptions == gamma
        )
        rows.append((f"derivation {k + 1}: {len(proof.steps)} -> {len(out.steps)} steps", ok, to_text(out.goal)))
    return rows


def squaring_outcome(max_size: int = 4) -> dict:
    """Item 1 over CIBRLs, items 2-4 over 3-potent ones, and a search for an
    item-4 falsifier among the non-3-potent ones."""
    cibrls = enumerate_upto("cibrl", max_size)
    item1_bad, potent_bad, item4_falsifier = [], [], None
    potent = 0
    for a in cibrls:
        r = squaring_identities(a)
        if not r.laws[0].passed:
            item1_bad.append(a.name)
        if is_three_potent(a):
            potent += 1
            potent_bad += [(a.name, l.law) for l in r.laws[1:] if not l.passed]
        elif item4_falsifier is None and not r.laws[3].passed:
            item4_falsifier = (a.name, r.laws[3].witness)
    return {
        "cibrls": len(cibrls),
        "three_potent": potent,
        "item1_failures": item1_bad,
        "items234_failures": potent_bad,
        "item4_falsifier": item4_falsifier,
    }


def n3_lattices(max_size: int = 4) -> list:
    from .model_search import distributive_lattices

    return [a for n in range(1, max_size + 1) for sk in distributive_lattices(n) for a in n4_lattices_on(sk, n3=True)]


# -- demo pipelines ------------------------------------------------------------


def demo_inconsistency(seed: int = DEFAULT_SEED) -> DemoResult:
    res = DemoResult("inconsistency", "the historical conjunction rule proves a bare variable")
    target = parse("q")
    proof = calculus_s.inconsistency_fixture(target)
    hist = calculus_s.check_proof(proof, "historical")
    std = calculus_s.check_proof(proof, "standard")
    steps = [f"{i + 1}. {to_text(s.formula)} ; {s.rule}" for i, s in enumerate(proof.steps)]
    res.add(f"historical mode accepts a {len(proof.steps)}-step proof of {to_text(target)}", hist.accepted and len(proof.steps) <= 6, steps)
    rej = std.first_rejection
    res.add("standard mode rejects the same proof", not std.accepted, [f"step {rej.index + 1}: {rej.reason}"] if rej else [])
    return res


def demo_mv3(seed: int = DEFAULT_SEED) -> DemoResult:
    res = DemoResult("mv3", "the three-element MV-chain is an S'-algebra")
    l3 = bundled("L3")
    sp = check_s_prime(l3)
    res.add("L3 passes the S'-algebra check", sp.passed, [l.law for l in sp.failed()])
    d = check_s_def34(to_s_algebra(l3))
    res.add(f"L3 passes all {len(d.laws)} S-algebra conditions (|G| <= 2)", d.passed, [l.law for l in d.failed()])
    g3 = goedel(3)
    g = check_s_prime(g3)
    failed = g.failed()
    only_inv = len(failed) == 1 and failed[0].law.startswith("involution")
    wit = failed[0].witness if failed else None
    res.add(
        "Goedel 3-chain fails exactly involution, at the middle element",
        only_inv and wit == (g3.names[1],),
        [f"{l.law}: witness {l.witness}" for l in failed],
    )
    return res


def demo_basic_theorems(seed: int = DEFAULT_SEED) -> DemoResult:
    res = DemoResult("prop2.1", "bundled derivations of basic theorems of S")
    for name in calculus_s.FIXTURE_NAMES:
        if not name.startswith("prop2.1"):
            continue
        p = calculus_s.load_fixture(name)
        r = calculus_s.check_proof(p)
        res.add(f"{name}: |- {to_text(p.goal)} ({len(p.steps)} steps)", r.accepted)
    return res


def demo_implicative(seed: int = DEFAULT_SEED) -> DemoResult:
    res = DemoResult("thm3.1", "S is implicative; its algebras satisfy the compiled conditions")
    for name in calculus_s.FIXTURE_NAMES:
        if not name.startswith("il"):
            continue
        p = calculus_s.load_fixture(name)
        res.add(f"{name}: {to_text(p.goal)}", calculus_s.check_proof(p).accepted)
    conds = s_conditions(2)
    res.add(f"compiled {len(conds)} conditions at |G| <= 2", len(conds) > 0)
    for a in (bundled("B2"), bundled("L3")):
        r = check_s_def34(to_s_algebra(a))
        res.add(f"{a.name} satisfies every condition", r.passed, [l.law for l in r.failed()])
    algebras = s_prime_algebras(4)
    bad = soundness_violations(algebras)
    res.add(
        f"fixture theorems, S' axioms and modus ponens sound in all {len(algebras)} S'-algebras of size <= 4",
        not bad,
        [f"{b[0]} fails in {b[1]} at {b[2]}" for b in bad],
    )
    return res


def demo_squaring(seed: int = DEFAULT_SEED) -> DemoResult:
    res = DemoResult("lemma3.9", "squaring identities in small CIBRLs")
    o = squaring_outcome(4)
    res.add(f"item 1 holds in all {o['cibrls']} CIBRLs of size <= 4", not o["item1_failures"], o["item1_failures"])
    res.add(
        f"items 2-4 hold in all {o['three_potent']} 3-potent CIBRLs of size <= 4",
        not o["items234_failures"],
        [f"{n}: {law}" for n, law in o["items234_failures"]],
    )
    f = o["item4_falsifier"]
    outcome = "none found" if f is None else f"{f[0]} at {f[1]}"
    res.add("search for a non-3-potent falsifier of item 4 completed", True, [f"outcome: {outcome}"])
    return res


def demo_separation(seed: int = DEFAULT_SEED) -> DemoResult:
    res = DemoResult("prop5.3", "N4-lattices and S-algebras do not contain each other")
    A = a4()
    r = check_n4_lattice(A)
    res.add("A4 is an N4-lattice", r.passed, [l.law for l in r.failed()])
    q = quotient(A)
    qa = q.as_algebra()
    res.add(
        "A4 quotient is the two-element Boolean algebra",
        q.well_defined and isomorphic(qa, boolean2()),
        [f"classes: {[tuple(A.names[i] for i in c) for c in q.classes]}"],
    )
    eq = parse_statement(SEPARATION_EQUATION)
    cm = find_countermodel(eq, [A])
    vals = None if cm is None else (cm.valuation["x"], cm.valuation["y"])
    res.add(f"strong implication falsifies {SEPARATION_EQUATION} in A4", vals == ("1", "b"), [f"witness: {cm.valuation}" if cm else "no witness"])
    d = check_s_def34(to_s_signature(A))
    first = d.failed()[0] if d.failed() else None
    res.add("A4 is not an S-algebra", not d.passed, [f"{first.law}: witness {first.witness}"] if first else [])
    algebras = s_prime_algebras(4)
    cm2 = find_countermodel(eq, algebras)
    res.add(f"{SEPARATION_EQUATION} holds in all {len(algebras)} S'-algebras of size <= 4", cm2 is None)
    return res


def demo_n3_inclusion(seed: int = DEFAULT_SEED) -> DemoResult:
    res = DemoResult("prop5.5", "N3-lattices are S-algebras under strong implication")
    n3s = n3_lattices(4)
    bad = [a.name or str(a.names) for a in n3s if not check_s_def34(to_s_signature(a)).passed]
    res.add(f"all {len(n3s)} N3-lattices of size <= 4 pass the S-algebra conditions", not bad, bad)
    r = check_n3(a4())
    n13 = [l for l in r.laws if l.law.startswith("N13")][0]
    res.add("A4 is not an N3-lattice", not n13.passed, [f"{n13.law}: witness {n13.witness}"])
    return res


def demo_dmt(seed: int = DEFAULT_SEED) -> DemoResult:
    res = DemoResult("dmt", f"deduction transform on seeded random derivations (seed {seed})")
    for name, p in bridge_fixtures().items():
        res.add(f"{name}: |- {to_text(p.goal)}", check_proof_sp(p).accepted)
    for label, ok, goal in dmt_suite(seed):
        res.add(label, ok, [f"goal: {goal}"])
    return res


DEMOS: dict[str, Callable[[int], DemoResult]] = {
    "inconsistency": demo_inconsistency,
    "mv3": demo_mv3,
    "prop2.1": demo_basic_theorems,
    "thm3.1": demo_implicative,
    "lemma3.9": demo_squaring,
    "prop5.3": demo_separation,
    "prop5.5": demo_n3_inclusion,
    "dmt": demo_dmt,
}


def run_demo(item: str, seed: int = DEFAULT_SEED) -> DemoResult:
    try:
        fn = DEMOS[item]
    except KeyError:
        raise ValueError(f"unknown demo {item!r}; choose from {', '.join(DEMOS)}") from None
    return fn(seed)
