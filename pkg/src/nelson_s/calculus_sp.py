"""The finite calculus S' (eighteen axiom schemas, modus ponens) and its
deduction transform.

The transform turns a derivation of ``psi`` from ``G + [phi]`` into a
derivation of ``(phi * phi) => psi`` from ``G``.  It works step by step:

* the discharged hypothesis becomes ``phi^2 => phi`` (A3', A12');
* axioms and other hypotheses are weakened twice (A3') and fused (A12');
* a modus ponens step combines ``phi^2 => a`` and ``phi^2 => (a => psi)``
  into ``phi^4 => psi`` and contracts back to ``phi^2`` with the lemma
  ``phi^2 => phi^2 * phi^2``, itself obtained from A18' by monotonicity and
  associativity of fusion.

Generated proofs are not minimised; the checker is the arbiter.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .formula import (
    BOT,
    TOP,
    Binary,
    Conn,
    Formula,
    Lang,
    Var,
    conj,
    disj,
    fuse,
    imp,
    in_language,
    neg,
    parse,
    substitute,
    to_text,
    variables,
)
from .proofs import (
    CheckReport,
    Param,
    Proof,
    ProofStep,
    StepVerdict,
    check_premise_indices,
    goal_problems,
)


class AxiomError(ValueError):
    pass


@dataclass(frozen=True)
class MPCalculus:
    """A Hilbert calculus whose only rule is modus ponens for ``arrow``."""

    name: str
    lang: Lang
    axiom_text: tuple[tuple[str, str], ...]
    arrow: Conn = Conn.IMP

    @cached_property
    def axioms(self) -> dict[str, Formula]:
        return {aid: parse(text, self.lang) for aid, text in self.axiom_text}

    def instantiate(self, aid: str, params: Mapping[str, Param]) -> Formula:
        try:
            schema = self.axioms[aid]
        except KeyError:
            raise AxiomError(f"{aid} is not an axiom of {self.name}") from None
        wanted = variables(schema)
        extra = [k for k in params if k not in wanted]
        if extra:
            raise AxiomError(f"{aid} has no metavariable {extra[0]!r}")
        missing = [w for w in wanted if w not in params]
        if missing:
            raise AxiomError(f"{aid}: missing binding for {', '.join(missing)}")
        for k, v in params.items():
            if isinstance(v, tuple):
                raise AxiomError(f"binding {k} must be a formula")
            if not in_language(v, self.lang):
                raise AxiomError(f"binding {to_text(v)} is outside {self.lang.value}")
        return substitute(schema, params)

    def check(self, p: Proof) -> CheckReport:
        verdicts = [self._check_step(p, i, s) for i, s in enumerate(p.steps)]
        return CheckReport(verdicts, goal_problems(p))

    def _check_step(self, p: Proof, i: int, step: ProofStep) -> StepVerdict:
        if not in_language(step.formula, self.lang):
            return StepVerdict(i, False, f"formula outside {self.lang.value}")
        if step.rule == "HYP":
            if step.premises or step.params:
                return StepVerdict(i, False, "HYP takes no premises or parameters")
            if step.formula not in p.assumptions:
                return StepVerdict(i, False, "not an assumption")
            return StepVerdict(i, True, "HYP")
        if step.rule == "MP":
            if step.params:
                return StepVerdict(i, False, "MP takes no parameters")
            bad = check_premise_indices(i, step.premises, 2)
            if bad:
                return StepVerdict(i, False, bad)
            minor = p.steps[step.premises[0]].formula
            major = p.steps[step.premises[1]].formula
            if Binary(self.arrow, minor, step.formula) != major:
                return StepVerdict(i, False, f"MP: step {step.premises[1] + 1} is not {to_text(minor)} {self.arrow.value} ...")
            return StepVerdict(i, True, "MP")
        if step.premises:
            return StepVerdict(i, False, "axioms take no premises")
        try:
            expected = self.instantiate(step.rule, step.params)
        except AxiomError as exc:
            return StepVerdict(i, False, str(exc))
        if expected != step.formula:
            return StepVerdict(i, False, f"{step.rule} yields {to_text(expected)}")
        return StepVerdict(i, True, step.rule)


S_PRIME = MPCalculus(
    "S'",
    Lang.S_PRIME,
    (
        ("A1'", "(phi => psi) => ((gamma => phi) => (gamma => psi))"),
        ("A2'", "(phi => (psi => gamma)) => (psi => (phi => gamma))"),
        ("A3'", "phi => (psi => phi)"),
        ("A4'", "(phi => gamma) => ((psi => gamma) => ((phi | psi) => gamma))"),
        ("A5'", "phi => (phi | psi)"),
        ("A6'", "psi => (phi | psi)"),
        ("A7'", "(phi & psi) => phi"),
        ("A8'", "(phi & psi) => psi"),
        ("A9'", "phi => (psi => (phi & psi))"),
        ("A10'", "((gamma => phi) & (gamma => psi)) => (gamma => (phi & psi))"),
        ("A11'", "phi => (psi => (phi * psi))"),
        ("A12'", "(phi => (psi => gamma)) => ((phi * psi) => gamma)"),
        ("A13'", "~phi => (phi => psi)"),
        ("A14'", "(phi => psi) <=> (~psi => ~phi)"),
        ("A15'", "phi <=> ~~phi"),
        ("A16'", "0 => phi"),
        ("A17'", "phi => 1c"),
        ("A18'", "phi * phi => phi * (phi * phi)"),
    ),
)

AXIOM_IDS_SP = tuple(aid for aid, _ in S_PRIME.axiom_text)


def check_proof_sp(p: Proof) -> CheckReport:
    return S_PRIME.check(p)


def weak_implication(phi: Formula, psi: Formula) -> Formula:
    return imp(phi, imp(phi, psi))


# -- derivation builder -----------------------------------------------------

class Derivation:
    """Append-only S' derivation with formula memoisation."""

    def __init__(self, assumptions: Sequence[Formula] = ()):
        self.assumptions = tuple(assumptions)
        self.steps: list[ProofStep] = []
        self._index: dict[Formula, int] = {}

    def _add(self, step: ProofStep) -> int:
        found = self._index.get(step.formula)
        if found is not None:
            return found
        self.steps.append(step)
        self._index[step.formula] = len(self.steps) - 1
        return len(self.steps) - 1

    def formula(self, i: int) -> Formula:
        return self.steps[i].formula

    def hyp(self, f: Formula) -> int:
        return self._add(ProofStep(f, "HYP"))

    def axiom(self, aid: str, **params: Formula) -> int:
        return self._add(ProofStep(S_PRIME.instantiate(aid, params), aid, (), params))

    def mp(self, minor: int, major: int) -> int:
        m = self.formula(major)
        if not (isinstance(m, Binary) and m.conn is Conn.IMP and m.left == self.formula(minor)):
            raise ValueError("modus ponens does not apply")
        return self._add(ProofStep(m.right, "MP", (minor, major)))

    def trans(self, ab: int, bc: int) -> int:
        """From ``a => b`` and ``b => c`` derive ``a => c``."""
        a, b = _split(self.formula(ab))
        _, c = _split(self.formula(bc))
        k = self.axiom("A1'", phi=b, psi=c, gamma=a)
        return self.mp(ab, self.mp(bc, k))

    def permute(self, abc: int) -> int:
        """From ``a => (b => c)`` derive ``b => (a => c)``."""
        a, bc = _split(self.formula(abc))
        b, c = _split(bc)
        return self.mp(abc, self.axiom("A2'", phi=a, psi=b, gamma=c))

    def fuse_right(self, a: Formula, bc: int) -> int:
        """From ``b => c`` derive ``a * b => a * c``."""
        b, c = _split(self.formula(bc))
        ac = fuse(a, c)
        k1 = self.axiom("A11'", phi=a, psi=c)
        k2 = self.axiom("A1'", phi=c, psi=ac, gamma=b)
        k4 = self.mp(bc, self.permute(k2))
        k5 = self.trans(k1, k4)
        return self.mp(k5, self.axiom("A12'", phi=a, psi=b, gamma=ac))

    def reassociate(self, a: Formula, b: Formula, c: Formula) -> int:
        """``a * (b * c) => (a * b) * c``."""
        ab = fuse(a, b)
        z = fuse(ab, c)
        w = imp(c, z)
        k1 = self.axiom("A11'", phi=a, psi=b)
        k2 = self.axiom("A11'", phi=ab, psi=c)
        k4 = self.mp(k2, self.axiom("A1'", phi=ab, psi=w, gamma=b))
        k5 = self.trans(k1, k4)
        k7 = self.trans(k5, self.axiom("A12'", phi=b, psi=c, gamma=z))
        return self.mp(k7, self.axiom("A12'", phi=a, psi=fuse(b, c), gamma=z))

    def square_duplicates(self, phi: Formula) -> int:
        """``phi^2 => phi^2 * phi^2`` from A18'."""
        x = fuse(phi, phi)
        s1 = self.axiom("A18'", phi=phi)
        s2 = self.fuse_right(phi, s1)
        s3 = self.trans(s1, s2)
        return self.trans(s3, self.reassociate(phi, phi, x))

    def proof(self, last: int | None = None, name: str = "") -> Proof:
        """Close the derivation at step ``last`` (default: the newest step).

        A memoised step that is not the newest is repeated at the end, so the
        goal is always the final line.
        """
        steps = list(self.steps)
        if last is not None and last != len(steps) - 1:
            steps.append(steps[last])
        return Proof(self.assumptions, tuple(steps), steps[-1].formula, name)


def _split(f: Formula) -> tuple[Formula, Formula]:
    if not (isinstance(f, Binary) and f.conn is Conn.IMP):
        raise ValueError(f"{to_text(f)} is not an implication")
    return f.left, f.right


# -- deduction transform ----------------------------------------------------

class DeductionError(ValueError):
    pass


def deduction_transform(p: Proof, phi: Formula) -> Proof:
    """Derivation of ``(phi * phi) => goal`` from the assumptions other than ``phi``."""
    report = check_proof_sp(p)
    if not report.accepted:
        raise DeductionError("input proof is not accepted")
    if phi not in p.assumptions:
        raise DeductionError(f"{to_text(phi)} is not an assumption")
    gamma = tuple(a for a in p.assumptions if a != phi)
    x = fuse(phi, phi)
    d = Derivation(gamma)
    lemma: int | None = None
    out: list[int] = []
    for step in p.steps:
        psi = step.formula
        if step.rule == "HYP" and psi == phi:
            k = d.axiom("A3'", phi=phi, psi=phi)
            out.append(d.mp(k, d.axiom("A12'", phi=phi, psi=phi, gamma=phi)))
        elif step.rule != "MP":
            base = d.hyp(psi) if step.rule == "HYP" else d.axiom(step.rule, **step.params)
            k1 = d.mp(base, d.axiom("A3'", phi=psi, psi=phi))
            k2 = d.mp(k1, d.axiom("A3'", phi=imp(phi, psi), psi=phi))
            out.append(d.mp(k2, d.axiom("A12'", phi=phi, psi=phi, gamma=psi)))
        else:
            i, j = step.premises
            flipped = d.permute(out[j])  # alpha => (x => psi)
            xx = d.trans(out[i], flipped)  # x => (x => psi)
            fused = d.mp(xx, d.axiom("A12'", phi=x, psi=x, gamma=psi))  # x * x => psi
            if lemma is None:
                lemma = d.square_duplicates(phi)
            out.append(d.trans(lemma, fused))
    return d.proof(out[-1], f"{p.name}-dmt" if p.name else "dmt")


def bridge_fixtures(phi: Formula | None = None, psi: Formula | None = None) -> dict[str, Proof]:
    """``(phi^2 => psi) => (phi => (phi => psi))`` and its converse."""
    phi = phi if phi is not None else Var("p")
    psi = psi if psi is not None else Var("q")
    x = fuse(phi, phi)

    back = Derivation()
    back.axiom("A12'", phi=phi, psi=phi, gamma=psi)
    converse = back.proof(name="bridge-weak-to-square")

    d = Derivation()
    k1 = d.axiom("A1'", phi=x, psi=psi, gamma=phi)  # (x=>psi) => ((phi=>x) => (phi=>psi))
    k2 = d.permute(k1)  # (phi=>x) => ((x=>psi) => (phi=>psi))
    k3 = d.axiom("A11'", phi=phi, psi=phi)  # phi => (phi => x)
    k4 = d.trans(k3, k2)  # phi => ((x=>psi) => (phi=>psi))
    d.permute(k4)
    forward = d.proof(name="bridge-square-to-weak")
    return {forward.name: forward, converse.name: converse}


# -- random derivations -----------------------------------------------------

def random_formula(rng: random.Random, names: Sequence[str], depth: int = 2) -> Formula:
    if depth <= 0 or rng.random() < 0.35:
        roll = rng.random()
        if roll < 0.08:
            return BOT
        if roll < 0.12:
            return TOP
        return Var(rng.choice(list(names)))
    kind = rng.choice(["imp", "imp", "and", "or", "fuse", "neg"])
    if kind == "neg":
        return neg(random_formula(rng, names, depth - 1))
    a = random_formula(rng, names, depth - 1)
    b = random_formula(rng, names, depth - 1)
    return {"imp": imp, "and": conj, "or": disj, "fuse": fuse}[kind](a, b)


def random_derivation(rng: random.Random, max_steps: int = 15, n_vars: int = 4) -> tuple[Proof, Formula]:
    """A random accepted S' derivation and the assumption to discharge."""
    names = ["p", "q", "r", "s", "t", "u"][:n_vars]
    phi = random_formula(rng, names, 1)
    others = []
    for _ in range(rng.randint(0, 2)):
        others.append(imp(phi, random_formula(rng, names, 1)) if rng.random() < 0.6 else random_formula(rng, names, 1))
    assumptions = [phi, *others]
    rng.shuffle(assumptions)
    assumptions = list(dict.fromkeys(assumptions))
    steps: list[ProofStep] = [ProofStep(phi, "HYP")]
    target = rng.randint(3, max_steps)
    pool = lambda: [s.formula for s in steps]  # noqa: E731
    while len(steps) < target:
        mp_pairs = [
            (i, j)
            for j, sj in enumerate(steps)
            for i, si in enumerate(steps)
            if isinstance(sj.formula, Binary) and sj.formula.conn is Conn.IMP and sj.formula.left == si.formula
        ]
        roll = rng.random()
        if mp_pairs and roll < 0.45:
            i, j = rng.choice(mp_pairs)
            steps.append(ProofStep(steps[j].formula.right, "MP", (i, j)))
        elif roll < 0.6:
            steps.append(ProofStep(rng.choice(assumptions), "HYP"))
        elif roll < 0.8:
            # an axiom whose antecedent is already derived, to enable modus ponens
            alpha = rng.choice(pool())
            beta = random_formula(rng, names, 1)
            aid, params = rng.choice(
                [
                    ("A3'", {"phi": alpha, "psi": beta}),
                    ("A5'", {"phi": alpha, "psi": beta}),
                    ("A11'", {"phi": alpha, "psi": beta}),
                    ("A9'", {"phi": alpha, "psi": beta}),
                    ("A15'", {"phi": alpha}),
                ]
            )
            steps.append(ProofStep(S_PRIME.instantiate(aid, params), aid, (), params))
        else:
            aid = rng.choice(AXIOM_IDS_SP)
            schema_vars = variables(S_PRIME.axioms[aid])
            params = {v: random_formula(rng, names, 1) for v in schema_vars}
            steps.append(ProofStep(S_PRIME.instantiate(aid, params), aid, (), params))
    proof = Proof(tuple(assumptions), tuple(steps), steps[-1].formula, "random")
    return proof, phi
