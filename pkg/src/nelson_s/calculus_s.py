"""Proof checker for Nelson's calculus S (five axioms, twenty schematic rules).

Schema metavariables are ``phi``, ``psi`` and ``gamma``; context-schematic
rules additionally take ``gamma_list``, the explicit context.  The context is
never inferred from the premise, because ``a => (b => c)`` splits in more
than one way.

``AND_L2_HISTORICAL`` is the historical variant of ``AND_L2`` with premise
and conclusion swapped.  It is only admitted in ``historical`` mode, where it
derives every formula.
"""
from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import Mapping, Sequence

from .formula import Formula, Lang, conj, imp, in_language, parse, substitute, to_text, variables
from .presentation import CalculusPresentation, Rule, make_rule
from .proofs import (
    CheckReport,
    Param,
    Proof,
    ProofStep,
    StepVerdict,
    check_premise_indices,
    goal_problems,
    parse_proof,
)


class RuleId(str, Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    A5 = "A5"
    P = "P"
    C = "C"
    E = "E"
    IMP_L = "IMP_L"
    IMP_R = "IMP_R"
    AND_L1 = "AND_L1"
    AND_L2 = "AND_L2"
    AND_R = "AND_R"
    OR_L1 = "OR_L1"
    OR_L2 = "OR_L2"
    OR_R1 = "OR_R1"
    OR_R2 = "OR_R2"
    NEGIMP_L = "NEGIMP_L"
    NEGIMP_R = "NEGIMP_R"
    NEGAND_L = "NEGAND_L"
    NEGAND_R = "NEGAND_R"
    NEGOR_L = "NEGOR_L"
    NEGOR_R = "NEGOR_R"
    NEGNEG_L = "NEGNEG_L"
    NEGNEG_R = "NEGNEG_R"
    HYP = "HYP"
    AND_L2_HISTORICAL = "AND_L2_HISTORICAL"


AXIOM_IDS = (RuleId.A1, RuleId.A2, RuleId.A3, RuleId.A4, RuleId.A5)

_AXIOM_TEXT = {
    RuleId.A1: "phi => phi",
    RuleId.A2: "0 => phi",
    RuleId.A3: "~phi => (phi => 0)",
    RuleId.A4: "~0",
    RuleId.A5: "(phi => psi) <=> (~psi => ~phi)",
}

# (premises, conclusion, context, prefixed premises)
_RULE_TEXT: dict[RuleId, tuple] = {
    RuleId.P: (["phi => (psi => gamma)"], "psi => (phi => gamma)", "gamma", None),
    RuleId.C: (["phi => (phi => (phi => gamma))"], "phi => (phi => gamma)", None, None),
    RuleId.E: (["phi", "phi => gamma"], "gamma", "gamma", [0]),
    RuleId.IMP_L: (["phi", "psi => gamma"], "(phi => psi) => gamma", "gamma", [0]),
    RuleId.IMP_R: (["gamma"], "phi => gamma", None, None),
    RuleId.AND_L1: (["phi => gamma"], "(phi & psi) => gamma", None, None),
    RuleId.AND_L2: (["psi => gamma"], "(phi & psi) => gamma", None, None),
    RuleId.AND_R: (["phi", "psi"], "phi & psi", "gamma", None),
    RuleId.OR_L1: (["phi => gamma", "psi => gamma"], "(phi | psi) => gamma", None, None),
    RuleId.OR_L2: (
        ["phi => (phi => gamma)", "psi => (psi => gamma)"],
        "(phi | psi) => ((phi | psi) => gamma)",
        None,
        None,
    ),
    RuleId.OR_R1: (["phi"], "phi | psi", "gamma", None),
    RuleId.OR_R2: (["psi"], "phi | psi", "gamma", None),
    RuleId.NEGIMP_L: (["(phi & ~psi) => gamma"], "~(phi => psi) => gamma", None, None),
    RuleId.NEGIMP_R: (["phi & ~psi"], "~(phi => psi)", "gamma2", None),
    RuleId.NEGAND_L: (["(~phi | ~psi) => gamma"], "~(phi & psi) => gamma", None, None),
    RuleId.NEGAND_R: (["~phi | ~psi"], "~(phi & psi)", "gamma", None),
    RuleId.NEGOR_L: (["(~phi & ~psi) => gamma"], "~(phi | psi) => gamma", None, None),
    RuleId.NEGOR_R: (["~phi & ~psi"], "~(phi | psi)", "gamma", None),
    RuleId.NEGNEG_L: (["phi => gamma"], "~~phi => gamma", None, None),
    RuleId.NEGNEG_R: (["phi"], "~~phi", "gamma", None),
    RuleId.AND_L2_HISTORICAL: (["(phi & psi) => gamma"], "psi => gamma", None, None),
}

STANDARD_RULES = tuple(r for r in _RULE_TEXT if r is not RuleId.AND_L2_HISTORICAL)


class RuleError(ValueError):
    """Raised when a rule or axiom cannot be applied as requested."""


@lru_cache(maxsize=None)
def _axiom_schema(rid: RuleId) -> Formula:
    return parse(_AXIOM_TEXT[rid], Lang.S)


@lru_cache(maxsize=None)
def rule_schema(rid: RuleId) -> Rule:
    prems, concl, context, selected = _RULE_TEXT[rid]
    return make_rule(rid.value, prems, concl, Lang.S, context, selected)


def presentation(historical: bool = False) -> CalculusPresentation:
    """S as a :class:`CalculusPresentation` (input to the algebraizer)."""
    rules = [rule_schema(r) for r in STANDARD_RULES]
    if historical:
        rules.append(rule_schema(RuleId.AND_L2_HISTORICAL))
    axioms = tuple((a.value, _axiom_schema(a)) for a in AXIOM_IDS)
    return CalculusPresentation("S", Lang.S, axioms, tuple(rules))


def _bindings(params: Mapping[str, Param], wanted: Sequence[str], context: bool, what: str):
    formulas: dict[str, Formula] = {}
    gamma: tuple[Formula, ...] = ()
    for key, value in params.items():
        if key == "gamma_list":
            if not context:
                raise RuleError(f"{what} takes no gamma_list")
            if not isinstance(value, tuple):
                raise RuleError("gamma_list must be a list")
            gamma = value
        elif key in wanted:
            if isinstance(value, tuple):
                raise RuleError(f"binding {key} must be a formula")
            formulas[key] = value
        else:
            raise RuleError(f"{what} has no metavariable {key!r}")
    missing = [w for w in wanted if w not in formulas]
    if missing:
        raise RuleError(f"{what}: missing binding for {', '.join(missing)}")
    for f in (*formulas.values(), *gamma):
        if not in_language(f, Lang.S):
            raise RuleError(f"binding {to_text(f)} is outside the language of S")
    return formulas, gamma


def instantiate_axiom(rid: RuleId | str, params: Mapping[str, Param]) -> Formula:
    rid = RuleId(rid)
    if rid not in AXIOM_IDS:
        raise RuleError(f"{rid.value} is not an axiom")
    schema = _axiom_schema(rid)
    formulas, _ = _bindings(params, variables(schema), False, rid.value)
    return substitute(schema, formulas)


def apply_rule(rid: RuleId | str, premise_formulas: Sequence[Formula], params: Mapping[str, Param]) -> Formula:
    """Conclusion of rule ``rid`` on the given premises, or :class:`RuleError`."""
    rid = RuleId(rid)
    if rid not in _RULE_TEXT:
        raise RuleError(f"{rid.value} is not an inference rule")
    rule = rule_schema(rid)
    formulas, gamma = _bindings(params, rule.metavariables(), rule.gamma_schematic, rid.value)
    if len(premise_formulas) != len(rule.premises):
        raise RuleError(f"{rid.value} takes {len(rule.premises)} premise(s), got {len(premise_formulas)}")
    expected, conclusion = rule.instantiate(formulas, gamma)
    for k, (want, got) in enumerate(zip(expected, premise_formulas), 1):
        if want != got:
            raise RuleError(f"premise {k} is {to_text(got)}, schema needs {to_text(want)}")
    return conclusion


def check_proof(p: Proof, mode: str = "standard") -> CheckReport:
    if mode not in ("standard", "historical"):
        raise ValueError(f"unknown mode {mode!r}")
    verdicts = []
    for i, step in enumerate(p.steps):
        verdicts.append(_check_step(p, i, step, mode))
    return CheckReport(verdicts, goal_problems(p))


def _check_step(p: Proof, i: int, step: ProofStep, mode: str) -> StepVerdict:
    try:
        rid = RuleId(step.rule)
    except ValueError:
        return StepVerdict(i, False, f"unknown rule {step.rule}")
    if not in_language(step.formula, Lang.S):
        return StepVerdict(i, False, "formula outside the language of S")
    if rid is RuleId.AND_L2_HISTORICAL and mode != "historical":
        return StepVerdict(i, False, "historical rule AND_L2_HISTORICAL not admitted in standard mode")
    if rid is RuleId.HYP:
        if step.premises or step.params:
            return StepVerdict(i, False, "HYP takes no premises or parameters")
        if step.formula not in p.assumptions:
            return StepVerdict(i, False, "not an assumption")
        return StepVerdict(i, True, "HYP")
    try:
        if rid in AXIOM_IDS:
            if step.premises:
                return StepVerdict(i, False, "axioms take no premises")
            expected = instantiate_axiom(rid, step.params)
        else:
            bad = check_premise_indices(i, step.premises, len(rule_schema(rid).premises))
            if bad:
                return StepVerdict(i, False, bad)
            expected = apply_rule(rid, [p.steps[j].formula for j in step.premises], step.params)
    except RuleError as exc:
        return StepVerdict(i, False, f"{rid.value}: {exc}")
    if expected != step.formula:
        return StepVerdict(i, False, f"{rid.value} yields {to_text(expected)}")
    return StepVerdict(i, True, rid.value)


def inconsistency_fixture(target: Formula) -> Proof:
    """Historical-mode derivation of ``target`` from no assumptions.

    The side formula is the A1 instance ``target => target``.
    """
    side = imp(target, target)
    binding = {"phi": target, "psi": side, "gamma": target}
    steps = (
        ProofStep(side, RuleId.A1, (), {"phi": target}),
        ProofStep(imp(conj(target, side), target), RuleId.AND_L1, (0,), binding),
        ProofStep(imp(side, target), RuleId.AND_L2_HISTORICAL, (1,), binding),
        ProofStep(side, RuleId.A1, (), {"phi": target}),
        ProofStep(target, RuleId.E, (3, 2), {"phi": side, "gamma": target, "gamma_list": ()}),
    )
    return Proof((), steps, target, "inconsistency")


FIXTURE_NAMES = (
    "prop2.1.1",
    "prop2.1.2",
    "prop2.1.3",
    "prop2.1.4",
    "prop2.1.5",
    "prop2.2-lr-1",
    "prop2.2-lr-2",
    "prop2.2-rl",
    "il1",
    "il2",
    "il3",
    "il4",
    "il5-neg",
    "il5-and",
    "il5-or",
    "il5-imp",
)


def load_fixture(name: str) -> Proof:
    from .fixtures_dir import read_text

    return parse_proof(read_text("proofs", f"{name}.proof"), Lang.S, name)


def fixtures() -> dict[str, Proof]:
    return {name: load_fixture(name) for name in FIXTURE_NAMES}
