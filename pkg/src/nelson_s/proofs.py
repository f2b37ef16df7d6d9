"""Proof objects, check reports and the line-oriented proof file format.

Proof files (UTF-8)::

    # comment
    assume: p => q
    goal: q
    1. p ; HYP
    2. q ; E [1,3] {phi := p, gamma := q, gamma_list := []}

Steps are numbered from 1 in files; the Python API indexes steps from 0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence, Union

from .formula import Formula, Lang, ParseError, parse, to_text

Param = Union[Formula, tuple[Formula, ...]]


@dataclass(frozen=True)
class ProofStep:
    formula: Formula
    rule: str
    premises: tuple[int, ...] = ()
    params: Mapping[str, Param] = field(default_factory=dict)


@dataclass(frozen=True)
class Proof:
    assumptions: tuple[Formula, ...]
    steps: tuple[ProofStep, ...]
    goal: Formula
    name: str = ""

    def replace_steps(self, steps: Sequence[ProofStep]) -> "Proof":
        return Proof(self.assumptions, tuple(steps), self.goal, self.name)


@dataclass(frozen=True)
class StepVerdict:
    index: int
    ok: bool
    reason: str = ""


@dataclass
class CheckReport:
    verdicts: list[StepVerdict]
    problems: list[str] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return not self.problems and all(v.ok for v in self.verdicts)

    @property
    def first_rejection(self) -> StepVerdict | None:
        for v in self.verdicts:
            if not v.ok:
                return v
        return None

    def lines(self) -> list[str]:
        out = []
        for v in self.verdicts:
            mark = "ok " if v.ok else "REJ"
            out.append(f"  step {v.index + 1:>3}: {mark} {v.reason}".rstrip())
        for p in self.problems:
            out.append(f"  proof: {p}")
        out.append("accepted" if self.accepted else "rejected")
        return out

    def as_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "steps": [{"step": v.index + 1, "ok": v.ok, "reason": v.reason} for v in self.verdicts],
            "problems": list(self.problems),
        }


def goal_problems(proof: Proof) -> list[str]:
    if not proof.steps:
        return ["proof has no steps"]
    if proof.steps[-1].formula != proof.goal:
        return [f"last step is not the goal {to_text(proof.goal)}"]
    return []


def check_premise_indices(index: int, premises: Sequence[int], arity: int | None) -> str | None:
    if arity is not None and len(premises) != arity:
        return f"expected {arity} premise(s), got {len(premises)}"
    for j in premises:
        if not 0 <= j < index:
            return f"premise {j + 1} does not precede step {index + 1}"
    return None


# -- file format ------------------------------------------------------------

class ProofFileError(ValueError):
    pass


_STEP_RE = re.compile(
    r"^(?P<num>\d+)\.\s*(?P<formula>[^;]+);\s*(?P<rule>[A-Za-z0-9_']+)\s*"
    r"(?:\[(?P<prem>[\d,\s]*)\])?\s*(?:\{(?P<params>.*)\})?\s*$"
)


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _parse_params(text: str, lang: Lang) -> dict[str, Param]:
    params: dict[str, Param] = {}
    for item in _split_top(text, ","):
        if ":=" not in item:
            raise ProofFileError(f"bad parameter {item!r}")
        key, value = (s.strip() for s in item.split(":=", 1))
        if key in params:
            raise ProofFileError(f"duplicate parameter {key!r}")
        if value.startswith("["):
            if not value.endswith("]"):
                raise ProofFileError(f"unterminated list for {key!r}")
            params[key] = tuple(parse(v, lang) for v in _split_top(value[1:-1], ";"))
        else:
            params[key] = parse(value, lang)
    return params


def parse_proof(text: str, lang: Lang = Lang.S, name: str = "") -> Proof:
    assumptions: list[Formula] = []
    steps: list[ProofStep] = []
    goal: Formula | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("assume:"):
                assumptions.append(parse(line[len("assume:"):].strip(), lang))
            elif line.startswith("goal:"):
                if goal is not None:
                    raise ProofFileError("duplicate goal")
                goal = parse(line[len("goal:"):].strip(), lang)
            else:
                m = _STEP_RE.match(line)
                if not m:
                    raise ProofFileError(f"unrecognised line {line!r}")
                num = int(m.group("num"))
                if num != len(steps) + 1:
                    raise ProofFileError(f"step numbered {num}, expected {len(steps) + 1}")
                prem = m.group("prem")
                premises = tuple(int(x) - 1 for x in prem.replace(" ", "").split(",") if x) if prem else ()
                params = _parse_params(m.group("params") or "", lang)
                steps.append(ProofStep(parse(m.group("formula").strip(), lang), m.group("rule"), premises, params))
        except (ParseError, ProofFileError) as exc:
            raise ProofFileError(f"line {lineno}: {exc}") from None
    if goal is None:
        if not steps:
            raise ProofFileError("empty proof")
        goal = steps[-1].formula
    return Proof(tuple(assumptions), tuple(steps), goal, name)


def load_proof(path: str | Path, lang: Lang = Lang.S) -> Proof:
    path = Path(path)
    return parse_proof(path.read_text(encoding="utf-8"), lang, path.stem)


def _param_text(value: Param) -> str:
    if isinstance(value, tuple):
        return "[" + "; ".join(to_text(v) for v in value) + "]"
    return to_text(value)


def dump_proof(proof: Proof) -> str:
    lines = []
    if proof.name:
        lines.append(f"# {proof.name}")
    for a in proof.assumptions:
        lines.append(f"assume: {to_text(a)}")
    lines.append(f"goal: {to_text(proof.goal)}")
    for i, s in enumerate(proof.steps, 1):
        text = f"{i}. {to_text(s.formula)} ; {s.rule}"
        if s.premises:
            text += " [" + ",".join(str(j + 1) for j in s.premises) + "]"
        if s.params:
            text += " {" + ", ".join(f"{k} := {_param_text(v)}" for k, v in s.params.items()) + "}"
        lines.append(text)
    return "\n".join(lines) + "\n"
