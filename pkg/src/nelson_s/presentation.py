"""Schematic Hilbert calculi: axioms and rules with optional context prefixes.

A rule may be *context-schematic*: a finite list of formulas ``G`` is
prepended to some premises and to the conclusion, either as ``G => f`` or
(strong context) as ``G =>2 f``.  Which premises receive the prefix is
recorded per rule, since e.g. rule E prefixes only its first premise.

Calculus description files look like::

    # comments start with '#'
    axiom A2: 0 => phi
    rule E: phi , phi => gamma / gamma [gamma:1]
    rule NEGIMP_R: phi & ~psi / ~(phi => psi) [gamma2]

``[gamma]`` prefixes every premise and the conclusion, ``[gamma:1,3]`` only
the listed (1-based) premises and the conclusion; ``[gamma2]`` selects the
strong context.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .formula import (
    Formula,
    Lang,
    context_imp,
    context_imp2,
    parse,
    substitute,
    variables,
)


@dataclass(frozen=True)
class Rule:
    name: str
    premises: tuple[Formula, ...]
    conclusion: Formula
    context: str | None = None  # None, "gamma" or "gamma2"
    context_premises: frozenset[int] = frozenset()

    @property
    def gamma_schematic(self) -> bool:
        return self.context is not None

    @property
    def uses_strong_context(self) -> bool:
        return self.context == "gamma2"

    def metavariables(self) -> list[str]:
        seen: dict[str, None] = {}
        for f in (*self.premises, self.conclusion):
            for v in variables(f):
                seen.setdefault(v)
        return list(seen)

    def prefix(self, gamma: Sequence[Formula], f: Formula) -> Formula:
        if self.context == "gamma2":
            return context_imp2(gamma, f)
        return context_imp(gamma, f)

    def instantiate(
        self, bindings: Mapping[str, Formula], gamma: Sequence[Formula] = ()
    ) -> tuple[list[Formula], Formula]:
        """Premises and conclusion under ``bindings`` and context ``gamma``."""
        if gamma and not self.gamma_schematic:
            raise ValueError(f"rule {self.name} takes no context list")
        prems = []
        for i, p in enumerate(self.premises):
            f = substitute(p, bindings)
            if self.gamma_schematic and i in self.context_premises:
                f = self.prefix(gamma, f)
            prems.append(f)
        concl = substitute(self.conclusion, bindings)
        if self.gamma_schematic:
            concl = self.prefix(gamma, concl)
        return prems, concl


@dataclass(frozen=True)
class CalculusPresentation:
    name: str
    lang: Lang
    axioms: tuple[tuple[str, Formula], ...] = ()
    rules: tuple[Rule, ...] = ()
    metadata: dict = field(default_factory=dict, compare=False)

    def axiom(self, name: str) -> Formula:
        for n, f in self.axioms:
            if n == name:
                return f
        raise KeyError(name)

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)


def make_rule(
    name: str,
    premises: Sequence[str],
    conclusion: str,
    lang: Lang,
    context: str | None = None,
    context_premises: Sequence[int] | None = None,
) -> Rule:
    prems = tuple(parse(p, lang) for p in premises)
    if context is not None and context_premises is None:
        context_premises = range(len(prems))
    return Rule(
        name,
        prems,
        parse(conclusion, lang),
        context,
        frozenset(context_premises or ()),
    )


_FLAG_RE = re.compile(r"\[(gamma2?)(?::\s*([0-9,\s]+))?\]\s*$")


class CalculusFileError(ValueError):
    pass


def parse_calculus(text: str, lang: Lang = Lang.S, name: str = "calculus") -> CalculusPresentation:
    axioms: list[tuple[str, Formula]] = []
    rules: list[Rule] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            kind, rest = line.split(None, 1)
            label, body = rest.split(":", 1)
            label = label.strip()
            if kind == "axiom":
                axioms.append((label, parse(body.strip(), lang)))
            elif kind == "rule":
                context = None
                selected = None
                body = body.strip()
                while True:
                    m = _FLAG_RE.search(body)
                    if not m:
                        break
                    context = m.group(1)
                    if m.group(2):
                        selected = [int(x) - 1 for x in m.group(2).replace(" ", "").split(",") if x]
                    body = body[: m.start()].rstrip()
                if "/" not in body:
                    raise CalculusFileError("rule needs '/' between premises and conclusion")
                lhs, rhs = body.rsplit("/", 1)
                prems = [p.strip() for p in lhs.split(",") if p.strip()]
                rules.append(make_rule(label, prems, rhs.strip(), lang, context, selected))
            else:
                raise CalculusFileError(f"unknown declaration {kind!r}")
        except CalculusFileError as exc:
            raise CalculusFileError(f"line {lineno}: {exc}") from None
        except ValueError as exc:
            raise CalculusFileError(f"line {lineno}: {exc}") from None
    return CalculusPresentation(name, lang, tuple(axioms), tuple(rules))


def dump_calculus(c: CalculusPresentation) -> str:
    from .formula import to_text

    lines = []
    for n, f in c.axioms:
        lines.append(f"axiom {n}: {to_text(f)}")
    for r in c.rules:
        flag = ""
        if r.context:
            sel = sorted(r.context_premises)
            if sel == list(range(len(r.premises))):
                flag = f" [{r.context}]"
            else:
                flag = f" [{r.context}:{','.join(str(i + 1) for i in sel)}]"
        prems = " , ".join(to_text(p) for p in r.premises)
        lines.append(f"rule {r.name}: {prems} / {to_text(r.conclusion)}{flag}")
    return "\n".join(lines) + "\n"
