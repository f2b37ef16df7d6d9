"""From a Hilbert calculus to the equations and quasiequations of its algebras.

With defining equation ``E(f) = {f == f => f}`` and equivalence formulas
``D(f, g) = {f => g, g => f}`` a presentation compiles to four groups:

1. ``E(D(x, x))``;
2. ``E(D(x, y))`` implies ``x == y``;
3. ``E(a)`` for every axiom ``a``;
4. for every rule instance, the ``E`` of the premises implies ``c == 1``.

Context-schematic rules are instantiated for every context length up to a
bound, with fresh variables ``g1, g2, ...``.  In the ``normalized`` form
(default) every ``E(f)`` is written ``f == 1``; ``raw`` keeps ``f == f => f``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import calculus_s
from .algebra import ClassReport, Equation, LawResult, Quasiequation, scan, witness_names
from .formula import TOP, Binary, Conn, Formula, Lang, Var, substitute, variables
from .presentation import CalculusPresentation, make_rule, parse_calculus

FRESH = ("x", "y", "z", "u", "v", "w")
FORMS = ("normalized", "raw")


class CompileError(ValueError):
    pass


def _arrow(arrow: Conn, a: Formula, b: Formula) -> Formula:
    return Binary(arrow, a, b)


def transform_E(phi: Formula, form: str = "raw", arrow: Conn = Conn.IMP) -> Equation:
    """``phi == phi => phi`` (raw) or ``phi == 1`` (normalized)."""
    if form == "normalized":
        return Equation(phi, TOP)
    if form != "raw":
        raise ValueError(f"unknown form {form!r}")
    return Equation(phi, _arrow(arrow, phi, phi))


def transform_Delta(phi: Formula, psi: Formula, arrow: Conn = Conn.IMP) -> tuple[Formula, Formula]:
    return _arrow(arrow, phi, psi), _arrow(arrow, psi, phi)


@dataclass(frozen=True)
class Condition:
    item: int
    label: str
    statement: Quasiequation

    def text(self) -> str:
        return f"[{self.item}] {self.label}: {self.statement.text()}"


def _check_connectives(f: Formula, allowed: set[Conn]) -> None:
    if isinstance(f, Binary):
        if f.conn not in allowed:
            raise CompileError(f"connective {f.conn.value} has no term operation here")
        _check_connectives(f.left, allowed)
        _check_connectives(f.right, allowed)
    elif hasattr(f, "child"):
        _check_connectives(f.child, allowed)


def _rename(formulas: Sequence[Formula]) -> dict[str, Formula]:
    seen: dict[str, None] = {}
    for f in formulas:
        for v in variables(f):
            seen.setdefault(v)
    if len(seen) > len(FRESH):
        raise CompileError("too many metavariables")
    return {v: Var(FRESH[i]) for i, v in enumerate(seen)}


def compile_calculus(
    c: CalculusPresentation,
    gamma_bound: int = 2,
    form: str = "normalized",
    arrow: Conn = Conn.IMP,
) -> list[Condition]:
    if gamma_bound < 0:
        raise CompileError("gamma_bound must be >= 0")
    allowed = {Conn.AND, Conn.OR, Conn.IMP, Conn.WIMP, Conn.FUSE}
    x, y = Var("x"), Var("y")
    E = lambda f: transform_E(f, form, arrow)  # noqa: E731
    out: list[Condition] = []
    out.append(Condition(1, "E(D(x,x))", Quasiequation((), E(_arrow(arrow, x, x)))))
    dxy = transform_Delta(x, y, arrow)
    out.append(Condition(2, "antisymmetry", Quasiequation(tuple(E(d) for d in dxy), Equation(x, y))))
    for name, ax in c.axioms:
        _check_connectives(ax, allowed)
        f = substitute(ax, _rename([ax]))
        out.append(Condition(3, f"E({name})", Quasiequation((), E(f))))
    for rule in c.rules:
        for f in (*rule.premises, rule.conclusion):
            _check_connectives(f, allowed)
        ren = _rename([*rule.premises, rule.conclusion])
        sizes = range(gamma_bound + 1) if rule.gamma_schematic else (0,)
        for k in sizes:
            gamma = [Var(f"g{i + 1}") for i in range(k)]
            prems, concl = rule.instantiate(ren, gamma)
            label = f"Q({rule.name})" + (f" |G|={k}" if rule.gamma_schematic else "")
            out.append(Condition(4, label, Quasiequation(tuple(E(p) for p in prems), Equation(concl, TOP))))
    return out


def check_conditions(a, conditions: Sequence[Condition], subject: str) -> ClassReport:
    report = ClassReport(subject)
    for cond in conditions:
        r = scan(a, cond.statement, count_all=True)
        report.laws.append(
            LawResult(cond.text(), r.holds, witness_names(a, r.witness), r.failures)
        )
    return report


@lru_cache(maxsize=None)
def s_conditions(gamma_bound: int = 2, form: str = "normalized") -> tuple[Condition, ...]:
    return tuple(compile_calculus(calculus_s.presentation(), gamma_bound, form))


def check_s_def34(a, gamma_bound: int = 2, form: str = "normalized") -> ClassReport:
    """Every compiled condition of S, checked exhaustively on ``a``.

    ``a`` is read in the S signature (its ``neg`` is the negation).  A pass
    means "passed up to context length ``gamma_bound``".
    """
    name = getattr(a, "name", "") or "algebra"
    subject = f"{name} S-algebra conditions (|G| <= {gamma_bound}, {form})"
    return check_conditions(a, s_conditions(gamma_bound, form), subject)


# -- other presentations ----------------------------------------------------


def s_prime_presentation() -> CalculusPresentation:
    from .calculus_sp import S_PRIME

    rule = make_rule("MP", ["phi", "phi => psi"], "psi", Lang.S_PRIME)
    return CalculusPresentation("S'", Lang.S_PRIME, tuple(S_PRIME.axioms.items()), (rule,))


def load_calculus_file(path, lang: Lang = Lang.ANY) -> CalculusPresentation:
    from pathlib import Path

    p = Path(path)
    return parse_calculus(p.read_text(encoding="utf-8"), lang, p.stem)


def format_conditions(conds: Sequence[Condition]) -> list[str]:
    return [c.text() for c in conds]

