from __future__ import annotations

import pytest

from nelson_s import calculus_s
from nelson_s.fixtures_dir import read_text
from nelson_s.formula import Lang, Var, parse
from nelson_s.presentation import CalculusFileError, dump_calculus, make_rule, parse_calculus


def test_bundled_file_is_the_builtin_presentation():
    c = parse_calculus(read_text("calculi", "S.calc"), Lang.S, "S")
    assert c == calculus_s.presentation()


def test_dump_parse_round_trip():
    c = calculus_s.presentation(historical=True)
    assert parse_calculus(dump_calculus(c), Lang.S, "S") == c


def test_rule_flags():
    c = parse_calculus("rule R: a , a => b / b [gamma:1]\nrule T: a / ~~a [gamma2]\n")
    r, t = c.rules
    assert r.gamma_schematic and r.context_premises == frozenset({0})
    assert t.uses_strong_context
    prems, concl = t.instantiate({"a": Var("p")}, [Var("g")])
    assert list(prems) == [parse("g => g => p")] and concl == parse("g => g => ~~p")


def test_rule_lookup():
    c = calculus_s.presentation()
    assert c.rule("E").name == "E"
    assert c.axiom("A4") == parse("~0")
    with pytest.raises(KeyError):
        c.rule("nope")


def test_make_rule_defaults_all_premises():
    r = make_rule("X", ["a", "b"], "a & b", Lang.S, "gamma")
    assert r.context_premises == frozenset({0, 1})
    assert r.metavariables() == ["a", "b"]


@pytest.mark.parametrize("text", ["rule R: a b\n", "lemma L: a\n", "axiom A1: a =>\n", "axiom\n"])
def test_bad_calculus_files(text):
    with pytest.raises(CalculusFileError):
        parse_calculus(text)
