"""Propositional formulas for S, S' and N4: AST, parser, printer, abbreviations.

Formulas are immutable trees.  Equality is structural; no normalisation
modulo commutativity or associativity is ever applied.  Abbreviations
(``<=>``, context prefixes, powers, defined fusion) are expanded eagerly, so
two formulas are "the same" exactly when their expanded trees coincide.

ASCII syntax::

    atoms   identifiers starting with a lowercase letter
    0       bottom            1c   top
    ~       negation          *    fusion
    &       conjunction       |    disjunction
    =>      strong implication
    ->      weak implication  <=>  biconditional (expanded)

Precedence, tightest first: ``~``, ``*``, ``&``, ``|``, ``=>``/``->``,
``<=>``.  Implications associate to the right; ``*``, ``&`` and ``|`` to the
left.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence, Union


class Conn(Enum):
    AND = "&"
    OR = "|"
    IMP = "=>"
    WIMP = "->"
    FUSE = "*"


class Lang(Enum):
    S = "S"
    S_PRIME = "S'"
    N4 = "N4"
    ANY = "any"


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Bottom:
    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True, slots=True)
class Top:
    def __str__(self) -> str:
        return "1c"


@dataclass(frozen=True, slots=True)
class Neg:
    child: Formula

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Binary:
    conn: Conn
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return to_text(self)


Formula = Union[Var, Bottom, Top, Neg, Binary]

BOT = Bottom()
TOP = Top()

_ALLOWED: dict[Lang, tuple[frozenset, bool, bool, bool]] = {
    # connectives, bottom, top, negation
    Lang.S: (frozenset({Conn.AND, Conn.OR, Conn.IMP}), True, False, True),
    Lang.S_PRIME: (frozenset({Conn.AND, Conn.OR, Conn.IMP, Conn.FUSE}), True, True, True),
    Lang.N4: (frozenset({Conn.AND, Conn.OR, Conn.WIMP}), False, False, True),
    Lang.ANY: (frozenset(Conn), True, True, True),
}

_VAR_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


class LanguageError(ValueError):
    """A formula uses a symbol outside the requested language."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


# -- constructors -----------------------------------------------------------

def var(name: str) -> Var:
    if not _VAR_RE.match(name):
        raise ValueError(f"bad variable name {name!r}")
    return Var(name)


def neg(f: Formula) -> Neg:
    return Neg(f)


def conj(a: Formula, b: Formula) -> Binary:
    return Binary(Conn.AND, a, b)


def disj(a: Formula, b: Formula) -> Binary:
    return Binary(Conn.OR, a, b)


def imp(a: Formula, b: Formula) -> Binary:
    return Binary(Conn.IMP, a, b)


def wimp(a: Formula, b: Formula) -> Binary:
    return Binary(Conn.WIMP, a, b)


def fuse(a: Formula, b: Formula) -> Binary:
    return Binary(Conn.FUSE, a, b)


# -- language tags ----------------------------------------------------------

def symbols_outside(f: Formula, lang: Lang) -> list[str]:
    conns, has_bot, has_top, has_neg = _ALLOWED[lang]
    bad: list[str] = []
    for node in subformulas(f):
        if isinstance(node, Binary) and node.conn not in conns:
            bad.append(node.conn.value)
        elif isinstance(node, Bottom) and not has_bot:
            bad.append("0")
        elif isinstance(node, Top) and not has_top:
            bad.append("1c")
        elif isinstance(node, Neg) and not has_neg:
            bad.append("~")
    return bad


def in_language(f: Formula, lang: Lang) -> bool:
    return not symbols_outside(f, lang)


def require_language(f: Formula, lang: Lang) -> Formula:
    bad = symbols_outside(f, lang)
    if bad:
        raise LanguageError(f"{to_text(f)!r} uses {sorted(set(bad))} outside {lang.value}")
    return f


def subformulas(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Neg):
            stack.append(node.child)
        elif isinstance(node, Binary):
            stack.append(node.right)
            stack.append(node.left)


def variables(f: Formula) -> list[str]:
    """Variable names in order of first (left-to-right) occurrence."""
    seen: dict[str, None] = {}
    for node in subformulas(f):
        if isinstance(node, Var):
            seen.setdefault(node.name)
    return list(seen)


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


# -- substitution -----------------------------------------------------------

def substitute(f: Formula, s: Mapping[str, Formula]) -> Formula:
    """Simultaneous replacement of variables; identity outside ``s``."""
    if isinstance(f, Var):
        return s.get(f.name, f)
    if isinstance(f, Neg):
        child = substitute(f.child, s)
        return f if child is f.child else Neg(child)
    if isinstance(f, Binary):
        left = substitute(f.left, s)
        right = substitute(f.right, s)
        if left is f.left and right is f.right:
            return f
        return Binary(f.conn, left, right)
    return f


# -- abbreviations ----------------------------------------------------------

def context_imp(gamma: Sequence[Formula], phi: Formula) -> Formula:
    """``g1 => (g2 => ... (gn => phi))``; ``phi`` itself when ``gamma`` is empty."""
    out = phi
    for g in reversed(gamma):
        out = imp(g, out)
    return out


def strong_imp2(phi: Formula, psi: Formula) -> Formula:
    return imp(phi, imp(phi, psi))


def context_imp2(gamma: Sequence[Formula], phi: Formula) -> Formula:
    out = phi
    for g in reversed(gamma):
        out = strong_imp2(g, out)
    return out


def biconditional(phi: Formula, psi: Formula) -> Formula:
    return conj(imp(phi, psi), imp(psi, phi))


def weak_biconditional(phi: Formula, psi: Formula) -> Formula:
    return conj(wimp(phi, psi), wimp(psi, phi))


def defined_fusion(x: Formula, y: Formula, lang: Lang = Lang.S) -> Formula:
    """Fusion as the language provides it: ``~(x => ~y)`` in S, primitive otherwise."""
    if lang is Lang.S:
        return neg(imp(x, neg(y)))
    if lang is Lang.N4:
        raise LanguageError("fusion is not expressible in the N4 language")
    return fuse(x, y)


def power(x: Formula, n: int, lang: Lang = Lang.S_PRIME) -> Formula:
    """``x^1 = x`` and ``x^n = x * x^(n-1)``, right-nested."""
    if n < 1:
        raise ValueError("power exponent must be >= 1")
    out = x
    for _ in range(n - 1):
        out = defined_fusion(x, out, lang)
    return out


# -- printing ---------------------------------------------------------------

_PREC = {Conn.FUSE: 4, Conn.AND: 3, Conn.OR: 2, Conn.IMP: 1, Conn.WIMP: 1}


def _prec(f: Formula) -> int:
    if isinstance(f, Binary):
        return _PREC[f.conn]
    return 5


def to_text(f: Formula) -> str:
    if isinstance(f, (Var, Bottom, Top)):
        return str(f)
    if isinstance(f, Neg):
        inner = to_text(f.child)
        return "~" + (inner if _prec(f.child) >= 5 else f"({inner})")
    p = _PREC[f.conn]
    left = to_text(f.left)
    right = to_text(f.right)
    if p == 1:
        # right-associative
        if _prec(f.left) <= p:
            left = f"({left})"
        if _prec(f.right) < p:
            right = f"({right})"
    else:
        if _prec(f.left) < p:
            left = f"({left})"
        if _prec(f.right) <= p:
            right = f"({right})"
    return f"{left} {f.conn.value} {right}"


# -- parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><=>|=>|->|[~*&|()])|(?P<top>1c)|(?P<bot>0)|(?P<id>[a-z][A-Za-z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        start = m.start(kind)
        # reject identifiers glued to a following identifier character (e.g. "0x")
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
        if kind in ("top", "bot") and pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
            raise ParseError("malformed constant", start)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, lang: Lang):
        self.toks = _tokenize(text)
        self.i = 0
        self.lang = lang
        self.conns, self.has_bot, self.has_top, self.has_neg = _ALLOWED[lang]

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def check_conn(self, conn: Conn, pos: int) -> None:
        if conn not in self.conns:
            raise ParseError(f"connective {conn.value!r} not in language {self.lang.value}", pos)

    def parse(self) -> Formula:
        f = self.bicond()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return f

    def bicond(self) -> Formula:
        left = self.implication()
        kind, val, pos = self.peek()
        if kind == "op" and val == "<=>":
            self.take()
            self.check_conn(Conn.IMP, pos)
            right = self.bicond()
            return biconditional(left, right)
        return left

    def implication(self) -> Formula:
        left = self.binary(2)
        kind, val, pos = self.peek()
        if kind == "op" and val in ("=>", "->"):
            self.take()
            conn = Conn(val)
            self.check_conn(conn, pos)
            right = self.implication()
            return Binary(conn, left, right)
        return left

    _LEVELS = {2: Conn.OR, 3: Conn.AND, 4: Conn.FUSE}

    def binary(self, level: int) -> Formula:
        if level > 4:
            return self.unary()
        conn = self._LEVELS[level]
        left = self.binary(level + 1)
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == conn.value:
                self.take()
                self.check_conn(conn, pos)
                left = Binary(conn, left, self.binary(level + 1))
            else:
                return left

    def unary(self) -> Formula:
        kind, val, pos = self.take()
        if kind == "op" and val == "~":
            if not self.has_neg:
                raise ParseError(f"negation not in language {self.lang.value}", pos)
            return Neg(self.unary())
        if kind == "op" and val == "(":
            f = self.bicond()
            k2, v2, p2 = self.take()
            if v2 != ")":
                raise ParseError("expected ')'", p2)
            return f
        if kind == "bot":
            if not self.has_bot:
                raise ParseError(f"constant 0 not in language {self.lang.value}", pos)
            return BOT
        if kind == "top":
            if not self.has_top:
                raise ParseError(f"constant 1c not in language {self.lang.value}", pos)
            return TOP
        if kind == "id":
            return Var(val)
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def parse(text: str, lang: Lang = Lang.S) -> Formula:
    return _Parser(text, lang).parse()


def parse_many(texts: Iterable[str], lang: Lang = Lang.S) -> list[Formula]:
    return [parse(t, lang) for t in texts]
