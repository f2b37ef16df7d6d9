"""Finite algebras, term evaluation and class checkers for residuated lattices.

Carriers are ``range(n)``; every operation is an ``n x n`` (or length ``n``)
numpy table.  Terms are :mod:`nelson_s.formula` trees: ``&`` is meet, ``|``
join, ``=>`` the implication, ``*`` fusion, ``~`` negation, ``0``/``1c`` the
bounds and ``->`` the weak implication.

Two signatures share the :class:`FiniteAlgebra` type:

* S'-signature: ``fuse`` is primitive, ``neg`` is derived as ``a => 0``;
* S-signature: ``neg`` is primitive, ``fuse`` is derived as ``~(a => ~b)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from . import kernels
from .formula import (
    Binary,
    Bottom,
    Conn,
    Formula,
    Lang,
    Neg,
    Top,
    Var,
    parse,
    to_text,
    variables,
)

# -- algebras ---------------------------------------------------------------


def _table(t, n: int, shape: tuple[int, ...]) -> np.ndarray:
    arr = np.array(t, dtype=np.intc)
    if arr.shape != shape:
        raise ValueError(f"table has shape {arr.shape}, expected {shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ValueError("table entry out of range")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    names: tuple[str, ...]
    meet: np.ndarray
    join: np.ndarray
    imp: np.ndarray
    bot: int
    top: int
    fuse_table: np.ndarray | None = None
    neg_table: np.ndarray | None = None
    name: str = ""

    def __post_init__(self):
        n = len(self.names)
        if n < 1 or len(set(self.names)) != n:
            raise ValueError("element names must be distinct and nonempty")
        sq = (n, n)
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "meet", _table(self.meet, n, sq))
        object.__setattr__(self, "join", _table(self.join, n, sq))
        object.__setattr__(self, "imp", _table(self.imp, n, sq))
        if self.fuse_table is not None:
            object.__setattr__(self, "fuse_table", _table(self.fuse_table, n, sq))
        if self.neg_table is not None:
            object.__setattr__(self, "neg_table", _table(self.neg_table, n, (n,)))
        if not (0 <= self.bot < n and 0 <= self.top < n):
            raise ValueError("bot/top out of range")

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def neg(self) -> np.ndarray:
        if self.neg_table is not None:
            return self.neg_table
        return self.imp[:, self.bot]

    @property
    def fuse(self) -> np.ndarray:
        if self.fuse_table is not None:
            return self.fuse_table
        neg = self.neg
        return neg[self.imp[:, neg]]

    @property
    def leq(self) -> np.ndarray:
        """``leq[a, b]`` iff ``meet(a, b) == a``."""
        return self.meet == np.arange(self.size)[:, None]

    def element(self, name: str | int) -> int:
        if isinstance(name, (int, np.integer)):
            if not 0 <= name < self.size:
                raise ValueError(f"element {name} out of range")
            return int(name)
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown element {name!r}") from None

    def wimp(self) -> np.ndarray:
        """Weak implication ``a => (a => b)``."""
        a = np.arange(self.size)[:, None]
        return self.imp[a, self.imp]

    def binary_stack(self) -> np.ndarray:
        return np.ascontiguousarray(np.stack([self.meet, self.join, self.imp, self.fuse, self.wimp()]), dtype=np.intc)

    def unary_stack(self) -> np.ndarray:
        return np.ascontiguousarray(self.neg[None, :], dtype=np.intc)

    def key(self) -> tuple:
        """Hashable table fingerprint (names excluded)."""
        parts = [self.meet, self.join, self.imp, self.fuse]
        return (self.size, self.bot, self.top, *(p.tobytes() for p in parts), self.neg.tobytes())

    def same_tables(self, other: "FiniteAlgebra") -> bool:
        return self.key() == other.key()

    def renamed(self, name: str) -> "FiniteAlgebra":
        return replace(self, name=name)


def from_lattice_and_fuse(names, meet, join, fuse, bot, top, name="") -> FiniteAlgebra:
    """S'-signature algebra whose implication is the residual of ``fuse``."""
    meet = np.asarray(meet)
    fuse = np.asarray(fuse)
    n = len(names)
    leq = meet == np.arange(n)[:, None]
    imp = np.empty((n, n), dtype=np.intc)
    for a in range(n):
        for c in range(n):
            ok = [b for b in range(n) if leq[fuse[a, b], c]]
            best = [b for b in ok if all(leq[x, b] for x in ok)]
            imp[a, c] = best[0] if best else bot
    return FiniteAlgebra(tuple(names), meet, join, imp, bot, top, fuse_table=fuse, name=name)


@dataclass(frozen=True, eq=False)
class Lattice:
    names: tuple[str, ...]
    meet: np.ndarray
    join: np.ndarray

    @property
    def size(self) -> int:
        return len(self.names)


# -- bundled algebras -------------------------------------------------------


def _chain_lattice(n: int):
    idx = np.arange(n)
    return np.minimum.outer(idx, idx), np.maximum.outer(idx, idx)


def lukasiewicz(n: int = 3) -> FiniteAlgebra:
    """The ``n``-element MV chain on ``0, 1/(n-1), ..., 1``."""
    meet, join = _chain_lattice(n)
    idx = np.arange(n)
    fuse = np.maximum(0, idx[:, None] + idx[None, :] - (n - 1))
    imp = np.minimum(n - 1, (n - 1) - idx[:, None] + idx[None, :])
    names = {2: ("0", "1"), 3: ("0", "h", "1")}.get(n, tuple(f"{k}/{n - 1}" for k in range(n)))
    return FiniteAlgebra(names, meet, join, imp, 0, n - 1, fuse_table=fuse, name=f"L{n}")


def goedel(n: int = 3) -> FiniteAlgebra:
    meet, join = _chain_lattice(n)
    idx = np.arange(n)
    imp = np.where(idx[:, None] <= idx[None, :], n - 1, idx[None, :])
    names = {2: ("0", "1"), 3: ("0", "h", "1")}.get(n, tuple(f"g{k}" for k in range(n)))
    return FiniteAlgebra(names, meet, join, imp, 0, n - 1, fuse_table=meet, name=f"G{n}")


def boolean2() -> FiniteAlgebra:
    meet, join = _chain_lattice(2)
    imp = np.array([[1, 1], [0, 1]])
    return FiniteAlgebra(("0", "1"), meet, join, imp, 0, 1, fuse_table=meet, name="B2")


def degenerate() -> FiniteAlgebra:
    z = np.zeros((1, 1), dtype=np.intc)
    return FiniteAlgebra(("0",), z, z, z, 0, 0, fuse_table=z, name="trivial")


def m3() -> Lattice:
    """The five-element modular, non-distributive diamond."""
    names = ("0", "a", "b", "c", "1")
    n = 5
    meet = np.zeros((n, n), dtype=np.intc)
    join = np.full((n, n), 4, dtype=np.intc)
    for x in range(n):
        for y in range(n):
            if x == y or y == 4 or x == 0:
                meet[x, y] = x
            elif x == 4 or y == 0:
                meet[x, y] = y
            if x == y or y == 0 or x == 4:
                join[x, y] = x
            elif x == 0 or y == 4:
                join[x, y] = y
    return Lattice(names, meet, join)


# -- file format ------------------------------------------------------------


class AlgebraFileError(ValueError):
    pass


def parse_blocks(text: str, blocks: Sequence[str], optional: Sequence[str] = ()) -> dict:
    """Shared reader for the algebra file formats."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line.split())
    header: dict = {}
    tables: dict[str, list[list[str]]] = {}
    i = 0
    n = None
    while i < len(lines):
        words = lines[i]
        key = words[0]
        if key == "size":
            n = int(words[1])
            i += 1
        elif key == "elements":
            header["elements"] = words[1:]
            i += 1
        elif key in ("bot", "top", "name"):
            header[key] = words[1] if len(words) > 1 else ""
            i += 1
        elif key in (*blocks, *optional):
            if n is None:
                raise AlgebraFileError("size must precede tables")
            if key in tables:
                raise AlgebraFileError(f"duplicate block {key}")
            rows = 1 if key == "neg" else n
            body = lines[i + 1 : i + 1 + rows]
            if len(words) > 1:  # single-line form, e.g. "neg 1 0"
                body = [words[1:]]
                i += 1
            else:
                i += 1 + rows
            if len(body) != rows:
                raise AlgebraFileError(f"block {key} is truncated")
            tables[key] = body
        else:
            raise AlgebraFileError(f"unknown keyword {key!r}")
    if n is None:
        raise AlgebraFileError("missing size")
    names = header.get("elements") or [str(k) for k in range(n)]
    if len(names) != n:
        raise AlgebraFileError(f"expected {n} element names")
    index = {name: k for k, name in enumerate(names)}

    def lookup(w: str) -> int:
        if w not in index:
            raise AlgebraFileError(f"unknown element {w!r}")
        return index[w]

    parsed = {}
    for key, body in tables.items():
        width = n
        if any(len(r) != width for r in body):
            raise AlgebraFileError(f"block {key} rows must have {width} entries")
        arr = np.array([[lookup(w) for w in r] for r in body], dtype=np.intc)
        parsed[key] = arr[0] if key == "neg" else arr
    missing = [b for b in blocks if b not in parsed]
    if missing:
        raise AlgebraFileError(f"missing block(s) {', '.join(missing)}")
    return {"n": n, "names": tuple(names), "lookup": lookup, "header": header, "tables": parsed}


def parse_algebra(text: str, name: str = "") -> FiniteAlgebra:
    data = parse_blocks(text, ("meet", "join", "imp"), ("fuse", "neg"))
    h, t = data["header"], data["tables"]
    for k in ("bot", "top"):
        if k not in h:
            raise AlgebraFileError(f"missing {k}")
    try:
        return FiniteAlgebra(
            data["names"],
            t["meet"],
            t["join"],
            t["imp"],
            data["lookup"](h["bot"]),
            data["lookup"](h["top"]),
            fuse_table=t.get("fuse"),
            neg_table=t.get("neg"),
            name=h.get("name") or name,
        )
    except ValueError as exc:
        raise AlgebraFileError(str(exc)) from None


def load_algebra(path: str | Path) -> FiniteAlgebra:
    path = Path(path)
    return parse_algebra(path.read_text(encoding="utf-8"), path.stem)


def dump_tables(names: Sequence[str], blocks: Iterable[tuple[str, np.ndarray]]) -> list[str]:
    width = max(len(s) for s in names)
    out = []
    for key, table in blocks:
        if table.ndim == 1:
            out.append(f"{key} " + " ".join(names[v] for v in table))
            continue
        out.append(key)
        for row in table:
            out.append("  " + " ".join(names[v].ljust(width) for v in row).rstrip())
    return out


def dump_algebra(a: FiniteAlgebra, with_fuse: bool = True) -> str:
    lines = []
    if a.name:
        lines.append(f"name {a.name}")
    lines += [f"size {a.size}", "elements " + " ".join(a.names), f"bot {a.names[a.bot]}", f"top {a.names[a.top]}"]
    blocks = [("meet", a.meet), ("join", a.join), ("imp", a.imp)]
    if with_fuse and a.fuse_table is not None:
        blocks.append(("fuse", a.fuse_table))
    if a.neg_table is not None:
        blocks.append(("neg", a.neg_table))
    lines += dump_tables(a.names, blocks)
    return "\n".join(lines) + "\n"


def bundled(name: str) -> FiniteAlgebra:
    """A bundled algebra file from ``data/algebras``."""
    from .fixtures_dir import read_text

    return parse_algebra(read_text("algebras", f"{name}.alg"), name)


# -- statements -------------------------------------------------------------

Term = Formula


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def text(self) -> str:
        return f"{to_text(self.lhs)} == {to_text(self.rhs)}"


@dataclass(frozen=True)
class Quasiequation:
    premises: tuple[Equation, ...]
    conclusion: Equation
    label: str = field(default="", compare=False)

    def text(self) -> str:
        if not self.premises:
            return self.conclusion.text()
        return ", ".join(e.text() for e in self.premises) + " |- " + self.conclusion.text()

    def variables(self) -> list[str]:
        seen: dict[str, None] = {}
        for e in (*self.premises, self.conclusion):
            for t in (e.lhs, e.rhs):
                for v in variables(t):
                    seen.setdefault(v)
        return list(seen)


Statement = Union[Equation, Quasiequation]


def as_quasi(s: Statement) -> Quasiequation:
    return s if isinstance(s, Quasiequation) else Quasiequation((), s)


class StatementError(ValueError):
    pass


def parse_equation(text: str, lang: Lang = Lang.ANY) -> Equation:
    if text.count("==") != 1:
        raise StatementError(f"equation needs exactly one '==': {text!r}")
    lhs, rhs = text.split("==")
    return Equation(parse(lhs.strip(), lang), parse(rhs.strip(), lang))


def parse_statement(text: str, lang: Lang = Lang.ANY) -> Quasiequation:
    """``l == r, ... |- l == r`` or a bare equation."""
    if "|-" in text:
        prem, concl = text.split("|-", 1)
        premises = tuple(parse_equation(p, lang) for p in re.split(r",(?![^()]*\))", prem) if p.strip())
        return Quasiequation(premises, parse_equation(concl, lang))
    return Quasiequation((), parse_equation(text, lang))


# -- evaluation -------------------------------------------------------------

_BINARY_INDEX = {Conn.AND: 0, Conn.OR: 1, Conn.IMP: 2, Conn.FUSE: 3, Conn.WIMP: 4}


class Interpretation:
    """Stacked operation tables as consumed by the kernels."""

    def __init__(self, names, binary, unary, bot, top):
        self.names = tuple(names)
        self.binary = np.ascontiguousarray(binary, dtype=np.intc)
        self.unary = np.ascontiguousarray(unary, dtype=np.intc)
        self.bot = int(bot)
        self.top = int(top)

    @property
    def size(self) -> int:
        return len(self.names)


def interpretation(a) -> Interpretation:
    if isinstance(a, Interpretation):
        return a
    return Interpretation(a.names, a.binary_stack(), a.unary_stack(), a.bot, a.top)


def _compile(t: Term, var_index: Mapping[str, int], interp: Interpretation, out: list[int]) -> int:
    """Append postfix code for ``t``; return the stack depth it needs."""
    if isinstance(t, Var):
        out += [0, var_index[t.name]]
        return 1
    if isinstance(t, Bottom):
        out += [1, interp.bot]
        return 1
    if isinstance(t, Top):
        out += [1, interp.top]
        return 1
    if isinstance(t, Neg):
        d = _compile(t.child, var_index, interp, out)
        out += [2, 0]
        return d
    if isinstance(t, Binary):
        d1 = _compile(t.left, var_index, interp, out)
        d2 = _compile(t.right, var_index, interp, out)
        out += [3, _BINARY_INDEX[t.conn]]
        return max(d1, d2 + 1)
    raise TypeError(f"not a term: {t!r}")


@dataclass(frozen=True)
class CompiledStatement:
    code: np.ndarray
    bounds: np.ndarray
    n_premises: int
    names: tuple[str, ...]
    depth: int


def compile_statement(q: Statement, interp: Interpretation) -> CompiledStatement:
    q = as_quasi(q)
    names = tuple(q.variables())
    index = {v: i for i, v in enumerate(names)}
    code: list[int] = []
    bounds = [0]
    depth = 1
    for e in (*q.premises, q.conclusion):
        for t in (e.lhs, e.rhs):
            depth = max(depth, _compile(t, index, interp, code))
            bounds.append(len(code))
    return CompiledStatement(
        np.array(code or [1, 0], dtype=np.intc), np.array(bounds, dtype=np.int_), len(q.premises), names, depth
    )


def valuation_from_index(index: int, names: Sequence[str], n: int) -> dict[str, int]:
    vals = []
    for _ in names:
        vals.append(index % n)
        index //= n
    return dict(zip(names, reversed(vals)))


@dataclass(frozen=True)
class ScanResult:
    holds: bool
    witness: dict[str, int] | None
    failures: int
    valuations: int


def scan(a, q: Statement, count_all: bool = False) -> ScanResult:
    """Exhaustive check of ``q`` over all valuations in lexicographic order."""
    interp = interpretation(a)
    c = compile_statement(q, interp)
    n = interp.size
    total = n ** len(c.names)
    first, fails = kernels.scan_valuations(
        interp.binary, interp.unary, c.code, c.bounds, c.n_premises, len(c.names), n, c.depth, 0, total, count_all
    )
    witness = None if first < 0 else valuation_from_index(int(first), c.names, n)
    return ScanResult(first < 0, witness, int(fails), total)


def holds_equation(a, e: Equation) -> bool:
    return scan(a, e).holds


def holds_quasiequation(a, q: Quasiequation) -> bool:
    return scan(a, q).holds


def find_failure(a, q: Statement) -> dict[str, int] | None:
    return scan(a, q).witness


def eval_term(a, t: Term, valuation: Mapping[str, int | str]) -> int:
    """Value of ``t`` (element index) under ``valuation`` (indices or names)."""
    interp = interpretation(a)
    names = interp.names

    def el(x) -> int:
        if isinstance(x, str):
            if x not in names:
                raise ValueError(f"unknown element {x!r}")
            return names.index(x)
        return int(x)

    def ev(t: Term) -> int:
        if isinstance(t, Var):
            if t.name not in valuation:
                raise KeyError(f"valuation misses variable {t.name}")
            return el(valuation[t.name])
        if isinstance(t, Bottom):
            return interp.bot
        if isinstance(t, Top):
            return interp.top
        if isinstance(t, Neg):
            return int(interp.unary[0, ev(t.child)])
        return int(interp.binary[_BINARY_INDEX[t.conn], ev(t.left), ev(t.right)])

    return ev(t)


def witness_names(a, witness: Mapping[str, int] | None) -> dict[str, str] | None:
    if witness is None:
        return None
    names = interpretation(a).names
    return {k: names[v] for k, v in witness.items()}


# -- class reports ----------------------------------------------------------


@dataclass(frozen=True)
class LawResult:
    law: str
    passed: bool
    witness: tuple[str, ...] | dict | None = None
    violations: int = 0

    def line(self) -> str:
        if self.passed:
            return f"  pass  {self.law}"
        return f"  FAIL  {self.law}  witness={self.witness}  violations={self.violations}"


@dataclass
class ClassReport:
    subject: str
    laws: list[LawResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(l.passed for l in self.laws)

    def failed(self) -> list[LawResult]:
        return [l for l in self.laws if not l.passed]

    def law(self, name: str) -> LawResult:
        for l in self.laws:
            if l.law == name:
                return l
        raise KeyError(name)

    def extend(self, other: "ClassReport") -> "ClassReport":
        self.laws.extend(other.laws)
        self.notes.extend(other.notes)
        return self

    def lines(self) -> list[str]:
        out = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        out += [l.line() for l in self.laws]
        out += [f"  note: {n}" for n in self.notes]
        return out

    def as_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "laws": [
                {"law": l.law, "passed": l.passed, "witness": l.witness, "violations": l.violations}
                for l in self.laws
            ],
            "notes": list(self.notes),
        }


def law_from_mask(law: str, bad: np.ndarray, names: Sequence[str]) -> LawResult:
    """Turn a boolean violation array (axes = elements) into a LawResult."""
    bad = np.asarray(bad, dtype=bool)
    count = int(bad.sum())
    if not count:
        return LawResult(law, True)
    first = np.argwhere(bad)[0]
    return LawResult(law, False, tuple(names[int(i)] for i in first), count)


def _grid(n: int, k: int):
    idx = np.arange(n)
    return np.meshgrid(*([idx] * k), indexing="ij")


def lattice_laws(names, meet, join, bot: int | None = None, top: int | None = None) -> list[LawResult]:
    n = len(names)
    a, b, c = _grid(n, 3)
    x, y = _grid(n, 2)
    idx = np.arange(n)
    laws = [
        law_from_mask("meet idempotent", meet[idx, idx] != idx, names),
        law_from_mask("join idempotent", join[idx, idx] != idx, names),
        law_from_mask("meet commutative", meet != meet.T, names),
        law_from_mask("join commutative", join != join.T, names),
        law_from_mask("meet associative", meet[meet[a, b], c] != meet[a, meet[b, c]], names),
        law_from_mask("join associative", join[join[a, b], c] != join[a, join[b, c]], names),
        law_from_mask("absorption", (meet[x, join[x, y]] != x) | (join[x, meet[x, y]] != x), names),
    ]
    if bot is not None:
        laws.append(law_from_mask("0 is the minimum", meet[bot, idx] != bot, names))
    if top is not None:
        laws.append(law_from_mask("1 is the maximum", meet[idx, top] != idx, names))
    return laws


def check_bounded_lattice(a: FiniteAlgebra) -> ClassReport:
    return ClassReport(f"{a.name or 'algebra'} bounded lattice", lattice_laws(a.names, a.meet, a.join, a.bot, a.top))


def check_cibrl(a: FiniteAlgebra) -> ClassReport:
    """Bounded lattice, commutative monoid ``(fuse, 1)``, residuation."""
    r = check_bounded_lattice(a)
    r.subject = f"{a.name or 'algebra'} CIBRL"
    f, leq, imp = a.fuse, a.leq, a.imp
    n, names = a.size, a.names
    x, y, z = _grid(n, 3)
    idx = np.arange(n)
    r.laws += [
        law_from_mask("fuse commutative", f != f.T, names),
        law_from_mask("fuse associative", f[f[x, y], z] != f[x, f[y, z]], names),
        law_from_mask("1 is the fuse unit", f[a.top, idx] != idx, names),
        law_from_mask("residuation: a*b <= c iff b <= a=>c", leq[f[x, y], z] != leq[y, imp[x, z]], names),
    ]
    return r


def neg_of(a: FiniteAlgebra) -> np.ndarray:
    """``x => 0``."""
    return a.imp[:, a.bot]


def check_s_prime(a: FiniteAlgebra) -> ClassReport:
    """Involutive 3-potent CIBRL (negation taken as ``x => 0``)."""
    r = check_cibrl(a)
    r.subject = f"{a.name or 'algebra'} S'-algebra"
    neg = neg_of(a)
    f = a.fuse
    idx = np.arange(a.size)
    sq = f[idx, idx]
    r.laws += [
        law_from_mask("involution: ~~a = a", neg[neg] != idx, a.names),
        law_from_mask("3-potency: a^2 <= a^3", ~a.leq[sq, f[idx, sq]], a.names),
    ]
    return r


def fusion_definability_check(a: FiniteAlgebra) -> bool:
    """``a * b == ~(a => ~b)`` with ``~x := x => 0``."""
    neg = neg_of(a)
    return bool(np.array_equal(a.fuse, neg[a.imp[:, neg]]))


def to_s_prime(a: FiniteAlgebra) -> FiniteAlgebra:
    """S-signature to S'-signature: ``x * y := ~(x => ~y)`` with the primitive ``~``."""
    neg = a.neg
    fuse = neg[a.imp[:, neg]]
    return FiniteAlgebra(a.names, a.meet, a.join, a.imp, a.bot, a.top, fuse_table=fuse, name=a.name)


def to_s_algebra(a: FiniteAlgebra) -> FiniteAlgebra:
    """S'-signature to S-signature: ``~x := x => 0``."""
    return FiniteAlgebra(a.names, a.meet, a.join, a.imp, a.bot, a.top, neg_table=a.imp[:, a.bot].copy(), name=a.name)


def check_distributivity(a) -> bool:
    meet, join = a.meet, a.join
    x, y, z = _grid(len(a.names), 3)
    return bool(np.array_equal(meet[x, join[y, z]], join[meet[x, y], meet[x, z]]))


def distributivity_witness(a) -> tuple[str, str, str] | None:
    meet, join = a.meet, a.join
    x, y, z = _grid(len(a.names), 3)
    r = law_from_mask("distributive", meet[x, join[y, z]] != join[meet[x, y], meet[x, z]], a.names)
    return None if r.passed else r.witness


# -- property suites --------------------------------------------------------


def s_algebra_properties(a: FiniteAlgebra) -> ClassReport:
    """Eleven pointwise properties of S-signature algebras.

    Here ``~`` is the algebra's negation, ``1 := ~0``, fusion is the derived
    ``~(a => ~b)`` and ``a <= b`` means ``a => b = 1``.
    """
    n, names = a.size, a.names
    neg, imp = a.neg, a.imp
    one = int(neg[a.bot])
    zero = a.bot
    idx = np.arange(n)
    fuse = neg[imp[:, neg]]
    le = imp == one
    x, y = _grid(n, 2)
    p, q, s = _grid(n, 3)
    sq = fuse[idx, idx]
    r = ClassReport(f"{a.name or 'algebra'} S-algebra properties")

    item1 = (imp[idx, idx] != one)
    r.laws.append(law_from_mask("1: a=>a = 1 = ~0", item1, names))

    refl = ~le[idx, idx]
    antisym = le & le.T & (x != y)
    trans = le[p, q] & le[q, s] & ~le[p, s]
    bounds = ~le[idx, one] | ~le[zero, idx]
    bad2 = np.zeros((n, n, n), dtype=bool)
    bad2 |= refl[:, None, None] | antisym[:, :, None] | trans | bounds[:, None, None]
    r.laws.append(law_from_mask("2: a=>b = 1 is a partial order with max 1, min 0", bad2, names))

    r.laws.append(law_from_mask("3: a=>b = ~b=>~a", imp != imp[neg[y], neg[x]], names))
    r.laws.append(law_from_mask("4: a=>(b=>c) = b=>(a=>c)", imp[p, imp[q, s]] != imp[q, imp[p, s]], names))
    r.laws.append(law_from_mask("5: ~~a = a and a=>0 = ~a", (neg[neg] != idx) | (imp[:, zero] != neg), names))

    mono = (fuse != fuse.T)[:, :, None] | (fuse[fuse[p, q], s] != fuse[p, fuse[q, s]]) | (fuse[one, idx] != idx)[:, None, None]
    r.laws.append(law_from_mask("6: (A, *, 1) is a commutative monoid", mono, names))
    r.laws.append(law_from_mask("7: (a*b)=>c = a=>(b=>c)", imp[fuse[p, q], s] != imp[p, imp[q, s]], names))
    r.laws.append(law_from_mask("8: a*b <= c iff b <= a=>c", le[fuse[p, q], s] != le[q, imp[p, s]], names))
    r.laws.append(law_from_mask("9: a^2 <= a^3", ~le[sq, fuse[idx, sq]], names))

    bad10 = np.zeros((n, n), dtype=bool)
    for law in lattice_laws(names, a.meet, a.join):
        if not law.passed:
            bad10[:] = True
    bad10 |= (a.meet == x) != le
    bad10 |= (a.join == y) != le
    r.laws.append(law_from_mask("10: (A, meet, join) is a lattice with order <=", bad10, names))

    j = a.join
    r.laws.append(law_from_mask("11: (a|b)^2 <= a^2 | b^2", ~le[sq[j], j[sq[x], sq[y]]], names))
    return r


def squaring_identities(a: FiniteAlgebra) -> ClassReport:
    """The four distributivity/squaring identities for CIBRLs."""
    n, names = a.size, a.names
    f, j = a.fuse, a.join
    idx = np.arange(n)
    sq = f[idx, idx]
    x, y = _grid(n, 2)
    p, q, s = _grid(n, 3)
    r = ClassReport(f"{a.name or 'algebra'} squaring identities")
    r.laws.append(law_from_mask("1: (x|y)*z = (x*z)|(y*z)", f[j[p, q], s] != j[f[p, s], f[q, s]], names))
    u = j[sq[x], sq[y]]
    r.laws.append(law_from_mask("2: x^2|y^2 = (x^2|y^2)^2", u != sq[u], names))
    r.laws.append(law_from_mask("3: (x|y^2)^2 = (x|y)^2", sq[j[x, sq[y]]] != sq[j[x, y]], names))
    r.laws.append(law_from_mask("4: (x|y)^2 = x^2|y^2", sq[j[x, y]] != u, names))
    return r


def is_three_potent(a: FiniteAlgebra) -> bool:
    f = a.fuse
    idx = np.arange(a.size)
    sq = f[idx, idx]
    return bool(a.leq[sq, f[idx, sq]].all())


def de_morgan_laws(a: FiniteAlgebra) -> ClassReport:
    neg = neg_of(a)
    x, y = _grid(a.size, 2)
    r = ClassReport(f"{a.name or 'algebra'} De Morgan laws")
    r.laws.append(law_from_mask("~(a&b) = ~a|~b", neg[a.meet] != a.join[neg[x], neg[y]], a.names))
    r.laws.append(law_from_mask("~(a|b) = ~a&~b", neg[a.join] != a.meet[neg[x], neg[y]], a.names))
    return r


def integrality(a: FiniteAlgebra) -> LawResult:
    idx = np.arange(a.size)
    return law_from_mask("a*1 = a", a.fuse[idx, a.top] != idx, a.names)

