"""N4-lattices, N3-lattices, strong implication and the N4 Hilbert system.

An N4-lattice is a De Morgan algebra with a weak implication ``->`` such that

1. the lattice with ``~`` is a De Morgan algebra;
2. ``a <~ b`` iff ``(a -> b) -> (a -> b) = a -> b`` is a preorder;
3. its symmetric part is a congruence for ``&, |, ->`` and the quotient is an
   implicative lattice (``->`` is the relative pseudocomplement);
4. ``~(a -> b)`` is equivalent to ``a & ~b``;
5. ``a <= b`` iff ``a <~ b`` and ``~b <~ ~a``.

The strong implication is ``a => b := (a -> b) & (~b -> ~a)``.  N3-lattices
are the N4-lattices validating ``~a -> (a -> b)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .algebra import (
    AlgebraFileError,
    ClassReport,
    FiniteAlgebra,
    dump_tables,
    lattice_laws,
    law_from_mask,
    parse_blocks,
)
from .calculus_sp import MPCalculus
from .formula import Conn, Lang, parse
from .proofs import Proof, ProofStep


def _sq(t, n, one_d=False) -> np.ndarray:
    arr = np.array(t, dtype=np.intc)
    shape = (n,) if one_d else (n, n)
    if arr.shape != shape or (arr.size and (arr.min() < 0 or arr.max() >= n)):
        raise ValueError(f"bad table of shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class N4Algebra:
    names: tuple[str, ...]
    meet: np.ndarray
    join: np.ndarray
    wimp_table: np.ndarray
    neg_table: np.ndarray
    name: str = ""

    def __post_init__(self):
        n = len(self.names)
        if n < 1 or len(set(self.names)) != n:
            raise ValueError("element names must be distinct and nonempty")
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "meet", _sq(self.meet, n))
        object.__setattr__(self, "join", _sq(self.join, n))
        object.__setattr__(self, "wimp_table", _sq(self.wimp_table, n))
        object.__setattr__(self, "neg_table", _sq(self.neg_table, n, True))

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def leq(self) -> np.ndarray:
        return self.meet == np.arange(self.size)[:, None]

    @property
    def bot(self) -> int:
        """Least element (computed; finite lattices are bounded)."""
        cands = np.flatnonzero(self.leq.all(axis=1))
        return int(cands[0]) if cands.size else 0

    @property
    def top(self) -> int:
        cands = np.flatnonzero(self.leq.all(axis=0))
        return int(cands[0]) if cands.size else 0

    @property
    def neg(self) -> np.ndarray:
        return self.neg_table

    @property
    def strong(self) -> np.ndarray:
        return strong_implication_table(self)

    def binary_stack(self) -> np.ndarray:
        """Term operations: ``=>`` is strong, ``->`` weak, ``*`` is ``~(a => ~b)``."""
        imp = self.strong
        neg = self.neg_table
        fuse = neg[imp[:, neg]]
        return np.ascontiguousarray(np.stack([self.meet, self.join, imp, fuse, self.wimp_table]), dtype=np.intc)

    def unary_stack(self) -> np.ndarray:
        return np.ascontiguousarray(self.neg_table[None, :], dtype=np.intc)

    def element(self, name: str) -> int:
        return self.names.index(name)

    def with_wimp(self, a: str, b: str, value: str) -> "N4Algebra":
        w = np.array(self.wimp_table)
        w[self.element(a), self.element(b)] = self.element(value)
        return replace(self, wimp_table=w, name=f"{self.name}*")


def strong_implication_table(a: N4Algebra) -> np.ndarray:
    w, neg, meet = a.wimp_table, a.neg_table, a.meet
    return meet[w, w[np.ix_(neg, neg)].T].astype(np.intc)


def to_s_signature(a: N4Algebra) -> FiniteAlgebra:
    """The S-signature reduct: strong implication and the De Morgan negation."""
    return FiniteAlgebra(a.names, a.meet, a.join, strong_implication_table(a), a.bot, a.top, neg_table=a.neg_table, name=a.name)


# -- file format ------------------------------------------------------------


def parse_n4(text: str, name: str = "") -> N4Algebra:
    data = parse_blocks(text, ("meet", "join", "wimp", "neg"))
    t = data["tables"]
    try:
        return N4Algebra(data["names"], t["meet"], t["join"], t["wimp"], t["neg"], data["header"].get("name") or name)
    except ValueError as exc:
        raise AlgebraFileError(str(exc)) from None


def load_n4(path: str | Path) -> N4Algebra:
    path = Path(path)
    return parse_n4(path.read_text(encoding="utf-8"), path.stem)


def dump_n4(a: N4Algebra) -> str:
    lines = [f"name {a.name}"] if a.name else []
    lines += [f"size {a.size}", "elements " + " ".join(a.names)]
    lines += dump_tables(a.names, [("meet", a.meet), ("join", a.join), ("wimp", a.wimp_table), ("neg", a.neg_table)])
    return "\n".join(lines) + "\n"


def a4() -> N4Algebra:
    """The four-element diamond N4-lattice, from the bundled fixture."""
    from .fixtures_dir import read_text

    return parse_n4(read_text("algebras", "A4.n4"), "A4")


def boolean_n4() -> N4Algebra:
    idx = np.arange(2)
    meet, join = np.minimum.outer(idx, idx), np.maximum.outer(idx, idx)
    return N4Algebra(("0", "1"), meet, join, np.array([[1, 1], [0, 1]]), np.array([1, 0]), "B2")


# -- checks -----------------------------------------------------------------


def _grid(n, k):
    return np.meshgrid(*([np.arange(n)] * k), indexing="ij")


def check_de_morgan(a) -> ClassReport:
    n, names = a.size, a.names
    meet, join, neg = a.meet, a.join, a.neg_table
    leq = a.leq
    x, y, z = _grid(n, 3)
    u, v = _grid(n, 2)
    idx = np.arange(n)
    r = ClassReport(f"{a.name or 'algebra'} De Morgan algebra")
    r.laws += lattice_laws(names, meet, join)
    r.laws.append(law_from_mask("distributive", meet[x, join[y, z]] != join[meet[x, y], meet[x, z]], names))
    r.laws.append(law_from_mask("~~a = a", neg[neg] != idx, names))
    r.laws.append(law_from_mask("~(a&b) = ~a|~b", neg[meet] != join[neg[u], neg[v]], names))
    r.laws.append(law_from_mask("~(a|b) = ~a&~b", neg[join] != meet[neg[u], neg[v]], names))
    r.laws.append(law_from_mask("a <= b implies ~b <= ~a", leq & ~leq[neg[v], neg[u]], names))
    return r


def preorder_matrix(a) -> np.ndarray:
    w = a.wimp_table
    return w[w, w] == w


def preorder_leq(a, x, y) -> bool:
    x = a.names.index(x) if isinstance(x, str) else x
    y = a.names.index(y) if isinstance(y, str) else y
    w = a.wimp_table
    c = w[x, y]
    return bool(w[c, c] == c)


@dataclass(frozen=True, eq=False)
class QuotientStructure:
    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    wimp: np.ndarray
    well_defined: bool

    def as_algebra(self, names: tuple[str, ...] | None = None) -> FiniteAlgebra:
        """Quotient read as a bounded lattice with implication ``->``."""
        k = len(self.classes)
        names = names or tuple("{" + ",".join(map(str, c)) + "}" for c in self.classes)
        leq = self.meet == np.arange(k)[:, None]
        bot = int(np.flatnonzero(leq.all(axis=1))[0])
        top = int(np.flatnonzero(leq.all(axis=0))[0])
        return FiniteAlgebra(names, self.meet, self.join, self.wimp, bot, top)


def quotient(a) -> QuotientStructure:
    pre = preorder_matrix(a)
    if not pre.diagonal().all():
        raise ValueError("<~ is not reflexive; no quotient")
    eq = pre & pre.T
    n = a.size
    class_of = np.full(n, -1, dtype=np.intc)
    classes: list[tuple[int, ...]] = []
    for x in range(n):
        if class_of[x] < 0:
            members = tuple(int(y) for y in np.flatnonzero(eq[x]))
            for y in members:
                class_of[y] = len(classes)
            classes.append(members)
    k = len(classes)
    ok = True
    tables = []
    for op in (a.meet, a.join, a.wimp_table):
        induced = class_of[op]
        t = np.zeros((k, k), dtype=np.intc)
        for i in range(k):
            for j in range(k):
                vals = {int(induced[x, y]) for x in classes[i] for y in classes[j]}
                ok &= len(vals) == 1
                t[i, j] = min(vals)
        tables.append(t)
    return QuotientStructure(tuple(classes), class_of, *tables, well_defined=ok)


def check_n4_lattice(a) -> ClassReport:
    names, n = a.names, a.size
    r = check_de_morgan(a)
    r.subject = f"{a.name or 'algebra'} N4-lattice"
    for law in r.laws:
        object.__setattr__(law, "law", f"1 {law.law}")
    pre = preorder_matrix(a)
    x, y, z = _grid(n, 3)
    idx = np.arange(n)
    r.laws.append(law_from_mask("2 <~ reflexive", ~pre[idx, idx], names))
    r.laws.append(law_from_mask("2 <~ transitive", pre[x, y] & pre[y, z] & ~pre[x, z], names))
    eq = pre & pre.T
    u, v = _grid(n, 2)
    cong = np.zeros((n, n), dtype=bool)
    for op in (a.meet, a.join, a.wimp_table):
        # x == y implies x op z == y op z and z op x == z op y
        cong |= (eq[:, :, None] & ~eq[op[x, z], op[y, z]]).any(axis=2)
        cong |= (eq[:, :, None] & ~eq[op[z, x], op[z, y]]).any(axis=2)
    r.laws.append(law_from_mask("3 equivalence is a congruence for &, |, ->", cong, names))
    is_preorder = bool(pre.diagonal().all())
    q = quotient(a) if is_preorder else None
    if q is not None and q.well_defined and not cong.any():
        k = len(q.classes)
        qn = tuple(f"[{names[c[0]]}]" for c in q.classes)
        qleq = q.meet == np.arange(k)[:, None]
        qx, qy, qz = _grid(k, 3)
        rpc = qleq[q.meet[qz, qx], qy] != qleq[qz, q.wimp[qx, qy]]
        r.laws.append(law_from_mask("3 quotient -> is the relative pseudocomplement", rpc, qn))
        has_top = bool(qleq.all(axis=0).any())
        r.laws.append(law_from_mask("3 quotient has a top", np.array([not has_top]), ("quotient",)))
    else:
        r.laws.append(law_from_mask("3 quotient -> is the relative pseudocomplement", np.ones(1, bool), ("undefined",)))
    neg, w = a.neg_table, a.wimp_table
    r.laws.append(law_from_mask("4 ~(a->b) equivalent to a&~b", ~eq[neg[w], a.meet[u, neg[v]]], names))
    item5 = a.leq != (pre & pre[neg[v], neg[u]])
    r.laws.append(law_from_mask("5 a <= b iff a <~ b and ~b <~ ~a", item5, names))
    return r


def check_n3(a) -> ClassReport:
    r = check_n4_lattice(a)
    r.subject = f"{a.name or 'algebra'} N3-lattice"
    w, neg = a.wimp_table, a.neg_table
    u, v = _grid(a.size, 2)
    e = w[neg[u], w[u, v]]
    r.laws.append(law_from_mask("N13 ~a -> (a -> b) valid (e = e -> e)", w[e, e] != e, a.names))
    return r


# -- enumeration ------------------------------------------------------------


def _involutions(leq: np.ndarray):
    n = len(leq)
    for perm in itertools.permutations(range(n)):
        p = np.array(perm)
        if not np.array_equal(p[p], np.arange(n)):
            continue
        # antitone: a <= b implies p(b) <= p(a)
        if (leq & ~leq[np.ix_(p, p)].T).any():
            continue
        yield p


def _preorders(leq: np.ndarray, neg: np.ndarray):
    n = len(leq)
    extra = [(i, j) for i in range(n) for j in range(n) if not leq[i, j]]
    for bits in range(1 << len(extra)):
        pre = leq.copy()
        for k, (i, j) in enumerate(extra):
            if bits >> k & 1:
                pre[i, j] = True
        comp = (pre.astype(np.int32) @ pre.astype(np.int32)) > 0
        if (comp & ~pre).any():
            continue
        if not np.array_equal(leq, pre & pre[np.ix_(neg, neg)].T):
            continue
        yield pre


def _forced_wimp(meet, join, neg, pre) -> np.ndarray | None:
    """The only possible ``->`` for a given preorder, if any."""
    n = len(pre)
    eq = pre & pre.T
    # congruence for meet and join
    for op in (meet, join):
        for x in range(n):
            for y in range(n):
                if eq[x, y] and not (eq[op[x], op[y]]).all():
                    return None
    w = np.full((n, n), -1, dtype=np.intc)
    for a in range(n):
        for b in range(n):
            # c is a relative pseudocomplement of a w.r.t. b in the quotient
            ok = [c for c in range(n) if pre[meet[c, a], b]]
            best = [c for c in ok if all(pre[d, c] for d in ok)]
            target = meet[a, neg[b]]
            cands = [c for c in best if eq[neg[c], target]]
            if len(cands) != 1:
                return None
            w[a, b] = cands[0]
    return w


def n4_lattices_on(sk, n3: bool = False) -> list[N4Algebra]:
    """N4-lattices (or N3-lattices) on a canonical distributive lattice."""
    from .model_search import _canonical_on_skeleton

    leq = np.asarray(sk.leq, dtype=bool)
    seen: dict[tuple, N4Algebra] = {}
    check = check_n3 if n3 else check_n4_lattice
    for neg in _involutions(leq):
        for pre in _preorders(leq, neg):
            w = _forced_wimp(sk.meet, sk.join, neg, pre)
            if w is None:
                continue
            cand = N4Algebra(sk.names, sk.meet, sk.join, w, neg)
            if not check(cand).passed:
                continue
            key, (w_c, neg_c) = _canonical_on_skeleton(sk, [w, neg])
            if key not in seen:
                seen[key] = N4Algebra(sk.names, sk.meet, sk.join, w_c, neg_c)
    return [seen[k] for k in sorted(seen)]


# -- Hilbert systems --------------------------------------------------------


def _iff(a: str, b: str) -> str:
    return f"(({a}) -> ({b})) & (({b}) -> ({a}))"


_N4_AXIOMS = (
    ("N1", "phi -> (psi -> phi)"),
    ("N2", "(phi -> (psi -> gamma)) -> ((phi -> psi) -> (phi -> gamma))"),
    ("N3", "(phi & psi) -> phi"),
    ("N4", "(phi & psi) -> psi"),
    ("N5", "(phi -> psi) -> ((phi -> gamma) -> (phi -> (psi & gamma)))"),
    ("N6", "phi -> (phi | psi)"),
    ("N7", "psi -> (phi | psi)"),
    ("N8", "(phi -> gamma) -> ((psi -> gamma) -> ((phi | psi) -> gamma))"),
    ("N9", _iff("~~phi", "phi")),
    ("N10", _iff("~(phi | psi)", "~phi & ~psi")),
    ("N11", _iff("~(phi & psi)", "~phi | ~psi")),
    ("N12", _iff("~(phi -> psi)", "phi & ~psi")),
)

N4_CALCULUS = MPCalculus("N4", Lang.N4, _N4_AXIOMS, arrow=Conn.WIMP)
N3_CALCULUS = MPCalculus("N3", Lang.N4, _N4_AXIOMS + (("N13", "~phi -> (phi -> psi)"),), arrow=Conn.WIMP)


def check_proof_n4(p: Proof, n3: bool = False):
    return (N3_CALCULUS if n3 else N4_CALCULUS).check(p)


def n4_hilbert_fixtures() -> dict[str, Proof]:
    f = lambda s: parse(s, Lang.N4)  # noqa: E731
    p, q = f("p"), f("q")
    pp = f("p -> p")
    ax = N4_CALCULUS.instantiate
    s1 = ax("N2", {"phi": p, "psi": pp, "gamma": p})
    s2 = ax("N1", {"phi": p, "psi": pp})
    s4 = ax("N1", {"phi": p, "psi": p})
    identity = Proof(
        (),
        (
            ProofStep(s1, "N2", (), {"phi": p, "psi": pp, "gamma": p}),
            ProofStep(s2, "N1", (), {"phi": p, "psi": pp}),
            ProofStep(f("(p -> p -> p) -> p -> p"), "MP", (1, 0)),
            ProofStep(s4, "N1", (), {"phi": p, "psi": p}),
            ProofStep(pp, "MP", (3, 2)),
        ),
        pp,
        "n4-identity",
    )
    n9 = ax("N9", {"phi": p})
    left, right = f("~~p -> p"), f("p -> ~~p")
    halves = Proof(
        (),
        (
            ProofStep(n9, "N9", (), {"phi": p}),
            ProofStep(ax("N3", {"phi": left, "psi": right}), "N3", (), {"phi": left, "psi": right}),
            ProofStep(left, "MP", (0, 1)),
            ProofStep(ax("N4", {"phi": left, "psi": right}), "N4", (), {"phi": left, "psi": right}),
            ProofStep(right, "MP", (0, 3)),
        ),
        right,
        "n4-double-negation",
    )
    n12 = ax("N12", {"phi": p, "psi": q})
    strong = Proof((), (ProofStep(n12, "N12", (), {"phi": p, "psi": q}),), n12, "n4-negated-implication")
    return {pr.name: pr for pr in (identity, halves, strong)}
