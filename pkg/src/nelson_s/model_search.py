"""Enumeration of small residuated lattices and N4-lattices, up to isomorphism.

Lattices are generated from naturally labelled posets: element ``k`` picks
its strict down-set among the order ideals of ``0..k-1`` (``0`` is the
bottom), a top is added, and the result is kept when all joins exist.  Each
lattice is put in canonical form: among the bijections that list elements by
rank (longest chain from the bottom) the one giving the lexicographically
least order matrix is chosen.  Algebras on a canonical lattice are then
canonicalised over its automorphisms only, which gives the same key as
minimising over all rank-compatible bijections.
"""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .algebra import (
    FiniteAlgebra,
    Quasiequation,
    Statement,
    as_quasi,
    check_s_prime,
    is_three_potent,
    scan,
    to_s_algebra,
    witness_names,
)

CLASSES = ("cibrl", "cibrl_3potent", "s_prime", "s_def34", "n4_lattice", "n3_lattice")
DEFAULT_CEILING = 6


class SearchError(ValueError):
    pass


# -- lattices ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LatticeSkeleton:
    """A canonical lattice: bottom is 0, top is n-1, elements sorted by rank."""

    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    automorphisms: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.leq)

    @property
    def names(self) -> tuple[str, ...]:
        return element_names(self.size)

    def key(self) -> tuple[int, ...]:
        return tuple(self.leq.astype(np.intc).ravel().tolist())


def element_names(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("0",)
    inner = [chr(ord("a") + i) for i in range(n - 2)]
    return ("0", *inner, "1")


def meet_join_from_leq(leq: np.ndarray) -> tuple[np.ndarray, np.ndarray] | None:
    """Meet and join tables of a finite poset, or ``None`` if not a lattice."""
    n = len(leq)
    meet = np.empty((n, n), dtype=np.intc)
    join = np.empty((n, n), dtype=np.intc)
    for a in range(n):
        for b in range(a, n):
            ub = np.flatnonzero(leq[a] & leq[b])
            lb = np.flatnonzero(leq[:, a] & leq[:, b])
            least = [u for u in ub if leq[u, ub].all()]
            greatest = [l for l in lb if leq[lb, l].all()]
            if not least or not greatest:
                return None
            join[a, b] = join[b, a] = least[0]
            meet[a, b] = meet[b, a] = greatest[0]
    return meet, join


def ranks(leq: np.ndarray) -> list[int] | None:
    """Longest-chain height of each element, or ``None`` for a non-poset."""
    n = len(leq)
    if not is_partial_order(leq):
        return None
    strict = leq & ~np.eye(n, dtype=bool)
    rank = [0] * n
    order = sorted(range(n), key=lambda x: int(leq[:, x].sum()))
    for x in order:
        below = np.flatnonzero(strict[:, x])
        rank[x] = 1 + max((rank[y] for y in below), default=-1)
    return rank


def is_partial_order(leq: np.ndarray) -> bool:
    n = len(leq)
    if not leq[np.arange(n), np.arange(n)].all():
        return False
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        return False
    # transitivity: leq @ leq implies leq
    comp = (leq.astype(np.int32) @ leq.astype(np.int32)) > 0
    return bool((~comp | leq).all())


def rank_orders(leq: np.ndarray) -> Iterable[tuple[int, ...]]:
    """Element orders compatible with rank (all orders for non-posets)."""
    n = len(leq)
    r = ranks(leq)
    if r is None:
        yield from itertools.permutations(range(n))
        return
    blocks: dict[int, list[int]] = {}
    for x in range(n):
        blocks.setdefault(r[x], []).append(x)
    groups = [blocks[k] for k in sorted(blocks)]
    for combo in itertools.product(*(itertools.permutations(g) for g in groups)):
        yield tuple(x for g in combo for x in g)


def relabel(table: np.ndarray, order: Sequence[int]) -> np.ndarray:
    """Table in the labelling where new element ``i`` is old ``order[i]``."""
    order = np.asarray(order)
    pos = np.empty_like(order)
    pos[order] = np.arange(len(order))
    if table.ndim == 1:
        return pos[table[order]].astype(np.intc)
    return pos[table[np.ix_(order, order)]].astype(np.intc)


def relabel_relation(rel: np.ndarray, order: Sequence[int]) -> np.ndarray:
    order = np.asarray(order)
    return rel[np.ix_(order, order)]


def _flat(a: np.ndarray) -> tuple[int, ...]:
    return tuple(np.asarray(a, dtype=np.intc).ravel().tolist())


def canonical_lattice(leq: np.ndarray) -> LatticeSkeleton | None:
    mj = meet_join_from_leq(leq)
    if mj is None:
        return None
    best_key, best_orders = None, []
    for order in rank_orders(leq):
        k = _flat(relabel_relation(leq, order))
        if best_key is None or k < best_key:
            best_key, best_orders = k, [order]
        elif k == best_key:
            best_orders.append(order)
    canon = relabel_relation(leq, best_orders[0])
    # automorphisms of the canonical lattice: orders mapping it to itself
    base = np.asarray(best_orders[0])
    inv = np.empty_like(base)
    inv[base] = np.arange(len(base))
    autos = sorted({tuple(int(inv[x]) for x in o) for o in best_orders})
    meet, join = meet_join_from_leq(canon)
    for t in (canon, meet, join):
        t.setflags(write=False)
    return LatticeSkeleton(canon, meet, join, tuple(autos))


def _ideals(leq: np.ndarray, k: int) -> Iterable[np.ndarray]:
    """Down-closed subsets of ``0..k-1`` that contain 0."""
    items = list(range(1, k))
    for bits in range(1 << len(items)):
        chosen = [0] + [items[i] for i in range(len(items)) if bits >> i & 1]
        mask = np.zeros(k, dtype=bool)
        mask[chosen] = True
        if all(mask[leq[:k, x]].all() for x in chosen):
            yield mask


@lru_cache(maxsize=None)
def lattices(n: int) -> tuple[LatticeSkeleton, ...]:
    """All lattices with ``n`` elements, up to isomorphism, in canonical order."""
    if n < 1:
        raise SearchError("size must be positive")
    if n == 1:
        return (canonical_lattice(np.ones((1, 1), dtype=bool)),)
    found: dict[tuple, LatticeSkeleton] = {}

    def grow(leq: np.ndarray, k: int) -> None:
        if k == n - 1:
            full = np.zeros((n, n), dtype=bool)
            full[:k, :k] = leq[:k, :k]
            full[:, n - 1] = True
            sk = canonical_lattice(full)
            if sk is not None:
                found.setdefault(sk.key(), sk)
            return
        for mask in _ideals(leq, k):
            nxt = leq.copy()
            nxt[:k, k] = mask
            nxt[k, k] = True
            grow(nxt, k + 1)

    start = np.zeros((n, n), dtype=bool)
    start[0, 0] = True
    grow(start, 1)
    return tuple(found[k] for k in sorted(found))


def distributive_lattices(n: int) -> tuple[LatticeSkeleton, ...]:
    out = []
    for sk in lattices(n):
        x, y, z = np.meshgrid(*([np.arange(n)] * 3), indexing="ij")
        if np.array_equal(sk.meet[x, sk.join[y, z]], sk.join[sk.meet[x, y], sk.meet[x, z]]):
            out.append(sk)
    return tuple(out)


# -- canonical forms of algebras -------------------------------------------


def algebra_tables(a) -> list[np.ndarray]:
    """Tables that together determine an algebra, in key order."""
    if hasattr(a, "wimp_table"):
        return [a.wimp_table, a.neg_table]
    return [a.imp, a.fuse, a.neg]


def canonical_key(a) -> tuple:
    """Lexicographically least (order, tables) tuple over rank-compatible relabelings."""
    return canonical_form(a)[0]


def canonical_form(a) -> tuple[tuple, tuple[int, ...]]:
    """Canonical key of ``a`` and the element order that attains it."""
    leq = a.leq
    best, best_order = None, None
    for order in rank_orders(leq):
        pos = np.empty(len(order), dtype=int)
        pos[list(order)] = np.arange(len(order))
        k = (
            _flat(relabel_relation(leq, order)),
            (int(pos[a.bot]), int(pos[a.top])),
            *(_flat(relabel(t, order)) for t in algebra_tables(a)),
        )
        if best is None or k < best:
            best, best_order = k, order
    return best, best_order


def isomorphic(a, b) -> bool:
    """Whether some bijection preserves every table and both bounds."""
    if a.size != b.size:
        return False
    return canonical_key(a) == canonical_key(b)


# -- CIBRLs on a skeleton ---------------------------------------------------


def residual(leq: np.ndarray, join: np.ndarray, fuse: np.ndarray, bot: int) -> np.ndarray:
    n = len(leq)
    imp = np.full((n, n), bot, dtype=np.intc)
    for a in range(n):
        for c in range(n):
            acc = bot
            for b in np.flatnonzero(leq[fuse[a], c]):
                acc = join[acc, b]
            imp[a, c] = acc
    return imp


def _canonical_on_skeleton(sk: LatticeSkeleton, tables: Sequence[np.ndarray]) -> tuple[tuple, list[np.ndarray]]:
    best_key, best = None, None
    for auto in sk.automorphisms:
        rel = [relabel(t, auto) for t in tables]
        k = tuple(_flat(t) for t in rel)
        if best_key is None or k < best_key:
            best_key, best = k, rel
    return best_key, best


def cibrls_on(sk: LatticeSkeleton) -> list[FiniteAlgebra]:
    """All CIBRLs on a canonical lattice, one per isomorphism class."""
    n = sk.size
    bot, top = 0, n - 1
    fusions = kernels.enumerate_fusions(
        np.ascontiguousarray(sk.leq, dtype=np.uint8), sk.meet, sk.join, bot, top, -1
    )
    seen: dict[tuple, FiniteAlgebra] = {}
    for f in fusions:
        imp = residual(sk.leq, sk.join, f, bot)
        neg = imp[:, bot]
        key, (imp_c, f_c, _) = _canonical_on_skeleton(sk, [imp, np.asarray(f, dtype=np.intc), neg])
        if key not in seen:
            seen[key] = FiniteAlgebra(sk.names, sk.meet, sk.join, imp_c, bot, top, fuse_table=f_c)
    return [seen[k] for k in sorted(seen)]


# -- class enumeration ------------------------------------------------------


def _class_filter(cls: str) -> Callable:
    if cls == "cibrl":
        return lambda a: True
    if cls == "cibrl_3potent":
        return is_three_potent
    if cls == "s_prime":
        return lambda a: check_s_prime(a).passed
    if cls == "s_def34":
        from .algebraizer import check_s_def34

        return lambda a: check_s_def34(to_s_algebra(a), 2).passed
    raise SearchError(f"unknown class {cls!r}")


def algebras_on_skeleton(cls: str, size: int, index: int) -> list:
    """Members of ``cls`` on the ``index``-th lattice of the given size."""
    if cls in ("n4_lattice", "n3_lattice"):
        from .n4 import n4_lattices_on

        sk = distributive_lattices(size)[index]
        return n4_lattices_on(sk, n3=cls == "n3_lattice")
    sk = lattices(size)[index]
    keep = _class_filter(cls)
    out = [a for a in cibrls_on(sk) if keep(a)]
    if cls == "s_def34":
        out = [to_s_algebra(a) for a in out]
    return out


def _skeleton_count(cls: str, size: int) -> int:
    if cls in ("n4_lattice", "n3_lattice"):
        return len(distributive_lattices(size))
    return len(lattices(size))


def _worker(args):
    return algebras_on_skeleton(*args)


@dataclass
class EnumerationResult:
    cls: str
    size: int
    algebras: list = field(default_factory=list)
    partial: bool = False
    elapsed: float = 0.0

    @property
    def count(self) -> int:
        return len(self.algebras)

    def keys(self) -> list[tuple]:
        return [canonical_key(a) for a in self.algebras]


def enumerate_class(
    cls: str,
    n: int,
    jobs: int = 1,
    budget: float | None = None,
    ceiling: int = DEFAULT_CEILING,
) -> EnumerationResult:
    """All members of ``cls`` with exactly ``n`` elements, in canonical order."""
    if cls not in CLASSES:
        raise SearchError(f"unknown class {cls!r}; choose from {', '.join(CLASSES)}")
    if n < 1:
        raise SearchError("size must be positive")
    if n > ceiling:
        raise SearchError(f"size {n} is above the ceiling {ceiling}; raise it explicitly")
    start = time.monotonic()
    tasks = [(cls, n, i) for i in range(_skeleton_count(cls, n))]
    found: list = []
    partial = False
    if jobs <= 1:
        for t in tasks:
            if budget is not None and time.monotonic() - start > budget:
                partial = True
                break
            found.extend(_worker(t))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_worker, t) for t in tasks]
            for fut in futures:
                remaining = None if budget is None else max(0.0, budget - (time.monotonic() - start))
                try:
                    found.extend(fut.result(timeout=remaining))
                except TimeoutError:
                    partial = True
                    for f in futures:
                        f.cancel()
                    break
    found.sort(key=canonical_key)
    for i, a in enumerate(found):
        object.__setattr__(a, "name", f"{cls}-{n}-{i}")
    return EnumerationResult(cls, n, found, partial, time.monotonic() - start)


def enumerate_upto(cls: str, max_size: int, jobs: int = 1) -> list:
    out = []
    for n in range(1, max_size + 1):
        out.extend(enumerate_class(cls, n, jobs).algebras)
    return out


# -- countermodels ----------------------------------------------------------


@dataclass(frozen=True)
class Countermodel:
    algebra: object
    valuation: dict[str, str]
    size: int


def find_countermodel(
    statement: Statement,
    where: str | Sequence,
    max_size: int = 4,
    jobs: int = 1,
) -> Countermodel | None:
    """Smallest refuting algebra (by size, canonical order) with its first valuation.

    ``where`` is a class name or an explicit list of algebras, searched in the
    given order.
    """
    q: Quasiequation = as_quasi(statement)
    if isinstance(where, str):
        candidates: Iterable = (a for n in range(1, max_size + 1) for a in enumerate_class(where, n, jobs).algebras)
    else:
        candidates = where
    for a in candidates:
        r = scan(a, q)
        if not r.holds:
            return Countermodel(a, witness_names(a, r.witness), a.size)
    return None


# -- raw brute force (independent oracle) -----------------------------------


def brute_force_s_prime(n: int) -> list[FiniteAlgebra]:
    """S'-algebras on ``n`` elements by raw table search, one per iso class.

    Independent of the lattice generator and the fusion search: every meet
    table and every fusion table on the carrier is tried, bounds are read off
    the order, and the implication is the residual.  Feasible for ``n <= 3``.
    """
    if n > 3:
        raise SearchError("raw search is limited to n <= 3")
    idx = np.arange(n)
    tables = [np.array(t, dtype=np.intc).reshape(n, n) for t in itertools.product(range(n), repeat=n * n)]
    reps: dict[tuple, FiniteAlgebra] = {}
    for meet in tables:
        leq = meet == idx[:, None]
        if not is_partial_order(leq):
            continue
        mj = meet_join_from_leq(leq)
        if mj is None or not np.array_equal(mj[0], meet):
            continue
        join = mj[1]
        bot = int(np.flatnonzero(leq.all(axis=1))[0])
        top = int(np.flatnonzero(leq.all(axis=0))[0])
        names = tuple(str(k) for k in range(n))
        for fuse in tables:
            if not np.array_equal(fuse, fuse.T) or not np.array_equal(fuse[top], idx):
                continue
            imp = residual(leq, join, fuse, bot)
            a = FiniteAlgebra(names, meet, join, imp, bot, top, fuse_table=fuse)
            if check_s_prime(a).passed:
                reps.setdefault(canonical_key(a), a)
    return [reps[k] for k in sorted(reps)]
