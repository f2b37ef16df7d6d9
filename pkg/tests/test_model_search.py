from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from nelson_s.algebra import FiniteAlgebra, check_cibrl, lukasiewicz, parse_statement
from nelson_s.model_search import (
    CLASSES,
    SearchError,
    brute_force_s_prime,
    canonical_key,
    distributive_lattices,
    enumerate_class,
    find_countermodel,
    isomorphic,
    lattices,
    relabel,
)
from nelson_s.n4 import a4


def permuted(a: FiniteAlgebra, perm) -> FiniteAlgebra:
    """The same algebra with element ``i`` renamed to ``perm[i]``."""
    p = np.asarray(perm)
    inv = np.argsort(p)

    def t2(t):
        return p[t[np.ix_(inv, inv)]]

    return FiniteAlgebra(
        tuple(a.names[i] for i in inv), t2(a.meet), t2(a.join), t2(a.imp), int(p[a.bot]), int(p[a.top]), fuse_table=t2(a.fuse)
    )


def chain_cibrl_oracle(n: int) -> int:
    """CIBRLs on the n-chain by raw search over every fusion table."""
    idx = np.arange(n)
    join = np.maximum.outer(idx, idx)
    count = 0
    for flat in itertools.product(range(n), repeat=n * n):
        f = np.array(flat).reshape(n, n)
        if not np.array_equal(f, f.T) or not np.array_equal(f[n - 1], idx):
            continue
        if not np.array_equal(f[f[:, :, None], idx[None, None, :]], f[idx[:, None, None], f[None, :, :]]):
            continue
        # residuated on a finite chain iff fusion preserves joins (= maxima) in each argument
        if not np.array_equal(f[:, join], np.maximum(f[:, :, None], f[:, None, :])):
            continue
        if (f[:, 0] != 0).any():
            continue
        count += 1
    return count


def test_lattice_counts():
    assert [len(lattices(n)) for n in range(1, 7)] == [1, 1, 1, 2, 5, 15]
    assert [len(distributive_lattices(n)) for n in range(1, 7)] == [1, 1, 1, 2, 3, 5]


@pytest.mark.parametrize("n", [2, 3])
def test_cibrl_chain_oracle(n):
    # chains are the only lattices of size <= 3
    assert enumerate_class("cibrl", n).count == chain_cibrl_oracle(n)


def test_cibrl_counts():
    assert [enumerate_class("cibrl", n).count for n in range(1, 6)] == [1, 1, 2, 7, 26]


def test_s_prime_counts_and_oracle():
    counts = [enumerate_class("s_prime", n).count for n in range(1, 5)]
    assert counts == [1, 1, 1, 2]
    for n in (2, 3):
        raw = brute_force_s_prime(n)
        assert [canonical_key(a) for a in raw] == enumerate_class("s_prime", n).keys()
    with pytest.raises(SearchError):
        brute_force_s_prime(4)


def test_s_prime_3_is_lukasiewicz():
    (a,) = enumerate_class("s_prime", 3).algebras
    assert isomorphic(a, lukasiewicz(3))


def test_enumerated_algebras_are_cibrls_and_distinct():
    for n in range(1, 5):
        algs = enumerate_class("cibrl", n).algebras
        assert all(check_cibrl(a).passed for a in algs)
        keys = [canonical_key(a) for a in algs]
        assert len(set(keys)) == len(keys) and keys == sorted(keys)
        assert [a.name for a in algs] == [f"cibrl-{n}-{i}" for i in range(len(algs))]


def test_canonical_key_invariant_under_relabelling():
    rng = random.Random(3)
    for a in enumerate_class("cibrl", 4).algebras + enumerate_class("cibrl", 5).algebras[:10]:
        perm = list(range(a.size))
        rng.shuffle(perm)
        b = permuted(a, perm)
        assert check_cibrl(b).passed
        assert canonical_key(b) == canonical_key(a)


def test_non_isomorphic_detected():
    algs = enumerate_class("cibrl", 4).algebras
    assert not any(isomorphic(x, y) for x, y in itertools.combinations(algs, 2))


def test_relabel_identity():
    t = np.arange(9).reshape(3, 3) % 3
    assert np.array_equal(relabel(t, (0, 1, 2)), t)


@pytest.mark.parametrize("cls", CLASSES)
def test_serial_equals_parallel(cls):
    for n in range(1, 5):
        assert enumerate_class(cls, n).keys() == enumerate_class(cls, n, jobs=2).keys()


def test_ceiling_and_errors():
    with pytest.raises(SearchError):
        enumerate_class("cibrl", 7)
    with pytest.raises(SearchError):
        enumerate_class("groups", 2)
    with pytest.raises(SearchError):
        enumerate_class("cibrl", 0)


def test_budget_marks_partial():
    r = enumerate_class("cibrl", 6, budget=0.0)
    assert r.partial


def test_countermodels():
    q = parse_statement("x => x == y => y")
    assert find_countermodel(q, "s_prime", 4) is None
    cm = find_countermodel(q, [a4()])
    assert cm.valuation == {"x": "1", "y": "b"}
    # the class-wide search finds a smaller N4-lattice first
    small = find_countermodel(q, "n4_lattice", 4)
    assert small.size == 3
    # idempotency of fusion fails already in the 3-element MV-chain
    cm = find_countermodel(parse_statement("x * x == x"), "s_prime", 4)
    assert cm.size == 3
