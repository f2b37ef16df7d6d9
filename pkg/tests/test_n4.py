from __future__ import annotations

import itertools

import numpy as np
import pytest

from nelson_s.algebra import boolean2, parse_statement, scan
from nelson_s.algebraizer import check_s_def34
from nelson_s.model_search import canonical_key, enumerate_class, isomorphic
from nelson_s.n4 import (
    N3_CALCULUS,
    N4Algebra,
    a4,
    boolean_n4,
    check_de_morgan,
    check_n3,
    check_n4_lattice,
    check_proof_n4,
    dump_n4,
    n4_hilbert_fixtures,
    parse_n4,
    preorder_leq,
    quotient,
    strong_implication_table,
    to_s_signature,
)


def test_a4_tables():
    a = a4()
    assert a.names == ("1", "n", "b", "0")
    assert [a.names[i] for i in a.neg] == ["0", "n", "b", "1"]
    assert a.bot == 3 and a.top == 0
    # 1 -> x = b -> x = x, and 0 -> x = n -> x = 1
    w = a.wimp_table
    assert list(w[0]) == list(w[2]) == [0, 1, 2, 3]
    assert (w[1] == 0).all() and (w[3] == 0).all()


def test_a4_is_n4_lattice():
    r = check_n4_lattice(a4())
    assert r.passed, r.lines()


def test_a4_quotient_is_boolean():
    a = a4()
    q = quotient(a)
    assert q.well_defined
    assert sorted(sorted(a.names[i] for i in c) for c in q.classes) == [["0", "n"], ["1", "b"]]
    assert isomorphic(q.as_algebra(), boolean2())


def test_preorder():
    a = a4()
    assert preorder_leq(a, "1", "b") and preorder_leq(a, "b", "1")
    assert preorder_leq(a, "0", "n") and not preorder_leq(a, "1", "0")


def test_strong_implication_separation():
    a = a4()
    s = strong_implication_table(a)
    e = a.element
    # x => x is 1 at 1 but b at b, so x => x == y => y fails
    assert s[e("1"), e("1")] == e("1") and s[e("b"), e("b")] == e("b")
    r = scan(a, parse_statement("x => x == y => y"))
    assert not r.holds and {k: a.names[v] for k, v in r.witness.items()} == {"x": "1", "y": "b"}


def test_a4_not_s_algebra():
    assert not check_s_def34(to_s_signature(a4())).passed


def test_a4_fails_n13_at_b():
    r = check_n3(a4())
    (bad,) = r.failed()
    assert bad.law.startswith("N13")
    assert bad.witness == ("b", "n")


def test_boolean_is_n3():
    assert check_n3(boolean_n4()).passed
    assert check_s_def34(to_s_signature(boolean_n4())).passed


def test_identity_negation_is_not_de_morgan():
    a = a4()
    idn = N4Algebra(a.names, a.meet, a.join, a.wimp_table, np.arange(4), "id")
    r = check_de_morgan(idn)
    assert not r.passed
    assert not check_n4_lattice(idn).passed


def test_wimp_mutation_fails():
    # b -> n changed from n to 1 breaks the N4 conditions
    r = check_n4_lattice(a4().with_wimp("b", "n", "1"))
    assert not r.passed


def test_file_round_trip():
    a = a4()
    b = parse_n4(dump_n4(a))
    assert b.names == a.names and np.array_equal(b.wimp_table, a.wimp_table) and np.array_equal(b.neg, a.neg)


def _chain_oracle():
    """N4-lattices on the 3-chain by raw search over every -> table."""
    idx = np.arange(3)
    meet, join = np.minimum.outer(idx, idx), np.maximum.outer(idx, idx)
    neg = np.array([2, 1, 0])  # the only antitone involution of the 3-chain
    leq = meet == idx[:, None]
    u, v = np.meshgrid(idx, idx, indexing="ij")
    keys = set()
    for flat in itertools.product(range(3), repeat=9):
        w = np.array(flat).reshape(3, 3)
        pre = w[w, w] == w
        if not pre.diagonal().all() or not np.array_equal(leq, pre & pre[neg[v], neg[u]]):
            continue
        a = N4Algebra(("0", "a", "1"), meet, join, w, neg)
        if check_n4_lattice(a).passed:
            keys.add(canonical_key(a))
    return sorted(keys)


def test_enumeration_matches_raw_search_on_chain():
    assert enumerate_class("n4_lattice", 3).keys() == _chain_oracle()


def test_enumeration_counts():
    assert [enumerate_class("n4_lattice", n).count for n in range(1, 5)] == [1, 1, 2, 3]
    assert [enumerate_class("n3_lattice", n).count for n in range(1, 5)] == [1, 1, 1, 2]
    assert any(isomorphic(a, a4()) for a in enumerate_class("n4_lattice", 4).algebras)


def test_every_enumerated_lattice_passes():
    for n in range(1, 5):
        for a in enumerate_class("n4_lattice", n).algebras:
            assert check_n4_lattice(a).passed
        for a in enumerate_class("n3_lattice", n).algebras:
            assert check_n3(a).passed


def test_n3_lattices_are_s_algebras():
    for n in range(1, 5):
        for a in enumerate_class("n3_lattice", n).algebras:
            assert check_s_def34(to_s_signature(a)).passed


@pytest.mark.parametrize("name", sorted(n4_hilbert_fixtures()))
def test_n4_hilbert_fixtures(name):
    p = n4_hilbert_fixtures()[name]
    assert check_proof_n4(p).accepted
    assert check_proof_n4(p, n3=True).accepted


def test_n13_only_in_n3():
    from nelson_s.formula import Lang, parse
    from nelson_s.proofs import Proof, ProofStep

    params = {"phi": parse("p", Lang.N4), "psi": parse("q", Lang.N4)}
    f = N3_CALCULUS.instantiate("N13", params)
    p = Proof((), (ProofStep(f, "N13", (), params),), f)
    assert check_proof_n4(p, n3=True).accepted
    assert not check_proof_n4(p).accepted
