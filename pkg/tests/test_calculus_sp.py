from __future__ import annotations

import random

import pytest
from conftest import formulas
from hypothesis import given
from hypothesis import strategies as st
from mutations import single_step_mutations

from nelson_s.algebra import Equation, Quasiequation, lukasiewicz, scan
from nelson_s.calculus_sp import (
    AXIOM_IDS_SP,
    S_PRIME,
    AxiomError,
    DeductionError,
    Derivation,
    bridge_fixtures,
    check_proof_sp,
    deduction_transform,
    random_derivation,
    weak_implication,
)
from nelson_s.formula import TOP, Lang, fuse, imp, parse
from nelson_s.proofs import Proof, ProofStep

P = lambda s: parse(s, Lang.S_PRIME)  # noqa: E731


def test_eighteen_axioms():
    assert AXIOM_IDS_SP == tuple(f"A{i}'" for i in range(1, 19))
    assert S_PRIME.axioms["A18'"] == P("phi * phi => phi * (phi * phi)")


def test_instantiate_errors():
    with pytest.raises(AxiomError):
        S_PRIME.instantiate("A99'", {})
    with pytest.raises(AxiomError):
        S_PRIME.instantiate("A3'", {"phi": P("p")})
    with pytest.raises(AxiomError):
        S_PRIME.instantiate("A17'", {"phi": parse("p -> q", Lang.ANY)})


def test_modus_ponens_checked():
    a, b = P("p"), P("q")
    ok = Proof((a, imp(a, b)), (ProofStep(a, "HYP"), ProofStep(imp(a, b), "HYP"), ProofStep(b, "MP", (0, 1))), b)
    assert check_proof_sp(ok).accepted
    swapped = ok.replace_steps([*ok.steps[:2], ProofStep(b, "MP", (1, 0))])
    assert not check_proof_sp(swapped).accepted


def test_bridge_fixtures():
    fx = bridge_fixtures()
    assert set(fx) == {"bridge-square-to-weak", "bridge-weak-to-square"}
    x = fuse(P("p"), P("p"))
    assert fx["bridge-square-to-weak"].goal == imp(imp(x, P("q")), weak_implication(P("p"), P("q")))
    assert fx["bridge-weak-to-square"].goal == imp(weak_implication(P("p"), P("q")), imp(x, P("q")))
    for p in fx.values():
        assert check_proof_sp(p).accepted


@given(formulas(Lang.S_PRIME, max_leaves=4), formulas(Lang.S_PRIME, max_leaves=4))
def test_bridge_fixtures_any_formulas(phi, psi):
    for p in bridge_fixtures(phi, psi).values():
        assert check_proof_sp(p).accepted


@given(formulas(Lang.S_PRIME, max_leaves=5))
def test_square_duplicates_lemma(phi):
    d = Derivation()
    k = d.square_duplicates(phi)
    x = fuse(phi, phi)
    p = d.proof(k)
    assert p.goal == imp(x, fuse(x, x))
    assert check_proof_sp(p).accepted


@given(st.integers(0, 10_000))
def test_deduction_transform_random(seed):
    proof, phi = random_derivation(random.Random(seed))
    assert check_proof_sp(proof).accepted
    out = deduction_transform(proof, phi)
    assert check_proof_sp(out).accepted
    assert out.goal == imp(fuse(phi, phi), proof.goal)
    assert out.assumptions == tuple(a for a in proof.assumptions if a != phi)


def test_deduction_errors():
    proof, phi = random_derivation(random.Random(1))
    with pytest.raises(DeductionError):
        deduction_transform(proof, P("zz"))
    bad = proof.replace_steps([ProofStep(P("zz"), "HYP")])
    with pytest.raises(DeductionError):
        deduction_transform(Proof(proof.assumptions, bad.steps, P("zz")), phi)


def test_transform_of_bare_hypothesis():
    p = P("p")
    out = deduction_transform(Proof((p,), (ProofStep(p, "HYP"),), p), p)
    assert out.goal == P("p * p => p") and out.assumptions == ()
    assert check_proof_sp(out).accepted


def test_transform_output_sound_in_l3():
    # a sanity check unrelated to the checker: (phi^2 => psi) is designated in an
    # S'-algebra whenever the remaining assumptions are
    rng = random.Random(7)
    l3 = lukasiewicz(3)
    for _ in range(10):
        proof, phi = random_derivation(rng)
        out = deduction_transform(proof, phi)
        q = Quasiequation(tuple(Equation(a, TOP) for a in out.assumptions), Equation(out.goal, TOP))
        assert scan(l3, q).holds


def test_bridge_mutations_rejected():
    names = list(AXIOM_IDS_SP) + ["MP", "HYP"]
    for p in bridge_fixtures().values():
        assert not [t for t, m in single_step_mutations(p, names) if check_proof_sp(m).accepted]
