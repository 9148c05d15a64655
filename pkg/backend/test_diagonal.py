# test_diagonal.py - fixed points, the named self-referential sentences and CK
import time

import pytest

from conftest import random_unary_formula
from deduction.kernel import check_proof
from errors import DiagonalError
from language import diagonal
from language.coding import gq
from language.parser import parse_formula
from language.syntax import Not, atom, iff, is_sentence, substitute


def test_fixed_points_of_random_unary_formulas(rng, registry, db):
    start = time.perf_counter()
    for _ in range(50):
        phi = random_unary_formula(rng, depth=4)
        fixed = diagonal.fixed_point(phi, "y", registry=registry)
        assert is_sentence(fixed.sentence)
        assert fixed.witness == iff(fixed.sentence, substitute(phi, "y", gq(fixed.sentence)))
        verdict = fixed.check(registry, db)
        assert verdict, verdict.describe()
        assert verdict.necessitations == 0
        assert fixed.proof.system == "Base"
    assert time.perf_counter() - start < 60


def test_liar_and_truth_teller_witnesses(registry, db):
    liar = diagonal.liar(registry)
    assert liar.witness == iff(liar.sentence, Not(atom("T", gq(liar.sentence))))
    assert liar.check(registry, db)
    teller = diagonal.truth_teller(registry)
    assert teller.witness == iff(teller.sentence, atom("T", gq(teller.sentence)))


def test_knower_sentences_read_with_quotes(registry):
    delta = diagonal.delta(registry)
    assert delta.witness == iff(delta.sentence, Not(atom("K1", gq(delta.sentence))))


@pytest.mark.parametrize("text, var", [("U(0)", "y"), ("U(y)", "x")])
def test_fixed_point_needs_the_variable_free(text, var):
    with pytest.raises(DiagonalError):
        diagonal.fixed_point(parse_formula(text), var)


def test_common_knowledge_fixed_point(registry, db):
    ck = diagonal.make_CK(parse_formula("Ag(x)"), registry=registry)
    assert ck.cke_proof.system == "Base"
    assert ck.cke_proof.conclusion == ck.cke
    assert check_proof(ck.cke_proof, registry, db)
    variant = diagonal.make_CK(parse_formula("Ag(x)"), aux="w", registry=registry)
    assert variant.ck != ck.ck
    assert check_proof(variant.cke_proof, registry, db)


@pytest.mark.parametrize("group", ["x = x", "K2(x, [[0 = 0]])"])
def test_common_knowledge_of_any_unary_group(group, registry, db):
    ck = diagonal.make_CK(parse_formula(group), registry=registry)
    assert check_proof(ck.cke_proof, registry, db)
    assert ck.cke_proof.rule_counts().get("nec_t") is None
