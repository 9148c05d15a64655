# test_coding.py - Gödel codes, quotes and the dotted operations
import pytest

from conftest import random_formula, random_term
from errors import ArityError, DecodeError, EvaluationError
from language.coding import (
    GodelCode, code_of, decode, encode_aux_relation, eval_dotted, evaluate_term, gc, gq, pair, sentence_of,
    try_decode, tuple_code,
)
from language.parser import parse_formula, parse_term
from language.syntax import And, Forall, Imp, Not, Num, Var, app, atom, free_vars, substitute


def _pool(rng, size):
    pool = []
    while len(pool) < size:
        if rng.random() < 0.25:
            pool.append(random_term(rng, 4, ("x", "y")))
        else:
            pool.append(random_formula(rng, 4, ("x", "y")))
    return pool


def test_decode_inverts_gc_on_a_large_pool(rng):
    pool = _pool(rng, 1000)
    for x in pool:
        assert decode(gc(x)) == x
    assert len({code_of(x) for x in pool}) == len(set(pool))


def test_quotes_of_quotes_keep_growing():
    phi = parse_formula("K2(0, [[0 = 0]])")
    quoted = gq(phi)
    assert isinstance(quoted, Num)
    twice = gq(atom("T", quoted))
    assert twice.value > quoted.value
    assert decode(quoted.value) == phi


@pytest.mark.parametrize("value", [0, 1, 2, 255, 12345])
def test_non_codes_do_not_decode(value):
    assert try_decode(value) is None
    with pytest.raises(DecodeError):
        decode(value)


def test_dotted_connectives_commute_with_coding():
    phi, psi = parse_formula("U(0)"), parse_formula("0 = S(0)")
    assert eval_dotted("dneg", [gc(phi)]) == gc(Not(phi))
    assert eval_dotted("dimp", [gc(phi), gc(psi)]) == gc(Imp(phi, psi))
    assert eval_dotted("dand", [gc(phi), gc(psi)]) == gc(And(phi, psi))
    assert eval_dotted("dforall", [gc(Var("x")), gc(parse_formula("U(x)"))]) == gc(Forall("x", atom("U", Var("x"))))


def test_dotted_substitution_and_numerals():
    body = parse_formula("U(x) & x = x")
    t = parse_term("S(0) + S(0)")
    assert eval_dotted("dsbt", [gc(body), gc(t), gc(Var("x"))]) == gc(substitute(body, "x", t))
    assert eval_dotted("dgq", [GodelCode(7)]) == gc(Num(7))
    assert eval_dotted("dev", [gc(t)]) == GodelCode(2)
    assert eval_dotted("dK2", [gc(Num(0)), gc(gq(body))]) == gc(atom("K2", Num(0), gq(body)))


def test_dotted_relations_decide_syntax_classes():
    sentence, open_formula = parse_formula("forall x (x = x)"), parse_formula("U(x)")
    assert eval_dotted("dL0", [gc(sentence)]) is True
    assert eval_dotted("dL0", [gc(open_formula)]) is False
    assert eval_dotted("dL1", [gc(open_formula), gc(Var("x"))]) is True
    assert eval_dotted("dTerm0", [gc(parse_term("S(0) * S(S(0))"))]) is True
    assert eval_dotted("dTerm0", [gc(Var("x"))]) is False
    assert eval_dotted("dVar", [gc(Var("x"))]) is True
    assert eval_dotted("dAtom", [gc(parse_formula("U(0)"))]) is True
    assert eval_dotted("dAtom", [gc(parse_formula("T(0)"))]) is False


def test_terms_with_dotted_symbols_evaluate():
    phi = parse_formula("U(x)")
    t = app("dsbt", gq(phi), app("dgq", Num(3)), gq(Var("x")))
    assert evaluate_term(t) == code_of(parse_formula("U(S(S(S(0))))"))
    assert evaluate_term(app("u", Num(1)), {1: 4}) == 4
    assert evaluate_term(app("u", Num(2)), {1: 4}) == 0
    with pytest.raises(EvaluationError):
        evaluate_term(app("u", Num(0)))
    with pytest.raises(EvaluationError):
        evaluate_term(app("dneg", Num(5)))


def test_sentence_of_filters_open_formulas_and_terms():
    assert sentence_of(code_of(parse_formula("0 = 0"))) == parse_formula("0 = 0")
    assert sentence_of(code_of(parse_formula("U(x)"))) is None
    assert sentence_of(code_of(Num(3))) is None


def test_auxiliary_relations_are_coded_through_U():
    phi = encode_aux_relation(2, 1, [3, 4])
    assert not free_vars(phi)
    assert "U" in str(phi)
    assert tuple_code([5]) == 5
    assert tuple_code([1, 2]) == pair(1, 2)
    with pytest.raises(ArityError):
        encode_aux_relation(2, 1, [3])
