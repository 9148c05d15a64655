# test_language.py - syntax, parser and printer
import pytest

from conftest import random_sentence
from errors import ArityError, CaptureError, ParseError
from language.coding import gq
from language.parser import parse, parse_formula, parse_term
from language.syntax import (
    And, Atom, BOT, Forall, Imp, Not, Num, Var, app, atom, eq, eval_closed_term, free_vars, in_minus, in_pa,
    is_sentence, numeral, sbt, to_text,
)


def test_numerals_fold_successor_chains():
    """S(S(0)) is the numeral 2, and the printer writes it back as a chain"""
    assert parse_term("S(S(0))") == numeral(2)
    assert app("S", Num(4)) == Num(5)
    assert to_text(numeral(3)) == "S(S(S(0)))"
    assert to_text(numeral(12)) == "12"
    assert parse_term("12") == numeral(12)


def test_bounded_quantifiers_are_sugar():
    phi = parse_formula("forall a in Ag (K2(a, [[0 = 0]]))")
    assert phi == Forall("a", Imp(atom("Ag", Var("a")), atom("K2", Var("a"), gq(eq(Num(0), Num(0))))))
    assert to_text(phi) == "forall a in Ag (K2(a, " + to_text(gq(eq(Num(0), Num(0)))) + "))"


def test_sugar_for_bot_inequality_and_iff():
    assert parse_formula("bot") == BOT
    assert parse_formula("0 != S(0)") == Not(eq(Num(0), Num(1)))
    both = parse_formula("U(0) <-> Ag(0)")
    assert both == And(Imp(atom("U", Num(0)), atom("Ag", Num(0))), Imp(atom("Ag", Num(0)), atom("U", Num(0))))
    assert to_text(both) == "U(0) <-> Ag(0)"


def test_unicode_quotes_match_ascii():
    assert parse_formula("T(⌜0 = 0⌝)") == parse_formula("T([[0 = 0]])")


def test_quoted_terms_and_quoted_formulas():
    assert parse_formula("[[S(0)]] = 0") == eq(gq(Num(1)), Num(0))
    assert parse_formula("T([[S(0)]])") == atom("T", gq(Num(1)))
    assert parse_term("[[x + S(0)]]") == gq(app("+", Var("x"), Num(1)))
    assert parse_formula("T([[(S(0))]])") == atom("T", gq(Num(1)))
    assert parse_formula("T([[U(S(0))]])") == atom("T", gq(atom("U", Num(1))))
    with pytest.raises(ParseError):
        parse_formula("T([[Nope(0)]])")


def test_printer_round_trip_on_random_sentences(rng):
    for _ in range(200):
        phi = random_sentence(rng)
        assert parse_formula(to_text(phi)) == phi


@pytest.mark.parametrize("text", ["K2(0)", "U(0, 0)", "T(0", "forall in (U(0))", "S(0, 0) = 0"])
def test_malformed_input_is_rejected(text):
    with pytest.raises((ParseError, ArityError)):
        parse(text)


def test_arity_is_checked_at_construction():
    with pytest.raises(ArityError):
        Atom("U", (Num(0), Num(1)))
    with pytest.raises(ArityError):
        app("+", Num(0))


def test_sbt_takes_closed_terms_only():
    phi = parse_formula("U(x) & x = S(0)")
    assert sbt(phi, Num(2), "x") == parse_formula("U(S(S(0))) & S(S(0)) = S(0)")
    with pytest.raises(CaptureError):
        sbt(phi, Var("y"), "x")


def test_sentencehood_and_sublanguages():
    assert is_sentence(parse_formula("forall x (x = x)"))
    assert not is_sentence(parse_formula("exists x (x = y)"))
    assert free_vars(parse_formula("forall x (x = y + z)")) == frozenset({"y", "z"})
    assert in_pa(parse_formula("S(0) + 0 = S(0)"))
    assert not in_pa(parse_formula("U(0)"))
    assert in_minus(parse_formula("U(u(0)) & Ag(0)"))
    assert not in_minus(parse_formula("T([[0 = 0]])"))


def test_closed_terms_evaluate_in_the_standard_model():
    assert eval_closed_term(parse_term("(S(0) + S(S(0))) * S(S(0))")) == 6
