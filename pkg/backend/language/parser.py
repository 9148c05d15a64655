# language/parser.py - concrete grammar for terms and formulas
import logging
from functools import lru_cache

from lark import Lark, Transformer, Tree
from lark.exceptions import UnexpectedInput

from errors import ParseError, WorkbenchError
from language import coding
from language.syntax import (
    And, Exists, Forall, Imp, Not, Num, Or, Var, BOT, KEYWORDS,
    app, atom, eq, function_arity, iff, relation_arity,
)

logger = logging.getLogger(__name__)

GRAMMAR = r"""
    ?formula: iff
    ?iff: imp
        | imp _IFF imp                        -> iff
    ?imp: disj
        | disj _IMP imp                       -> imp
    ?disj: conj
        | disj _OR conj                       -> disj
    ?conj: unary
        | conj _AND unary                     -> conj
    ?unary: _NOT unary                        -> neg
        | _FORALL NAME "(" formula ")"        -> forall
        | _FORALL NAME _IN NAME "(" formula ")" -> bounded_forall
        | _EXISTS NAME "(" formula ")"        -> exists
        | _EXISTS NAME _IN NAME "(" formula ")" -> bounded_exists
        | term "=" term                       -> equal
        | term _NEQ term                      -> unequal
        | NAME "(" arguments ")"              -> relation
        | _BOT                                -> bot
        | "(" formula ")"

    arguments: term ("," term)*

    ?term: sum
    ?sum: product
        | sum "+" product                     -> plus
    ?product: base
        | product _TIMES base                 -> times
    ?base: NUMBER                             -> number
        | NAME "(" arguments ")"              -> apply
        | NAME                                -> variable
        | _LQUOTE formula _RQUOTE             -> quote
        | _LQUOTE term _RQUOTE                -> quote
        | "(" term ")"

    _IFF: "<->" | "↔"
    _IMP: "->" | "→"
    _OR: "|" | "∨"
    _AND: "&" | "∧"
    _NOT: "~" | "¬"
    _FORALL: "forall" | "∀"
    _EXISTS: "exists" | "∃"
    _IN: "in" | "∈"
    _BOT: "bot" | "⊥"
    _NEQ: "!=" | "≠"
    _TIMES: "*" | "·"
    _LQUOTE: "[[" | "⌜"
    _RQUOTE: "]]" | "⌝"
    NAME: /(?!(forall|exists|in|bot)\b)[A-Za-z_][A-Za-z0-9_']*(\[[A-Za-z0-9_+\-^]+\])?/
    NUMBER: /[0-9]+/

    %import common.WS
    %ignore WS
"""


class SyntaxBuilder(Transformer):
    """Turns parse trees into syntax objects through the smart constructors"""

    def iff(self, items):
        return iff(items[0], items[1])

    def imp(self, items):
        return Imp(items[0], items[1])

    def disj(self, items):
        return Or(items[0], items[1])

    def conj(self, items):
        return And(items[0], items[1])

    def neg(self, items):
        return Not(items[0])

    def forall(self, items):
        return Forall(_variable_name(items[0]), items[1])

    def exists(self, items):
        return Exists(_variable_name(items[0]), items[1])

    def bounded_forall(self, items):
        name = _variable_name(items[0])
        return Forall(name, Imp(atom(_unary_predicate(items[1]), Var(name)), items[2]))

    def bounded_exists(self, items):
        name = _variable_name(items[0])
        return Exists(name, And(atom(_unary_predicate(items[1]), Var(name)), items[2]))

    def equal(self, items):
        return eq(items[0], items[1])

    def unequal(self, items):
        return Not(eq(items[0], items[1]))

    def relation(self, items):
        name = str(items[0])
        if relation_arity(name) is None:
            raise ParseError(f"unknown relation symbol {name!r}", items[0].line, items[0].column)
        return atom(name, *items[1])

    def bot(self, items):
        return BOT

    def arguments(self, items):
        return list(items)

    def plus(self, items):
        return app("+", items[0], items[1])

    def times(self, items):
        return app("*", items[0], items[1])

    def number(self, items):
        return Num(int(items[0]))

    def apply(self, items):
        name = str(items[0])
        if function_arity(name) is None:
            raise ParseError(f"unknown function symbol {name!r}", items[0].line, items[0].column)
        return app(name, *items[1])

    def variable(self, items):
        return Var(_variable_name(items[0]))

    def quote(self, items):
        return coding.gq(items[0])


def _variable_name(token) -> str:
    name = str(token)
    if name in KEYWORDS or function_arity(name) is not None or relation_arity(name) is not None or "[" in name:
        raise ParseError(f"{name!r} cannot be used as a variable", token.line, token.column)
    return name


def _unary_predicate(token) -> str:
    name = str(token)
    if relation_arity(name) != 1:
        raise ParseError(f"bounded quantifier needs a unary predicate, got {name!r}", token.line, token.column)
    return name


def _build(tree, builder: SyntaxBuilder):
    """
    Bottom-up construction that settles ambiguous parses. A quote such as
    [[S(0)]] reads both as a formula and as a term; the first reading whose
    symbols check out wins.
    """
    if not isinstance(tree, Tree):
        return tree
    if tree.data == "_ambig":
        failure = None
        for option in tree.children:
            try:
                return _build(option, builder)
            except WorkbenchError as e:
                failure = failure or e
        raise failure
    return getattr(builder, str(tree.data))([_build(child, builder) for child in tree.children])


_parser = None


def _get_parser() -> Lark:
    global _parser
    if _parser is None:
        _parser = Lark(GRAMMAR, start=["formula", "term"], parser="earley", ambiguity="explicit")
    return _parser


def _run(text: str, start: str):
    try:
        tree = _get_parser().parse(text, start=start)
        return _build(tree, SyntaxBuilder())
    except UnexpectedInput as e:
        line, column = getattr(e, "line", None), getattr(e, "column", None)
        if line is None or line < 0:
            raise ParseError("unexpected end of input") from None
        raise ParseError("syntax error", line, column) from None


@lru_cache(maxsize=4096)
def parse_formula(text: str):
    return _run(text, "formula")


@lru_cache(maxsize=4096)
def parse_term(text: str):
    return _run(text, "term")


def parse(text: str):
    """Parse a formula, falling back to a term"""
    try:
        return parse_formula(text)
    except ParseError as formula_error:
        try:
            return parse_term(text)
        except ParseError:
            raise formula_error
