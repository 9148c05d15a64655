# language/coding.py - Gödel codes, quotes, the dotted syntactic operations and the U/u tuple encoding
#
# A syntax node is written as a tagged record: tag byte, length header, payload.
# Lengths below 0x80 take one byte; longer payloads put 0x80 + k in front of a
# k-byte big-endian length. The record is prefixed with 0x01 and read as one
# big-endian natural, so leading zero bytes survive the conversion.
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

from errors import ArityError, CaptureError, DecodeError, EvaluationError
from language.syntax import (
    And, App, Atom, Exists, Forall, Imp, Not, Num, Or, Var,
    DOTTED_FUNCTIONS, DOTTED_RELATIONS, MINUS_RELATIONS,
    app, dotted_pr_symbol, dotted_pr_system, eval_closed_term, free_vars,
    is_formula, is_pa_term, is_term, numeral, pr_symbol, pr_system, substitute, to_text,
)

logger = logging.getLogger(__name__)

# ==================== Record encoding ====================

STR, VAR, NUM, APP, ATOM, NOT, IMP, AND, OR, FORALL, EXISTS = range(11)
_BINARY_TAGS = {Imp: IMP, And: AND, Or: OR}
_TAG_BINARY = {IMP: Imp, AND: And, OR: Or}
_QUANTIFIER_TAGS = {Forall: FORALL, Exists: EXISTS}
_TAG_QUANTIFIER = {FORALL: Forall, EXISTS: Exists}


def _record(tag: int, payload: bytes) -> bytes:
    length = len(payload)
    if length < 0x80:
        header = bytes((length,))
    else:
        size = length.to_bytes((length.bit_length() + 7) // 8, "big")
        header = bytes((0x80 + len(size),)) + size
    return bytes((tag,)) + header + payload


def _natural_bytes(n: int) -> bytes:
    return n.to_bytes((n.bit_length() + 7) // 8, "big") if n else b""


@lru_cache(maxsize=100_000)
def _encode(x) -> bytes:
    if isinstance(x, Var):
        return _record(VAR, x.name.encode("utf-8"))
    if isinstance(x, Num):
        return _record(NUM, _natural_bytes(x.value))
    if isinstance(x, App):
        return _record(APP, _record(STR, x.symbol.encode("utf-8")) + b"".join(_encode(a) for a in x.args))
    if isinstance(x, Atom):
        return _record(ATOM, _record(STR, x.pred.encode("utf-8")) + b"".join(_encode(a) for a in x.args))
    if isinstance(x, Not):
        return _record(NOT, _encode(x.body))
    if type(x) in _BINARY_TAGS:
        return _record(_BINARY_TAGS[type(x)], _encode(x.left) + _encode(x.right))
    if type(x) in _QUANTIFIER_TAGS:
        return _record(_QUANTIFIER_TAGS[type(x)], _record(STR, x.var.encode("utf-8")) + _encode(x.body))
    raise TypeError(f"cannot code {x!r}")


@lru_cache(maxsize=100_000)
def code_of(x) -> int:
    return int.from_bytes(b"\x01" + _encode(x), "big")


def _read(data: bytes, pos: int) -> Tuple[int, int, int]:
    """(tag, payload start, payload end) of the record at pos"""
    if pos + 2 > len(data):
        raise DecodeError("truncated record")
    tag, header = data[pos], data[pos + 1]
    start = pos + 2
    if header < 0x80:
        length = header
    else:
        size = header - 0x80
        length = int.from_bytes(data[start:start + size], "big")
        start += size
    end = start + length
    if end > len(data):
        raise DecodeError("record runs past the end of the code")
    return tag, start, end


def _text(data: bytes, pos: int) -> Tuple[str, int]:
    tag, start, end = _read(data, pos)
    if tag != STR:
        raise DecodeError("expected a symbol record")
    try:
        return data[start:end].decode("utf-8"), end
    except UnicodeDecodeError as e:
        raise DecodeError(f"bad symbol bytes: {e}") from None


def _node(data: bytes, pos: int):
    tag, start, end = _read(data, pos)
    try:
        if tag == VAR:
            return Var(data[start:end].decode("utf-8")), end
        if tag == NUM:
            return Num(int.from_bytes(data[start:end], "big")), end
        if tag in (APP, ATOM):
            symbol, cursor = _text(data, start)
            args = []
            while cursor < end:
                arg, cursor = _node(data, cursor)
                args.append(arg)
            if tag == APP:
                return app(symbol, *args), end
            return Atom(symbol, tuple(args)), end
        if tag == NOT:
            body, cursor = _node(data, start)
            return Not(body), _expect_end(cursor, end)
        if tag in _TAG_BINARY:
            left, cursor = _node(data, start)
            right, cursor = _node(data, cursor)
            return _TAG_BINARY[tag](left, right), _expect_end(cursor, end)
        if tag in _TAG_QUANTIFIER:
            var, cursor = _text(data, start)
            body, cursor = _node(data, cursor)
            return _TAG_QUANTIFIER[tag](var, body), _expect_end(cursor, end)
    except (ArityError, ValueError, UnicodeDecodeError) as e:
        raise DecodeError(f"ill-formed syntax record: {e}") from None
    raise DecodeError(f"unknown record tag {tag}")


def _expect_end(cursor: int, end: int) -> int:
    if cursor != end:
        raise DecodeError("record length does not match its contents")
    return end


# ==================== Codes and quotes ====================

@dataclass(frozen=True)
class GodelCode:
    value: int

    def __int__(self):
        return self.value

    def decode(self):
        return decode(self.value)


def gc(x) -> GodelCode:
    return GodelCode(code_of(x))


def gq(x) -> Num:
    """The numeral of the code of x"""
    return numeral(code_of(x))


@lru_cache(maxsize=100_000)
def _decode_int(value: int):
    if value <= 0:
        raise DecodeError(f"{value} is not a code")
    data = value.to_bytes((value.bit_length() + 7) // 8, "big")
    if data[0] != 0x01:
        raise DecodeError(f"{value} is not a code: missing marker byte")
    node, end = _node(data, 1)
    if end != len(data):
        raise DecodeError(f"{value} is not a code: trailing bytes")
    if code_of(node) != value:
        raise DecodeError(f"{value} is not a code: non-canonical record")
    return node


def decode(code: Union[int, GodelCode]):
    return _decode_int(int(code))


def try_decode(code: int):
    try:
        return _decode_int(code)
    except DecodeError:
        return None


def sentence_of(code: int):
    """The sentence coded by code, or None"""
    x = try_decode(code)
    if is_formula(x) and not free_vars(x):
        return x
    return None


# ==================== Dotted symbols ====================

_ATOM_BUILDERS = {"deq": "=", "dU": "U", "dAg": "Ag", "dT": "T", "dK1": "K1", "dK2": "K2"}
_CONNECTIVES = {"dneg": Not, "dimp": Imp, "dand": And, "dor": Or}
_QUANTIFIERS = {"dforall": Forall, "dexists": Exists}


def dotted_atom_symbol(pred: str) -> Optional[str]:
    """Dotted function building atoms with predicate pred, if there is one"""
    for dotted, plain in _ATOM_BUILDERS.items():
        if plain == pred:
            return dotted
    system = pr_system(pred)
    return dotted_pr_symbol(system) if system is not None else None


def atom_predicate(dotted: str) -> Optional[str]:
    if dotted in _ATOM_BUILDERS:
        return _ATOM_BUILDERS[dotted]
    system = dotted_pr_system(dotted)
    return pr_symbol(system) if system is not None else None


def dotted_connective(formula_type) -> Optional[str]:
    for dotted, kind in _CONNECTIVES.items():
        if kind is formula_type:
            return dotted
    return None


def _expect_formula(value: int):
    x = try_decode(value)
    if not is_formula(x):
        raise EvaluationError(f"{value} does not code a formula")
    return x


def _expect_term(value: int):
    x = try_decode(value)
    if not is_term(x):
        raise EvaluationError(f"{value} does not code a term")
    return x


def _expect_var(value: int) -> Var:
    x = try_decode(value)
    if not isinstance(x, Var):
        raise EvaluationError(f"{value} does not code a variable")
    return x


def _substitution(target: int, term: int, variable: int) -> int:
    x = try_decode(target)
    if x is None:
        raise EvaluationError(f"{target} does not code syntax")
    try:
        return code_of(substitute(x, _expect_var(variable).name, _expect_term(term)))
    except CaptureError as e:
        raise EvaluationError(str(e)) from None


def _evaluation(value: int) -> int:
    t = _expect_term(value)
    if free_vars(t) or not is_pa_term(t):
        raise EvaluationError(f"{value} does not code a closed arithmetic term")
    return eval_closed_term(t)


def apply_dotted(symbol: str, values: Sequence[int]) -> Union[int, bool]:
    """Meta-level value of a dotted function or relation on naturals"""
    if symbol in _CONNECTIVES:
        kind = _CONNECTIVES[symbol]
        parts = [_expect_formula(v) for v in values]
        return code_of(kind(*parts))
    if symbol in _QUANTIFIERS:
        return code_of(_QUANTIFIERS[symbol](_expect_var(values[0]).name, _expect_formula(values[1])))
    if symbol == "dsbt":
        return _substitution(*values)
    if symbol in ("dgq", "dnum"):
        return code_of(Num(values[0]))
    if symbol == "dev":
        return _evaluation(values[0])
    pred = atom_predicate(symbol)
    if pred is not None:
        return code_of(Atom(pred, tuple(_expect_term(v) for v in values)))
    if symbol in DOTTED_RELATIONS:
        return _dotted_relation(symbol, values)
    raise EvaluationError(f"{symbol} is not a dotted symbol")


def _dotted_relation(symbol: str, values: Sequence[int]) -> bool:
    x = try_decode(values[0])
    if symbol == "dL0":
        return is_formula(x) and not free_vars(x)
    if symbol == "dL1":
        v = try_decode(values[1])
        return is_formula(x) and isinstance(v, Var) and free_vars(x) == frozenset((v.name,))
    if symbol == "dTerm0":
        return is_term(x) and is_pa_term(x) and not free_vars(x)
    if symbol == "dVar":
        return isinstance(x, Var)
    if symbol == "dAtom":
        return isinstance(x, Atom) and x.pred in MINUS_RELATIONS
    raise EvaluationError(f"{symbol} is not a dotted relation")


def is_dotted_function(symbol: str) -> bool:
    return symbol in DOTTED_FUNCTIONS or dotted_pr_system(symbol) is not None


def eval_dotted(symbol: str, args: Iterable[Union[int, GodelCode]]) -> Union[GodelCode, bool]:
    values = [int(a) for a in args]
    result = apply_dotted(symbol, values)
    if isinstance(result, bool):
        return result
    return GodelCode(result)


def evaluate_term(t, u_map: Optional[Dict[int, int]] = None) -> int:
    """Value of a closed term with dotted symbols; u is read from u_map when given"""
    if isinstance(t, Num):
        return t.value
    if isinstance(t, Var):
        raise EvaluationError(f"open term: variable {t.name}")
    values = [evaluate_term(a, u_map) for a in t.args]
    if t.symbol == "S":
        return values[0] + 1
    if t.symbol == "+":
        return values[0] + values[1]
    if t.symbol == "*":
        return values[0] * values[1]
    if t.symbol == "u":
        if u_map is None:
            raise EvaluationError("u has no interpretation outside a world")
        return u_map.get(values[0], 0)
    return apply_dotted(t.symbol, values)


def pretty(x) -> str:
    """Like to_text, but numerals that code sentences are shown as quotes"""
    def render(n: int) -> str:
        if n > 5:
            quoted = try_decode(n)
            if quoted is not None:
                return f"⌜{to_text(quoted, render)}⌝"
        return to_text(Num(n)) if n <= 5 else str(n)
    return to_text(x, render)


# ==================== Auxiliary relations through U ====================

def pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def tuple_code(values: Sequence[int]) -> int:
    if not values:
        raise ValueError("empty tuple")
    if len(values) == 1:
        return values[0]
    return pair(values[0], tuple_code(values[1:]))


def _pair_formula(y, a, b):
    two = Num(2)
    total = app("+", a, b)
    return Atom("=", (app("*", two, y),
                      app("+", app("*", total, app("S", total)), app("*", two, b))))


def _tuple_formula(y, components, depth: int):
    if len(components) == 1:
        return Atom("=", (y, components[0]))
    z = f"z{depth}"
    return Exists(z, And(_tuple_formula(Var(z), components[1:], depth + 1),
                         _pair_formula(y, components[0], Var(z))))


def encode_aux_relation(n: int, k: int, args: Sequence[int]):
    """Formula interpreting the k-th n-ary auxiliary relation at args through U and tuple codes"""
    if len(args) != n:
        raise ArityError(f"auxiliary relation of arity {n} applied to {len(args)} argument(s)")
    components = [numeral(n), numeral(k)] + [numeral(a) for a in args]
    return Exists("y", And(Atom("U", (Var("y"),)), _tuple_formula(Var("y"), components, 1)))
