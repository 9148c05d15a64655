# deduction/computation.py - syntactic computation on closed dotted terms
#
# Normal forms are computed bottom-up. Closed arithmetic and dotted terms are
# evaluated to numerals; dsbt with an open code argument is pushed through the
# quoted connectives and atoms; dL0 and dTerm0 facts that hold for every value
# of the open parts are decided; dev undoes dgq. Every rewrite is an instance
# of a Base theorem about the represented syntactic functions.
import logging
from functools import lru_cache
from typing import Optional

from errors import EvaluationError
from language.coding import (
    apply_dotted, atom_predicate, code_of, dotted_atom_symbol, dotted_connective, try_decode,
)
from language.syntax import (
    And, App, Atom, Imp, Not, Num, Or, Var,
    BOT, TOP, DOTTED_RELATIONS, QUANTIFIER_TYPES,
    app, free_vars, is_formula, is_pa_term, is_term,
)

logger = logging.getLogger(__name__)

_CONNECTIVE_ARITY = {"dneg": 1, "dimp": 2, "dand": 2, "dor": 2}


def _evaluate(symbol: str, values):
    if symbol == "S":
        return values[0] + 1
    if symbol == "+":
        return values[0] + values[1]
    if symbol == "*":
        return values[0] * values[1]
    return apply_dotted(symbol, values)


@lru_cache(maxsize=100_000)
def normalize_term(t):
    if not isinstance(t, App):
        return t
    symbol = "dgq" if t.symbol == "dnum" else t.symbol
    args = tuple(normalize_term(a) for a in t.args)
    if symbol == "dev" and isinstance(args[0], App) and args[0].symbol == "dgq":
        return args[0].args[0]
    if all(isinstance(a, Num) for a in args) and symbol != "u":
        try:
            return Num(_evaluate(symbol, [a.value for a in args]))
        except EvaluationError:
            return app(symbol, *args)
    if symbol == "dsbt":
        pushed = _push_substitution(*args)
        if pushed is not None:
            return pushed
    return app(symbol, *args)


def _push_substitution(target, code_term, variable) -> Optional[object]:
    """dsbt(c, g, v) for a quoted c and an open code g, pushed one level into c"""
    if not (isinstance(target, Num) and isinstance(variable, Num)):
        return None
    quoted = try_decode(target.value)
    v = try_decode(variable.value)
    if quoted is None or not isinstance(v, Var):
        return None
    if v.name not in free_vars(quoted):
        return target
    if quoted == v:
        return code_term
    if isinstance(quoted, Not) or isinstance(quoted, (Imp, And, Or)):
        parts = (quoted.body,) if isinstance(quoted, Not) else (quoted.left, quoted.right)
        pushed = [normalize_term(app("dsbt", Num(code_of(p)), code_term, variable)) for p in parts]
        return app(dotted_connective(type(quoted)), *pushed)
    if isinstance(quoted, (Atom, App)):
        builder = dotted_atom_symbol(quoted.pred) if isinstance(quoted, Atom) else None
        if builder is None:
            return None
        new_args = []
        for arg in quoted.args:
            if arg == v:
                new_args.append(code_term)
            elif v.name not in free_vars(arg):
                new_args.append(Num(code_of(arg)))
            else:
                return None
        return app(builder, *new_args)
    return None


# ==================== Decided facts ====================

def _closed_term_code(t) -> bool:
    """t denotes the code of a closed term for every value of its variables"""
    if isinstance(t, Num):
        x = try_decode(t.value)
        return is_term(x) and not free_vars(x)
    if isinstance(t, App) and t.symbol == "dgq":
        return True
    if isinstance(t, App) and t.symbol == "dsbt" and isinstance(t.args[0], Num) and isinstance(t.args[2], Num):
        x, v = try_decode(t.args[0].value), try_decode(t.args[2].value)
        return is_term(x) and isinstance(v, Var) and free_vars(x) <= {v.name} and _closed_term_code(t.args[1])
    return False


def _sentence_code(t) -> bool:
    """t denotes the code of a sentence for every value of its variables"""
    if isinstance(t, Num):
        x = try_decode(t.value)
        return is_formula(x) and not free_vars(x)
    if not isinstance(t, App):
        return False
    if t.symbol in _CONNECTIVE_ARITY:
        return all(_sentence_code(a) for a in t.args)
    if atom_predicate(t.symbol) is not None:
        return all(_closed_term_code(a) for a in t.args)
    if t.symbol == "dsbt" and isinstance(t.args[0], Num) and isinstance(t.args[2], Num):
        x, v = try_decode(t.args[0].value), try_decode(t.args[2].value)
        return (is_formula(x) and isinstance(v, Var) and free_vars(x) <= {v.name}
                and _closed_term_code(t.args[1]))
    return False


def _closed_pa_term_code(t) -> bool:
    if isinstance(t, Num):
        x = try_decode(t.value)
        return is_term(x) and is_pa_term(x) and not free_vars(x)
    return isinstance(t, App) and t.symbol == "dgq"


def _decide(a: Atom) -> Optional[bool]:
    if a.pred == "=":
        left, right = a.args
        if isinstance(left, Num) and isinstance(right, Num):
            return left.value == right.value
        if left == right:
            return True
        return None
    if a.pred in DOTTED_RELATIONS:
        if all(isinstance(arg, Num) for arg in a.args):
            return apply_dotted(a.pred, [arg.value for arg in a.args])
        if a.pred == "dL0" and _sentence_code(a.args[0]):
            return True
        if a.pred == "dTerm0" and _closed_pa_term_code(a.args[0]):
            return True
    return None


@lru_cache(maxsize=100_000)
def normalize(phi):
    """Normal form of a formula or term under the computation rule"""
    if is_term(phi):
        return normalize_term(phi)
    if isinstance(phi, Atom):
        reduced = Atom(phi.pred, tuple(normalize_term(a) for a in phi.args))
        decided = _decide(reduced)
        if decided is None:
            return reduced
        return TOP if decided else BOT
    if isinstance(phi, Not):
        return Not(normalize(phi.body))
    if isinstance(phi, (Imp, And, Or)):
        return type(phi)(normalize(phi.left), normalize(phi.right))
    if isinstance(phi, QUANTIFIER_TYPES):
        return type(phi)(phi.var, normalize(phi.body))
    raise TypeError(f"cannot normalize {phi!r}")
