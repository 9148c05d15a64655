# language/syntax.py - abstract syntax for the language of arithmetic with U, u, T, K1, K2 and Ag
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, FrozenSet, Iterable, Iterator, Optional, Tuple, Union

from errors import ArityError, CaptureError, EvaluationError

logger = logging.getLogger(__name__)

# ==================== Signature ====================

ARITHMETIC_FUNCTIONS = {"S": 1, "+": 2, "*": 2}
FUNCTIONS = {**ARITHMETIC_FUNCTIONS, "u": 1}
RELATIONS = {"=": 2, "U": 1, "Ag": 1, "T": 1, "K1": 1, "K2": 2}

# relation symbols of the sublanguage without T, K1, K2
MINUS_RELATIONS = frozenset({"=", "U", "Ag"})
MINUS_FUNCTIONS = frozenset({"S", "+", "*", "u"})

# defined symbols representing syntactic operations on codes
DOTTED_FUNCTIONS = {
    "dneg": 1, "dimp": 2, "dand": 2, "dor": 2,
    "dforall": 2, "dexists": 2,
    "dsbt": 3, "dgq": 1, "dnum": 1, "dev": 1,
    "deq": 2, "dU": 1, "dAg": 1, "dT": 1, "dK1": 1, "dK2": 2,
}
DOTTED_RELATIONS = {"dL0": 1, "dL1": 2, "dTerm0": 1, "dVar": 1, "dAtom": 1}

KEYWORDS = frozenset({"forall", "exists", "in", "bot"})


def pr_symbol(system: str) -> str:
    return f"Pr[{system}]"


def dotted_pr_symbol(system: str) -> str:
    return f"dPr[{system}]"


def _bracketed(symbol: str, prefix: str) -> Optional[str]:
    if symbol.startswith(prefix) and symbol.endswith("]") and len(symbol) > len(prefix) + 1:
        return symbol[len(prefix):-1]
    return None


def pr_system(symbol: str) -> Optional[str]:
    """System name of a provability predicate symbol, None for other symbols"""
    return _bracketed(symbol, "Pr[")


def dotted_pr_system(symbol: str) -> Optional[str]:
    return _bracketed(symbol, "dPr[")


def function_arity(symbol: str) -> Optional[int]:
    if symbol in FUNCTIONS:
        return FUNCTIONS[symbol]
    if symbol in DOTTED_FUNCTIONS:
        return DOTTED_FUNCTIONS[symbol]
    if dotted_pr_system(symbol) is not None:
        return 1
    return None


def relation_arity(symbol: str) -> Optional[int]:
    if symbol in RELATIONS:
        return RELATIONS[symbol]
    if symbol in DOTTED_RELATIONS:
        return DOTTED_RELATIONS[symbol]
    if pr_system(symbol) is not None:
        return 1
    return None


# ==================== Nodes ====================

class Syntax:
    """Structural equality with a hash computed once at construction"""

    _fields_: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((type(self).__name__, self._values())))

    def _values(self):
        return tuple(getattr(self, name) for name in self._fields_)

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._values() == other._values()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, eq=False)
class Var(Syntax):
    name: str
    _fields_ = ("name",)


@dataclass(frozen=True, eq=False)
class Num(Syntax):
    """The numeral S(...S(0)...) with `value` successors"""
    value: int
    _fields_ = ("value",)

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"numerals denote naturals, got {self.value}")
        super().__post_init__()


@dataclass(frozen=True, eq=False)
class App(Syntax):
    symbol: str
    args: Tuple["Term", ...]
    _fields_ = ("symbol", "args")

    def __post_init__(self):
        arity = function_arity(self.symbol)
        if arity is None:
            raise ArityError(f"unknown function symbol {self.symbol!r}")
        if arity != len(self.args):
            raise ArityError(f"{self.symbol} expects {arity} argument(s), got {len(self.args)}")
        if self.symbol == "S" and isinstance(self.args[0], Num):
            raise ValueError("successor of a numeral must be built with app()")
        super().__post_init__()


@dataclass(frozen=True, eq=False)
class Atom(Syntax):
    pred: str
    args: Tuple["Term", ...]
    _fields_ = ("pred", "args")

    def __post_init__(self):
        arity = relation_arity(self.pred)
        if arity is None:
            raise ArityError(f"unknown relation symbol {self.pred!r}")
        if arity != len(self.args):
            raise ArityError(f"{self.pred} expects {arity} argument(s), got {len(self.args)}")
        super().__post_init__()


@dataclass(frozen=True, eq=False)
class Not(Syntax):
    body: "Formula"
    _fields_ = ("body",)


@dataclass(frozen=True, eq=False)
class Imp(Syntax):
    left: "Formula"
    right: "Formula"
    _fields_ = ("left", "right")


@dataclass(frozen=True, eq=False)
class And(Syntax):
    left: "Formula"
    right: "Formula"
    _fields_ = ("left", "right")


@dataclass(frozen=True, eq=False)
class Or(Syntax):
    left: "Formula"
    right: "Formula"
    _fields_ = ("left", "right")


@dataclass(frozen=True, eq=False)
class Forall(Syntax):
    var: str
    body: "Formula"
    _fields_ = ("var", "body")


@dataclass(frozen=True, eq=False)
class Exists(Syntax):
    var: str
    body: "Formula"
    _fields_ = ("var", "body")


Term = Union[Var, Num, App]
Formula = Union[Atom, Not, Imp, And, Or, Forall, Exists]
TERM_TYPES = (Var, Num, App)
FORMULA_TYPES = (Atom, Not, Imp, And, Or, Forall, Exists)
BINARY_TYPES = (Imp, And, Or)
QUANTIFIER_TYPES = (Forall, Exists)


def is_term(x) -> bool:
    return isinstance(x, TERM_TYPES)


def is_formula(x) -> bool:
    return isinstance(x, FORMULA_TYPES)


# ==================== Constructors ====================

def numeral(n: int) -> Num:
    return Num(n)


ZERO = Num(0)


def app(symbol: str, *args: Term) -> Term:
    """Function application; S applied to a numeral folds into the next numeral"""
    if symbol == "0" and not args:
        return ZERO
    if symbol == "S" and len(args) == 1 and isinstance(args[0], Num):
        return Num(args[0].value + 1)
    return App(symbol, tuple(args))


def atom(pred: str, *args: Term) -> Atom:
    return Atom(pred, tuple(args))


def eq(left: Term, right: Term) -> Atom:
    return Atom("=", (left, right))


TOP = eq(ZERO, ZERO)
BOT = eq(ZERO, Num(1))


def iff(left: Formula, right: Formula) -> And:
    return And(Imp(left, right), Imp(right, left))


def bounded_forall(var: str, pred: str, body: Formula) -> Forall:
    return Forall(var, Imp(atom(pred, Var(var)), body))


def bounded_exists(var: str, pred: str, body: Formula) -> Exists:
    return Exists(var, And(atom(pred, Var(var)), body))


def implication_chain(premises: Iterable[Formula], conclusion: Formula) -> Formula:
    """P1 -> (P2 -> ... -> C)"""
    result = conclusion
    for premise in reversed(list(premises)):
        result = Imp(premise, result)
    return result


def split_iff(phi) -> Optional[Tuple[Formula, Formula]]:
    if (isinstance(phi, And) and isinstance(phi.left, Imp) and isinstance(phi.right, Imp)
            and phi.left.left == phi.right.right and phi.left.right == phi.right.left):
        return phi.left.left, phi.left.right
    return None


def split_bounded(phi) -> Optional[Tuple[str, str, Formula]]:
    """(variable, guard predicate, body) for forall x in P (body) and exists x in P (body)"""
    if isinstance(phi, Forall) and isinstance(phi.body, Imp):
        guard = phi.body.left
        connective_body = phi.body.right
    elif isinstance(phi, Exists) and isinstance(phi.body, And):
        guard = phi.body.left
        connective_body = phi.body.right
    else:
        return None
    if (isinstance(guard, Atom) and len(guard.args) == 1 and relation_arity(guard.pred) == 1
            and guard.args[0] == Var(phi.var)):
        return phi.var, guard.pred, connective_body
    return None


# ==================== Inspection ====================

def children(x) -> Tuple:
    if isinstance(x, (App, Atom)):
        return x.args
    if isinstance(x, Not):
        return (x.body,)
    if isinstance(x, BINARY_TYPES):
        return (x.left, x.right)
    if isinstance(x, QUANTIFIER_TYPES):
        return (x.body,)
    return ()


@lru_cache(maxsize=200_000)
def free_vars(x) -> FrozenSet[str]:
    if isinstance(x, Var):
        return frozenset((x.name,))
    if isinstance(x, Num):
        return frozenset()
    if isinstance(x, QUANTIFIER_TYPES):
        return free_vars(x.body) - {x.var}
    result = frozenset()
    for child in children(x):
        result = result | free_vars(child)
    return result


@lru_cache(maxsize=100_000)
def all_vars(x) -> FrozenSet[str]:
    """Free and bound variable names"""
    if isinstance(x, Var):
        return frozenset((x.name,))
    result = frozenset((x.var,)) if isinstance(x, QUANTIFIER_TYPES) else frozenset()
    for child in children(x):
        result = result | all_vars(child)
    return result


def is_closed(x) -> bool:
    return not free_vars(x)


def is_sentence(x) -> bool:
    return is_formula(x) and not free_vars(x)


def in_L(phi, n: int) -> bool:
    """Formula with precisely n free variables"""
    return is_formula(phi) and len(free_vars(phi)) == n


def in_L_vars(phi, variables: Iterable[str]) -> bool:
    return is_formula(phi) and free_vars(phi) == frozenset(variables)


@lru_cache(maxsize=100_000)
def symbols(x) -> FrozenSet[str]:
    own = frozenset((x.symbol,)) if isinstance(x, App) else frozenset((x.pred,)) if isinstance(x, Atom) else frozenset()
    for child in children(x):
        own = own | symbols(child)
    return own


def in_pa(x) -> bool:
    return symbols(x) <= {"S", "+", "*", "="}


def in_minus(x) -> bool:
    return symbols(x) <= MINUS_FUNCTIONS | MINUS_RELATIONS


def is_pa_term(t) -> bool:
    return is_term(t) and in_pa(t)


def subformulas(phi) -> Iterator[Formula]:
    yield phi
    if isinstance(phi, Not):
        yield from subformulas(phi.body)
    elif isinstance(phi, BINARY_TYPES):
        yield from subformulas(phi.left)
        yield from subformulas(phi.right)
    elif isinstance(phi, QUANTIFIER_TYPES):
        yield from subformulas(phi.body)


def immediate_subformulas(phi) -> Tuple[Formula, ...]:
    if isinstance(phi, Not):
        return (phi.body,)
    if isinstance(phi, BINARY_TYPES):
        return (phi.left, phi.right)
    return ()


def fresh_variable(avoid: Iterable[str], base: str = "z") -> str:
    taken = set(avoid)
    if base not in taken:
        return base
    index = 1
    while f"{base}{index}" in taken:
        index += 1
    return f"{base}{index}"


# ==================== Substitution ====================

def substitute(x, v: str, t: Term):
    """Replace the free occurrences of v in x by t, refusing to capture variables of t"""
    if v not in free_vars(x):
        return x
    if isinstance(x, Var):
        return t
    if isinstance(x, App):
        return app(x.symbol, *(substitute(a, v, t) for a in x.args))
    if isinstance(x, Atom):
        return Atom(x.pred, tuple(substitute(a, v, t) for a in x.args))
    if isinstance(x, Not):
        return Not(substitute(x.body, v, t))
    if isinstance(x, BINARY_TYPES):
        return type(x)(substitute(x.left, v, t), substitute(x.right, v, t))
    if isinstance(x, QUANTIFIER_TYPES):
        if x.var in free_vars(t):
            raise CaptureError(f"substituting for {v} would capture {x.var}")
        return type(x)(x.var, substitute(x.body, v, t))
    return x


def sbt(phi, t: Term, v: Union[Var, str]):
    """Substitute the closed term t for the free occurrences of v"""
    name = v.name if isinstance(v, Var) else v
    if not is_term(t):
        raise TypeError(f"sbt expects a term, got {type(t).__name__}")
    if free_vars(t):
        raise CaptureError(f"open term {to_text(t)} rejected: only closed terms are substituted")
    return substitute(phi, name, t)


def rename_bound(phi, old: str, new: str):
    """Rename the free variable old to new; used to align unary predicates with a fixed variable"""
    return substitute(phi, old, Var(new))


# ==================== Evaluation ====================

def eval_closed_term(t: Term) -> int:
    """Standard-model value of a closed arithmetic term"""
    if isinstance(t, Num):
        return t.value
    if isinstance(t, Var):
        raise EvaluationError(f"open term: variable {t.name}")
    if isinstance(t, App):
        if t.symbol not in ARITHMETIC_FUNCTIONS:
            raise EvaluationError(f"non-arithmetic symbol {t.symbol} in {to_text(t)}")
        values = [eval_closed_term(a) for a in t.args]
        if t.symbol == "S":
            return values[0] + 1
        if t.symbol == "+":
            return values[0] + values[1]
        return values[0] * values[1]
    raise EvaluationError(f"not a term: {t!r}")


# ==================== Printing ====================

def _numeral_text(n: int) -> str:
    if n <= 5:
        return "S(" * n + "0" + ")" * n
    return str(n)


def _term_text(t, render_num) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Num):
        return render_num(t.value)
    if t.symbol in ("+", "*"):
        return f"({_term_text(t.args[0], render_num)} {t.symbol} {_term_text(t.args[1], render_num)})"
    return f"{t.symbol}({', '.join(_term_text(a, render_num) for a in t.args)})"


def _formula_text(phi, render_num, top: bool) -> str:
    if isinstance(phi, Atom):
        if phi.pred == "=":
            return f"{_term_text(phi.args[0], render_num)} = {_term_text(phi.args[1], render_num)}"
        return f"{phi.pred}({', '.join(_term_text(a, render_num) for a in phi.args)})"
    if isinstance(phi, Not):
        return "~" + _formula_text(phi.body, render_num, False)
    if isinstance(phi, QUANTIFIER_TYPES):
        keyword = "forall" if isinstance(phi, Forall) else "exists"
        bounded = split_bounded(phi)
        if bounded is not None:
            var, pred, body = bounded
            return f"{keyword} {var} in {pred} ({_formula_text(body, render_num, True)})"
        return f"{keyword} {phi.var} ({_formula_text(phi.body, render_num, True)})"
    pair = split_iff(phi)
    if pair is not None:
        text = f"{_formula_text(pair[0], render_num, False)} <-> {_formula_text(pair[1], render_num, False)}"
    else:
        op = "->" if isinstance(phi, Imp) else "&" if isinstance(phi, And) else "|"
        text = f"{_formula_text(phi.left, render_num, False)} {op} {_formula_text(phi.right, render_num, False)}"
    return text if top else f"({text})"


def to_text(x, render_num: Optional[Callable[[int], str]] = None) -> str:
    """Concrete syntax accepted back by the parser"""
    render = render_num or _numeral_text
    if is_term(x):
        return _term_text(x, render)
    return _formula_text(x, render, True)
