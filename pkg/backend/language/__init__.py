# This file makes the language directory a Python package
from .syntax import Atom, Forall, Imp, Num, Var, eq, free_vars, substitute, to_text
from .parser import parse, parse_formula, parse_term
from .coding import code_of, decode, gc, gq, pretty

__all__ = [
    'Atom', 'Forall', 'Imp', 'Num', 'Var', 'eq', 'free_vars', 'substitute', 'to_text',
    'parse', 'parse_formula', 'parse_term',
    'code_of', 'decode', 'gc', 'gq', 'pretty',
]
