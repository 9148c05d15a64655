# deduction/tautology.py - propositional validity by case splitting on letters
#
# Atoms and quantified formulas are letters. Closed equations between
# numerals are constants, so 0 = S(0) is false in every valuation.
import logging
from typing import Dict, List, Optional

from language.syntax import And, Atom, Imp, Not, Num, Or

logger = logging.getLogger(__name__)


def _constant(phi) -> Optional[bool]:
    if isinstance(phi, Atom) and phi.pred == "=":
        left, right = phi.args
        if isinstance(left, Num) and isinstance(right, Num):
            return left.value == right.value
    return None


def letters(phi) -> List:
    """Propositional letters of phi in order of first occurrence"""
    seen: Dict = {}
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Not):
            stack.append(node.body)
        elif isinstance(node, (Imp, And, Or)):
            stack.append(node.right)
            stack.append(node.left)
        elif _constant(node) is None and node not in seen:
            seen[node] = None
    return list(seen)


def _value(phi, valuation: Dict) -> Optional[bool]:
    """Partial evaluation; None while undetermined"""
    if isinstance(phi, Not):
        inner = _value(phi.body, valuation)
        return None if inner is None else not inner
    if isinstance(phi, Imp):
        left = _value(phi.left, valuation)
        if left is False:
            return True
        right = _value(phi.right, valuation)
        if right is True:
            return True
        if left is True and right is False:
            return False
        return None
    if isinstance(phi, And):
        left = _value(phi.left, valuation)
        if left is False:
            return False
        right = _value(phi.right, valuation)
        if right is False:
            return False
        if left is True and right is True:
            return True
        return None
    if isinstance(phi, Or):
        left = _value(phi.left, valuation)
        if left is True:
            return True
        right = _value(phi.right, valuation)
        if right is True:
            return True
        if left is False and right is False:
            return False
        return None
    constant = _constant(phi)
    if constant is not None:
        return constant
    return valuation.get(phi)


def _valid(phi, order: List, position: int, valuation: Dict) -> bool:
    value = _value(phi, valuation)
    if value is not None:
        return value
    letter = order[position]
    for choice in (True, False):
        valuation[letter] = choice
        if not _valid(phi, order, position + 1, valuation):
            del valuation[letter]
            return False
    del valuation[letter]
    return True


def is_tautology(phi) -> bool:
    order = letters(phi)
    logger.debug(f"tautology check over {len(order)} letter(s)")
    return _valid(phi, order, 0, {})


def falsifying_valuation(phi) -> Optional[Dict]:
    """A valuation of the letters making phi false, or None for tautologies"""
    order = letters(phi)
    valuation: Dict = {}

    def search(position: int) -> bool:
        value = _value(phi, valuation)
        if value is not None:
            return value is False
        for choice in (True, False):
            valuation[order[position]] = choice
            if search(position + 1):
                return True
            del valuation[order[position]]
        return False

    return dict(valuation) if search(0) else None
