# conftest.py - shared fixtures for the workbench tests
import os
import random
import sys

import pytest

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from deduction.systems import default_registry
from language.syntax import And, Exists, Forall, Imp, Not, Num, Or, Var, app, atom, eq, free_vars
from theorem_db import get_theorem_db
import settings


@pytest.fixture
def registry():
    return default_registry()


@pytest.fixture(autouse=True)
def db():
    """A fresh theorem store for every test"""
    store = get_theorem_db()
    store.clear()
    yield store
    store.clear()


@pytest.fixture
def rng():
    return random.Random(settings.SEED)


# ==================== Random syntax ====================

def random_term(rng: random.Random, depth: int, variables=()):
    if depth <= 0 or rng.random() < 0.4:
        if variables and rng.random() < 0.5:
            return Var(rng.choice(list(variables)))
        return Num(rng.randrange(4))
    if rng.random() < 0.5:
        return app("S", random_term(rng, depth - 1, variables))
    return app("+", random_term(rng, depth - 1, variables), random_term(rng, depth - 1, variables))


def random_formula(rng: random.Random, depth: int, variables=("y",)):
    """Formula of depth at most depth over =, U, Ag and T with free variables among variables"""
    if depth <= 0 or rng.random() < 0.3:
        kind = rng.randrange(4)
        if kind == 0:
            return eq(random_term(rng, 2, variables), random_term(rng, 2, variables))
        if kind == 1:
            return atom("U", random_term(rng, 2, variables))
        if kind == 2:
            return atom("Ag", random_term(rng, 1, variables))
        return atom("T", random_term(rng, 1, variables))
    kind = rng.randrange(6)
    if kind == 0:
        return Not(random_formula(rng, depth - 1, variables))
    if kind in (1, 2, 3):
        connective = (Imp, And, Or)[kind - 1]
        return connective(random_formula(rng, depth - 1, variables), random_formula(rng, depth - 1, variables))
    bound = "x"
    body = random_formula(rng, depth - 1, tuple(variables) + (bound,))
    return (Forall if kind == 4 else Exists)(bound, body)


def random_unary_formula(rng: random.Random, depth: int = 4, var: str = "y"):
    while True:
        phi = random_formula(rng, depth, (var,))
        if free_vars(phi) == frozenset({var}):
            return phi


def random_sentence(rng: random.Random, depth: int = 4):
    return random_formula(rng, depth, ())
