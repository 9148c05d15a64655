# deduction/axioms.py - axiom texts and schema builders for the builtin systems
#
# Bound variables in axiom texts are drawn from a, m, n, p, q, r, s, t so that
# instantiating an axiom at a term over u, v, w, x, y, z never captures.
import logging
from typing import Dict

from errors import SchemaError
from language.coding import dotted_atom_symbol, gq
from language.parser import parse_formula
from language.syntax import (
    And, Forall, Imp, Var, ZERO,
    app, atom, free_vars, iff, is_formula, is_sentence, substitute, to_text,
)

logger = logging.getLogger(__name__)

SELF = "SELF"

# ==================== Axiom texts ====================

PA_AXIOMS = {
    "PA1": "forall n (~S(n) = 0)",
    "PA2": "forall n (forall m (S(n) = S(m) -> n = m))",
    "PA3": "forall n ((n + 0) = n)",
    "PA4": "forall n (forall m ((n + S(m)) = S((n + m))))",
    "PA5": "forall n ((n * 0) = 0)",
    "PA6": "forall n (forall m ((n * S(m)) = ((n * m) + n)))",
}

REPRESENTATION_AXIOMS = {
    "REP-neg": "forall p in dL0 (dL0(dneg(p)))",
    "REP-imp": "forall p in dL0 (forall q in dL0 (dL0(dimp(p, q))))",
    "REP-and": "forall p in dL0 (forall q in dL0 (dL0(dand(p, q))))",
    "REP-or": "forall p in dL0 (forall q in dL0 (dL0(dor(p, q))))",
}

COMPOSITIONAL_TRUTH_AXIOMS = {
    "UCT-neg": "forall p in dL0 (T(dneg(p)) <-> ~T(p))",
    "UCT-imp": "forall p in dL0 (forall q in dL0 (T(dimp(p, q)) <-> (T(p) -> T(q))))",
    "UCT-and": "forall p in dL0 (forall q in dL0 (T(dand(p, q)) <-> (T(p) & T(q))))",
    "UCT-or": "forall p in dL0 (forall q in dL0 (T(dor(p, q)) <-> (T(p) | T(q))))",
    "UCT-forall": "forall r in dVar (forall p (dL1(p, r) -> (T(dforall(r, p)) <-> forall t in dTerm0 (T(dsbt(p, t, r))))))",
    "UCT-exists": "forall r in dVar (forall p (dL1(p, r) -> (T(dexists(r, p)) <-> exists t in dTerm0 (T(dsbt(p, t, r))))))",
}

BELIEF_AXIOMS = {
    "Non-triviality": "exists a (Ag(a))",
    "K1-K2": "forall p in dL0 (K1(p) <-> forall a in Ag (K2(a, p)))",
    "UK^K": "forall a in Ag (forall p in dL0 (forall q in dL0 ((K2(a, p) & K2(a, dimp(p, q))) -> K2(a, q))))",
}

# R_DCB refers to the provability predicate of the system that contains it
REFLECTION_TEMPLATE = "forall a in Ag (forall p in dL0 (Pr[SELF](p) -> K2(a, p)))"

VERACITY_AXIOM = {"V": "forall a in Ag (forall p in dL0 (K2(a, p) -> T(p)))"}

EPISTEMIC_AXIOMS = {
    "UNS^K": ("forall a in Ag (forall r in dVar (forall s in dTerm0 (forall t in dTerm0 (forall p "
              "(dL1(p, r) -> (dev(s) = dev(t) -> (K2(a, dsbt(p, s, r)) <-> K2(a, dsbt(p, t, r)))))))))"),
    "UND^K": "forall a in Ag (forall s in dTerm0 (forall t in dTerm0 (dev(s) != dev(t) -> K2(a, dneg(deq(s, t))))))",
}

SUPPLEMENTARY_AXIOMS = {
    "UBF^K": ("forall a in Ag (forall r in dVar (forall p (dL1(p, r) -> "
              "(forall t in dTerm0 (K2(a, dsbt(p, t, r))) -> K2(a, dforall(r, p))))))"),
    "IA": "forall a in Ag (forall p in dL0 (K2(a, dT(dgq(p))) <-> T(dK2(dnum(a), dgq(p)))))",
    "In+": "forall a in Ag (forall p in dL0 (K2(a, dT(dgq(p))) -> K2(a, dK2(dnum(a), dgq(p)))))",
    "In-": "forall a in Ag (forall p in dL0 (~K2(a, dT(dgq(p))) -> K2(a, dneg(dK2(dnum(a), dgq(p))))))",
    "U4": "forall a in Ag (forall p in dL0 (K2(a, p) -> K2(a, dK2(dnum(a), dgq(p)))))",
}

ARITHMETIC_REFLECTION = {"R^T": "forall p in dL0 (Pr[Base](p) -> T(p))"}


def parse_axioms(texts: Dict[str, str]) -> Dict[str, object]:
    result = {}
    for name, text in texts.items():
        formula = parse_formula(text)
        if not is_sentence(formula):
            raise SchemaError(f"axiom {name} is not a sentence: {text}")
        result[name] = formula
    return result


# ==================== Schemata ====================

def _universal_closure(phi, skip=()):
    for name in sorted(free_vars(phi) - set(skip), reverse=True):
        phi = Forall(name, phi)
    return phi


def induction(phi, var: str):
    """Universal closure of (phi(0) & forall v (phi(v) -> phi(S v))) -> forall v phi"""
    if not is_formula(phi):
        raise SchemaError("induction needs a formula")
    base = substitute(phi, var, ZERO)
    step = Forall(var, Imp(phi, substitute(phi, var, app("S", Var(var)))))
    return _universal_closure(Imp(And(base, step), Forall(var, phi)))


_ATOMIC_TRUTH_RELATIONS = {"=": 2, "U": 1, "Ag": 1}
_TERM_VARIABLES = ("p", "q")


def atomic_truth(relation: str):
    """Compositional clause for the atoms R(t1, ..) of the sublanguage without T and K"""
    if relation not in _ATOMIC_TRUTH_RELATIONS:
        raise SchemaError(f"UCT-Atom is defined for =, U and Ag, not {relation!r}")
    names = _TERM_VARIABLES[:_ATOMIC_TRUTH_RELATIONS[relation]]
    variables = [Var(n) for n in names]
    coded = atom("T", app(dotted_atom_symbol(relation), *variables))
    evaluated = atom(relation, *(app("dev", v) for v in variables))
    body = iff(coded, evaluated)
    for name in reversed(names):
        body = Forall(name, Imp(atom("dTerm0", Var(name)), body))
    return body


def _sentence(phi, schema: str):
    if not is_sentence(phi):
        shown = to_text(phi) if is_formula(phi) else repr(phi)
        raise SchemaError(f"{schema} is instantiated at sentences, got {shown}")
    return phi


def untyped_truth_of_knowledge(phi):
    """K1(<phi>) -> phi"""
    _sentence(phi, "UT^K")
    return Imp(atom("K1", gq(phi)), phi)


def known_untyped_truth(phi):
    return atom("K1", gq(untyped_truth_of_knowledge(phi)))


def knowledge_of_consequences(phi, psi):
    """(Pr[Base](<phi -> psi>) & K1(<phi>)) -> K1(<psi>)"""
    _sentence(phi, "I^K")
    _sentence(psi, "I^K")
    return Imp(And(atom("Pr[Base]", gq(Imp(phi, psi))), atom("K1", gq(phi))), atom("K1", gq(psi)))


def disquotation(phi):
    _sentence(phi, "TB")
    return iff(atom("T", gq(phi)), phi)
