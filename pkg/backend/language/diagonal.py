# language/diagonal.py - fixed points, the common knowledge predicate and self-referential systems
#
# For phi(y) the diagonal sentence is
#     delta(z) := phi[y := dsbt(z, dgq(z), <z>)]
#     theta    := delta[z := <delta>]
# so theta contains dsbt(<delta>, dgq(<delta>), <z>), a closed term whose
# value is the code of theta itself. The witness theta <-> phi(<theta>) is
# therefore one computation step.
import logging
from dataclasses import dataclass, replace
from typing import List, Mapping, Optional, Union

from errors import CaptureError, DiagonalError
from deduction.builder import ProofBuilder
from deduction.proof import Proof
from language.coding import code_of, gq
from language.parser import parse_formula
from language.syntax import (
    And, Atom, BINARY_TYPES, Forall, Imp, Not, QUANTIFIER_TYPES, Var,
    all_vars, app, atom, free_vars, fresh_variable, iff, is_formula, pr_symbol, subformulas, substitute, to_text,
)

logger = logging.getLogger(__name__)

# variables of the common knowledge construction
CK_VARIABLE = "y"
AGENT_VARIABLE = "x"
CODE_VARIABLE = "v"


@dataclass(frozen=True)
class FixedPointResult:
    template: object
    variable: str
    aux: str
    sentence: object
    witness: object
    proof: Proof
    name: str = ""

    @property
    def code(self) -> int:
        return code_of(self.sentence)

    @property
    def parameters(self) -> List[str]:
        return sorted(free_vars(self.sentence))

    def check(self, registry=None, db=None):
        from deduction.kernel import check_proof
        return check_proof(self.proof, registry, db)


def diagonal_term(aux: str):
    return app("dsbt", Var(aux), app("dgq", Var(aux)), gq(Var(aux)))


def fixed_point(phi, var: str = "y", aux: Optional[str] = None, name: str = "", registry=None) -> FixedPointResult:
    """theta with Base |- forall params (theta <-> phi[var := <theta>])"""
    if not is_formula(phi):
        raise DiagonalError("fixed points are taken of formulas")
    if var not in free_vars(phi):
        raise DiagonalError(f"{var} is not free in {to_text(phi)}")
    taken = all_vars(phi)
    aux = aux or fresh_variable(taken, "z")
    if aux in taken:
        raise DiagonalError(f"auxiliary variable {aux} already occurs in {to_text(phi)}")
    try:
        delta = substitute(phi, var, diagonal_term(aux))
        theta = substitute(delta, aux, gq(delta))
    except CaptureError as e:
        raise DiagonalError(str(e)) from None
    body = iff(theta, substitute(phi, var, gq(theta)))
    params = sorted(free_vars(body))

    builder = ProofBuilder("Base", name=f"{name or 'fixed point'} witness", registry=registry)
    step = builder.comp(body)
    step = builder.generalize(step, reversed(params))
    witness = builder[step]
    logger.debug("fixed point of %s in %s: code %s", to_text(phi), var, code_of(theta))
    return FixedPointResult(phi, var, aux, theta, witness, builder.build(), name)


# ==================== Named fixed points ====================

def kappa(registry=None) -> FixedPointResult:
    """kappa <-> K1(dneg(<kappa>)), the Kaplan-Montague knower"""
    return fixed_point(atom("K1", app("dneg", Var("y"))), "y", name="kappa", registry=registry)


def delta(registry=None) -> FixedPointResult:
    """delta <-> ~K1(<delta>)"""
    return fixed_point(parse_formula("~K1(y)"), "y", name="delta", registry=registry)


def unknown(registry=None) -> FixedPointResult:
    """nu <-> ~exists x in Ag (K2(x, <nu>)), a delta for individual agents"""
    return fixed_point(parse_formula("~exists x in Ag (K2(x, y))"), "y", name="unknown", registry=registry)


def liar(registry=None) -> FixedPointResult:
    return fixed_point(parse_formula("~T(y)"), "y", name="liar", registry=registry)


def truth_teller(registry=None) -> FixedPointResult:
    return fixed_point(atom("T", Var("y")), "y", name="truth teller", registry=registry)


def henkin(system: str = "Base", registry=None) -> FixedPointResult:
    """h <-> Pr_S(<h>)"""
    return fixed_point(atom(pr_symbol(system), Var("y")), "y", name=f"henkin {system}", registry=registry)


# ==================== Common knowledge ====================

def agent_predicate(A) -> object:
    """A with its single free variable renamed to the agent variable"""
    if not is_formula(A) or len(free_vars(A)) != 1:
        raise DiagonalError("a group is given by a formula with exactly one free variable")
    (old,) = free_vars(A)
    try:
        return substitute(A, old, Var(AGENT_VARIABLE))
    except CaptureError as e:
        raise DiagonalError(str(e)) from None


def psi_formula(A, u_term=None, v_term=None):
    """forall x (Ag(x) -> (A(x) -> (K2(x, u) & K2(x, dsbt(v, dgq(u), <y>)))))"""
    u_term = Var(CK_VARIABLE) if u_term is None else u_term
    v_term = Var(CODE_VARIABLE) if v_term is None else v_term
    x = Var(AGENT_VARIABLE)
    if AGENT_VARIABLE in free_vars(u_term) or AGENT_VARIABLE in free_vars(v_term):
        raise DiagonalError(f"the agent variable {AGENT_VARIABLE} may not occur in the arguments")
    knows = And(atom("K2", x, u_term),
                atom("K2", x, app("dsbt", v_term, app("dgq", u_term), gq(Var(CK_VARIABLE)))))
    return Forall(AGENT_VARIABLE, Imp(atom("Ag", x), Imp(agent_predicate(A), knows)))


@dataclass(frozen=True)
class CKResult:
    group: object
    ck: object
    fixed: FixedPointResult
    cke: object
    cke_proof: Proof

    def at(self, term):
        """CK_A(term)"""
        return substitute(self.ck, CK_VARIABLE, term)

    def psi(self, term, group=None):
        """Psi_A(term, <CK_A>)"""
        return psi_formula(self.group if group is None else group, term, gq(self.ck))


def make_CK(A, aux: str = "z", registry=None) -> CKResult:
    """CK_A(y) with Base |- forall y in dL0 (CK_A(y) <-> Psi_A(y, <CK_A>))"""
    group = agent_predicate(A)
    fixed = fixed_point(psi_formula(group), CODE_VARIABLE, aux=aux, name="CK", registry=registry)
    ck = fixed.sentence
    y = CK_VARIABLE
    equivalence = iff(ck, psi_formula(group, Var(y), gq(ck)))
    cke = Forall(y, Imp(atom("dL0", Var(y)), equivalence))

    builder = ProofBuilder("Base", name="CKE", registry=registry)
    step = builder.comp(fixed.witness.body)
    step = builder.chain([step], Imp(atom("dL0", Var(y)), equivalence))
    builder.ug(step, y)
    return CKResult(group, ck, fixed, cke, builder.build())


# ==================== Self-referential systems ====================

SELF_SYMBOL = pr_symbol("SELF")


def _count_symbol(phi, symbol: str) -> int:
    return sum(1 for sub in subformulas(phi) if isinstance(sub, Atom) and sub.pred == symbol)


def _rename_predicate(phi, old: str, new: str):
    if isinstance(phi, Atom):
        return Atom(new if phi.pred == old else phi.pred, phi.args)
    if isinstance(phi, Not):
        return Not(_rename_predicate(phi.body, old, new))
    if isinstance(phi, BINARY_TYPES):
        return type(phi)(_rename_predicate(phi.left, old, new), _rename_predicate(phi.right, old, new))
    if isinstance(phi, QUANTIFIER_TYPES):
        return type(phi)(phi.var, _rename_predicate(phi.body, old, new))
    return phi


def make_self_ref_system(system, templates: Mapping[str, Union[str, object]]):
    """Add axioms whose Pr[SELF] hole names the system being defined"""
    axioms = dict(system.axioms)
    for name, template in templates.items():
        formula = parse_formula(template) if isinstance(template, str) else template
        holes = _count_symbol(formula, SELF_SYMBOL)
        if holes != 1:
            raise DiagonalError(f"axiom {name} has {holes} self-reference holes, expected exactly one")
        axioms[name] = _rename_predicate(formula, SELF_SYMBOL, pr_symbol(system.name))
    logger.debug(f"{system.name}: self-referential axioms {', '.join(templates)}")
    return replace(system, axioms=axioms)
