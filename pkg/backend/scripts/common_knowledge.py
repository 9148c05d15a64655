# scripts/common_knowledge.py - the defined common knowledge predicate CK_A in DCB
#
# Every Löb argument here has the same shape: assume Pr_DCB(<G>) for
#     G := forall y in dL0 (theta(y) -> theta'(f(y))),
# instantiate it internally, push the knowledge of the instance through
# R_DCB and UK^K to get Psi_A(y, <theta>) -> Psi_B(f(y), <theta'>), close
# with the two hypotheses and discharge by the Löb rule. loeb_ck builds
# that block; the scripts below only supply theta, theta', f and the
# hypothesis proofs.
import logging
from functools import reduce
from typing import Callable, List, Optional, Sequence

from errors import ScriptError, WorkbenchError
from deduction.builder import ProofBuilder
from deduction.kernel import instance_code, provable
from deduction.proof import Proof
from language.coding import code_of, decode, gq
from language.diagonal import AGENT_VARIABLE, CK_VARIABLE, CKResult, agent_predicate, make_CK, psi_formula
from language.parser import parse_formula
from language.syntax import And, Forall, Imp, Var, app, atom, eq, free_vars, iff, substitute, to_text
from scripts.base import ScriptResult, knowledge_closure, run_proofs, script

logger = logging.getLogger(__name__)

DCB = "DCB"
Y, X = CK_VARIABLE, AGENT_VARIABLE
y, x = Var(Y), Var(X)

DEFAULT_GROUP = "Ag(x)"
SUBGROUP = "Ag(x) & U(x)"


def _guard(term):
    return atom("dL0", term)


def _in_y(theta, what: str):
    if free_vars(theta) != frozenset({Y}):
        raise ScriptError(f"{what} must have exactly the free variable {Y}: {to_text(theta)}")


# ==================== Statement shapes ====================

def h1_formula(group, theta):
    """forall y in dL0 (theta(y) -> Psi_A(y, <theta>))"""
    return Forall(Y, Imp(_guard(y), Imp(theta, psi_formula(group, y, gq(theta)))))


def h2_formula(group, theta):
    """forall y in dL0 (Psi_A(y, <theta>) -> theta(y))"""
    return Forall(Y, Imp(_guard(y), Imp(psi_formula(group, y, gq(theta)), theta)))


def inclusion_formula(small, large):
    return Forall(X, Imp(agent_predicate(small), agent_predicate(large)))


def closure_formula(group, f):
    """forall y in dL0 forall x (B(x) -> (K2(x, y) -> K2(x, f(y))))"""
    body = Imp(agent_predicate(group), Imp(atom("K2", x, y), atom("K2", x, f)))
    return Forall(Y, Imp(_guard(y), Forall(X, body)))


def implied_goal(theta, theta_prime, f=None):
    target = theta_prime if f is None else substitute(theta_prime, Y, f)
    return Forall(Y, Imp(_guard(y), Imp(theta, target)))


def hypothesis_formula(ck: CKResult, sigma, c0):
    """sigma -> forall x in Ag (A(x) -> (K2(x, <c0>) & K2(x, <sigma>)))"""
    knows = And(atom("K2", x, gq(c0)), atom("K2", x, gq(sigma)))
    return Imp(sigma, Forall(X, Imp(atom("Ag", x), Imp(ck.group, knows))))


def dor_term(psi):
    return app("dor", y, gq(psi))


# ==================== The Löb block ====================

def _known_implication(b: ProofBuilder, ag: int, pr_step: int, p, q) -> List[int]:
    """K2(x, p -> q) by R_DCB from Pr(p -> q), with the UK^K instance that uses it"""
    known = b.apply(b.inst_guarded(b.ax("R_DCB"), [x, app("dimp", p, q)], facts=[ag]), pr_step)
    return [known, b.inst_guarded(b.ax("UK^K"), [x, p, q], facts=[ag])]


def loeb_ck(b: ProofBuilder, theta, theta_prime, group_a, group_b, h1: int, h2: int, f=None,
            h3: Optional[int] = None, h4: Optional[int] = None,
            definedness: Optional[Callable[[ProofBuilder, int], int]] = None) -> int:
    """forall y in dL0 (theta(y) -> theta'(f(y))) from closed steps h1..h4 of b"""
    _in_y(theta, "theta")
    _in_y(theta_prime, "theta'")
    fy = y if f is None else f
    goal = implied_goal(theta, theta_prime, f)

    assumption = b.hyp(provable(DCB, gq(goal)))
    hu = b.hyp(_guard(y))
    d_theta = instance_code(code_of(theta), y, Y)
    d_target = instance_code(code_of(substitute(theta_prime, Y, fy)), y, Y)
    d_prime = app("dsbt", gq(theta_prime), app("dgq", fy), gq(y))
    internal = b.inst_guarded(b.iui(DCB, assumption, Y), [y], facts=[hu])
    distributed = b.conv(internal, provable(DCB, app("dimp", d_theta, d_target)))

    ag = b.hyp(atom("Ag", x))
    premises = _known_implication(b, ag, distributed, d_theta, d_target)
    if f is not None:
        # the instance at y of theta'(f(y)) is theta' at f(y)
        evaluated = b.pr_eval(DCB, provable(DCB, app("dimp", d_target, d_prime)))
        premises += _known_implication(b, ag, evaluated, d_target, d_prime)

    hpsi = b.hyp(psi_formula(group_a, y, gq(theta)))
    premises.insert(0, b.inst_guarded(hpsi, [x], facts=[ag]))
    if h3 is not None:
        premises.append(b.inst(h3, x))
    if h4 is not None:
        premises.append(b.inst(b.inst_guarded(h4, [y], facts=[hu]), x))
    target = psi_formula(group_b, fy, gq(theta_prime))
    step = b.chain(premises, target.body.right)
    psi_step = b.ded(hpsi, b.ug(b.ded(ag, step), X))

    facts = [hu] if definedness is None else [hu, definedness(b, hu)]
    h1_y = b.inst_guarded(h1, [y], facts=[hu])
    h2_f = b.inst_guarded(h2, [fy], facts=facts)
    conclusion = b.chain([h1_y, psi_step, h2_f], goal.body.right)
    generalized = b.ug(b.ded(hu, conclusion), Y)
    return b.loeb(DCB, b.ded(assumption, generalized))


# ==================== Hypothesis proofs ====================

def ck_direction(ck: CKResult, forward: bool = True, registry=None) -> Proof:
    """H1 (CK_A -> Psi) or H2 (Psi -> CK_A) from the CKE theorem"""
    b = ProofBuilder(DCB, f"CKE {'forward' if forward else 'backward'}", registry)
    hu = b.hyp(_guard(y))
    equivalence = b.inst_guarded(b.lemma(ck.cke), [y], facts=[hu])
    psi = ck.psi(y)
    b.ug(b.ded(hu, b.chain([equivalence], Imp(ck.ck, psi) if forward else Imp(psi, ck.ck))), Y)
    return b.build()


def provability_h1(group, registry=None) -> Proof:
    """forall y in dL0 (Pr_DCB(y) -> Psi_A(y, <Pr_DCB(y)>)) from R_DCB and provable Sigma-1 completeness"""
    theta = provable(DCB, y)
    b = ProofBuilder(DCB, "Pr_DCB is self-aware", registry)
    hu = b.hyp(_guard(y))
    hp = b.hyp(theta)
    quoted = b.apply(b.pr_sigma(DCB, y, Y), hp)
    ag = b.hyp(atom("Ag", x))
    reflect = b.ax("R_DCB")
    knows = b.apply(b.inst_guarded(reflect, [x, y], facts=[ag, hu]), hp)
    knows_quoted = b.apply(b.inst_guarded(reflect, [x, instance_code(code_of(theta), y, Y)], facts=[ag]), quoted)
    step = b.chain([knows, knows_quoted], psi_formula(group, y, gq(theta)).body.right)
    b.ug(b.ded(hu, b.ded(hp, b.ug(b.ded(ag, step), X))), Y)
    return b.build()


def group_inclusion(small, large, registry=None) -> Proof:
    b = ProofBuilder(DCB, "group inclusion", registry)
    b.ug(b.taut(Imp(agent_predicate(small), agent_predicate(large))), X)
    return b.build()


def dor_defined(b: ProofBuilder, hu: int, psi) -> int:
    """dL0(dor(y, <psi>)) from dL0(y) by REP-or"""
    return b.inst_guarded(b.ax("REP-or"), [y, gq(psi)], facts=[hu])


def disjunction_closure(group, psi, registry=None) -> Proof:
    """Members of the group know y | psi whenever they know y"""
    fy = dor_term(psi)
    b = ProofBuilder(DCB, "knowledge of disjunctions", registry)
    hu = b.hyp(_guard(y))
    defined = dor_defined(b, hu, psi)
    implication_defined = b.inst_guarded(b.ax("REP-imp"), [y, fy], facts=[hu, defined])
    tautology = b.apply(b.pr_taut(DCB, Imp(_guard(y), provable(DCB, app("dimp", y, fy)))), hu)
    member = b.hyp(agent_predicate(group))
    ag = b.chain([member], atom("Ag", x))
    known = b.apply(b.inst_guarded(b.ax("R_DCB"), [x, app("dimp", y, fy)], facts=[ag, implication_defined]),
                    tautology)
    uk = b.inst_guarded(b.ax("UK^K"), [x, y, fy], facts=[ag, hu, defined])
    step = b.chain([known, uk], Imp(atom("K2", x, y), atom("K2", x, fy)))
    b.ug(b.ded(hu, b.ug(b.ded(member, step), X)), Y)
    return b.build()


def ck_hypothesis(ck: CKResult, parts: Sequence, c0, registry=None) -> Proof:
    """sigma -> forall x in Ag (A(x) -> (K2(x, <c0>) & K2(x, <sigma>))) for sigma the conjunction of CK_A(<part>)"""
    sigma = reduce(And, [ck.at(gq(p)) for p in parts])
    b = ProofBuilder(DCB, "knowledge of the common knowledge hypothesis", registry)
    hs = b.hyp(sigma)
    cke = b.lemma(ck.cke)
    ag = b.hyp(atom("Ag", x))
    member = b.hyp(ck.group)
    known, known_ck = [], []
    for part in parts:
        psi = b.chain([hs, b.inst_guarded(cke, [gq(part)])], ck.psi(gq(part)))
        line = b.inst_guarded(psi, [x], facts=[ag])
        both = b[line].right
        known.append(b.chain([member, line], both.left))
        known_ck.append(b.chain([member, line], both.right))
    k_c0 = knowledge_closure(b, x, ag, known, parts, c0)
    k_sigma = knowledge_closure(b, x, ag, known_ck, [ck.at(gq(p)) for p in parts], sigma)
    both = b.chain([k_c0, k_sigma], And(atom("K2", x, gq(c0)), atom("K2", x, gq(sigma))))
    b.ded(hs, b.ug(b.ded(ag, b.ded(member, both)), X))
    return b.build()


# ==================== ck_intro ====================

def ck_intro(ck: CKResult, hypothesis: Proof, registry=None) -> List[Proof]:
    """sigma -> CK_A(<c0>) from a proof of sigma -> forall x in Ag (A(x) -> (K2(x, <c0>) & K2(x, <sigma>)))"""
    claim = hypothesis.conclusion
    try:
        sigma = claim.left
        c0_code = claim.right.body.right.right.left.args[1]
        c0 = decode(c0_code.value)
    except (AttributeError, WorkbenchError):
        raise ScriptError("ck_intro needs sigma -> forall x in Ag (A(x) -> (K2(x, <c0>) & K2(x, <sigma>)))") from None
    if claim != hypothesis_formula(ck, sigma, c0):
        raise ScriptError("the hypothesis proof does not have the ck_intro shape for this group")
    theta = And(eq(c0_code, y), sigma)
    theta_c = substitute(theta, Y, c0_code)

    # H1 for theta(y) := c0 = y & sigma
    h = ProofBuilder(DCB, "ck_intro H1", registry)
    hu = h.hyp(_guard(y))
    ht = h.hyp(theta)
    everyone = h.apply(h.lemma(claim), h.chain([ht], sigma))
    ag = h.hyp(atom("Ag", x))
    line = h.inst_guarded(everyone, [x], facts=[ag])
    knows_sigma = h.hyp(atom("K2", x, gq(sigma)))
    closure = h.ded(knows_sigma, knowledge_closure(h, x, ag, [knows_sigma], [sigma], theta_c))
    d_c0 = app("dsbt", gq(theta), app("dgq", c0_code), gq(y))
    d_y = instance_code(code_of(theta), y, Y)
    leibniz = h.eq(Imp(eq(c0_code, y), Imp(atom("K2", x, c0_code), atom("K2", x, y))))
    leibniz_quoted = h.eq(Imp(eq(c0_code, y), Imp(atom("K2", x, d_c0), atom("K2", x, d_y))))
    step = h.chain([ht, line, closure, leibniz, leibniz_quoted], psi_formula(ck.group, y, gq(theta)).body.right,
                   rule="comp")
    h.ug(h.ded(hu, h.ded(ht, h.ug(h.ded(ag, step), X))), Y)
    h1_proof = h.build()

    b = ProofBuilder(DCB, f"ck_intro {to_text(c0)}", registry)
    g = loeb_ck(b, theta, ck.ck, ck.group, ck.group, b.lemma(h1_proof.conclusion), b.lemma(h2_formula(ck.group, ck.ck)))
    at_c0 = b.inst_guarded(g, [c0_code])
    b.chain([at_c0], Imp(sigma, ck.at(c0_code)), rule="comp")
    return [h1_proof, b.build()]


# ==================== Scripts ====================

def _group(A):
    return parse_formula(A) if isinstance(A, str) else A


@script("implied-ck", "DCB ⊢ ∀y∈dL0 (theta(y) → theta'(y)) from H1 and H2")
def script_implied_ck(A=DEFAULT_GROUP, theta=None, theta_prime=None, h1_proof: Optional[Proof] = None,
                      h2_proof: Optional[Proof] = None, registry=None, db=None) -> ScriptResult:
    """Default instance: CK_A implies its alpha-variant"""
    group = agent_predicate(_group(A))
    setup: List[Proof] = []
    if theta is None and theta_prime is None:
        ck, variant = make_CK(group, registry=registry), make_CK(group, aux="w", registry=registry)
        theta, theta_prime = ck.ck, variant.ck
        h1_proof, h2_proof = ck_direction(ck, True, registry), ck_direction(variant, False, registry)
        setup = [ck.cke_proof, variant.cke_proof]
    if h1_proof is None or h2_proof is None:
        raise ScriptError("implied_ck needs proofs of both hypotheses")
    if h1_proof.conclusion != h1_formula(group, theta) or h2_proof.conclusion != h2_formula(group, theta_prime):
        raise ScriptError("hypothesis proofs do not conclude H1 and H2 for this theta, theta' and group")
    b = ProofBuilder(DCB, "Implied_CK", registry)
    loeb_ck(b, theta, theta_prime, group, group, b.lemma(h1_proof.conclusion), b.lemma(h2_proof.conclusion))
    return run_proofs("implied-ck", "DCB ⊢ ∀y∈dL0 (theta(y) → theta'(y))",
                      [*setup, h1_proof, h2_proof, b.build()], registry=registry, db=db)


def _implied_both_ways(ck: CKResult, other: CKResult, registry=None) -> List[Proof]:
    proofs = []
    for first, second in ((ck, other), (other, ck)):
        h1, h2 = ck_direction(first, True, registry), ck_direction(second, False, registry)
        b = ProofBuilder(DCB, f"Implied_CK {'forward' if first is ck else 'backward'}", registry)
        loeb_ck(b, first.ck, second.ck, first.group, second.group, b.lemma(h1.conclusion), b.lemma(h2.conclusion))
        proofs += [h1, h2, b.build()]
    return proofs


@script("unique-ck", "DCB ⊢ ∀y∈dL0 (CK_A(y) ↔ CK'_A(y)) for any CK'_A satisfying CKE")
def script_unique_ck(A=DEFAULT_GROUP, other: Optional[CKResult] = None, registry=None, db=None) -> ScriptResult:
    group = agent_predicate(_group(A))
    ck = make_CK(group, registry=registry)
    other = other or make_CK(group, aux="w", registry=registry)
    if other.group != group:
        raise ScriptError("both predicates must be defined for the same group")
    proofs = [ck.cke_proof, other.cke_proof, *_implied_both_ways(ck, other, registry)]

    b = ProofBuilder(DCB, "Unique_CK", registry)
    hu = b.hyp(_guard(y))
    there = b.inst_guarded(b.lemma(proofs[-4].conclusion), [y], facts=[hu])
    back = b.inst_guarded(b.lemma(proofs[-1].conclusion), [y], facts=[hu])
    b.ug(b.ded(hu, b.chain([there, back], iff(ck.ck, other.ck))), Y)
    proofs.append(b.build())
    return run_proofs("unique-ck", "DCB ⊢ ∀y∈dL0 (CK_A(y) ↔ CK'_A(y))", proofs, registry=registry, db=db)


@script("conj-ck", "DCB ⊢ CK_A(<phi>) ∧ CK_A(<psi>) ↔ CK_A(<phi ∧ psi>)")
def script_conj_ck(A=DEFAULT_GROUP, phi="0 = 0", psi="S(0) = S(0)", registry=None, db=None) -> ScriptResult:
    phi, psi = _group(phi), _group(psi)
    ck = make_CK(_group(A), registry=registry)
    both = And(phi, psi)
    proofs = [ck.cke_proof, ck_direction(ck, False, registry)]
    conclusions = []
    for parts, c0 in (([phi, psi], both), ([both], phi), ([both], psi)):
        hypothesis = ck_hypothesis(ck, parts, c0, registry)
        proofs += [hypothesis, *ck_intro(ck, hypothesis, registry)]
        conclusions.append(proofs[-1].conclusion)

    b = ProofBuilder(DCB, "Conj_CK", registry)
    steps = [b.lemma(c) for c in conclusions]
    b.chain(steps, iff(And(ck.at(gq(phi)), ck.at(gq(psi))), ck.at(gq(both))))
    proofs.append(b.build())
    statement = f"DCB ⊢ CK_A(<{to_text(phi)}>) ∧ CK_A(<{to_text(psi)}>) ↔ CK_A(<{to_text(both)}>)"
    return run_proofs("conj-ck", statement, proofs, registry=registry, db=db)


def _general(theta_side: str, A, B, psi, registry=None) -> List[Proof]:
    group_a, group_b = agent_predicate(_group(A)), agent_predicate(_group(B))
    ck_b = make_CK(group_b, registry=registry)
    proofs = [ck_b.cke_proof]
    if theta_side == "provability":
        theta = provable(DCB, y)
        h1 = provability_h1(group_a, registry)
    else:
        ck_a = make_CK(group_a, aux="w", registry=registry)
        theta = ck_a.ck
        proofs.append(ck_a.cke_proof)
        h1 = ck_direction(ck_a, True, registry)
    h2 = ck_direction(ck_b, False, registry)
    h3 = group_inclusion(group_b, group_a, registry)
    h4 = disjunction_closure(group_b, psi, registry)
    proofs += [h1, h2, h3, h4]

    b = ProofBuilder(DCB, "General_CK" if theta_side == "provability" else "Monotone_CK", registry)
    loeb_ck(b, theta, ck_b.ck, group_a, group_b,
            b.lemma(h1.conclusion), b.lemma(h2.conclusion), f=dor_term(psi),
            h3=b.lemma(h3.conclusion), h4=b.lemma(h4.conclusion),
            definedness=lambda builder, hu: dor_defined(builder, hu, psi))
    proofs.append(b.build())
    return proofs


@script("general-ck", "DCB ⊢ ∀y∈dL0 (Pr_DCB(y) → CK_B(y ∨̇ <psi>)) for B ⊆ A")
def script_general_ck(A=DEFAULT_GROUP, B=SUBGROUP, psi="S(0) = S(0)", registry=None, db=None) -> ScriptResult:
    proofs = _general("provability", A, B, _group(psi), registry)
    return run_proofs("general-ck", "DCB ⊢ ∀y∈dL0 (Pr_DCB(y) → CK_B(f(y))), f(y) = y ∨̇ <psi>",
                      proofs, registry=registry, db=db)


@script("monotone-ck", "DCB ⊢ ∀y∈dL0 (CK_A(y) → CK_B(y ∨̇ <psi>)) for B ⊆ A")
def script_monotone_ck(A=DEFAULT_GROUP, B=SUBGROUP, psi="S(0) = S(0)", registry=None, db=None) -> ScriptResult:
    proofs = _general("common knowledge", A, B, _group(psi), registry)
    return run_proofs("monotone-ck", "DCB ⊢ ∀y∈dL0 (CK_A(y) → CK_B(f(y))), f(y) = y ∨̇ <psi>",
                      proofs, registry=registry, db=db)


def _provability_implies_ck(ck: CKResult, registry=None) -> List[Proof]:
    h1, h2 = provability_h1(ck.group, registry), ck_direction(ck, False, registry)
    b = ProofBuilder(DCB, "CK_main (b)", registry)
    loeb_ck(b, provable(DCB, y), ck.ck, ck.group, ck.group, b.lemma(h1.conclusion), b.lemma(h2.conclusion))
    return [ck.cke_proof, h1, h2, b.build()]


@script("ck-main-a", "DCB ⊢ CK_A(<phi>) ∧ CK_A(<phi → psi>) → CK_A(<psi>)")
def script_ck_main_a(A=DEFAULT_GROUP, phi="0 = 0", psi="S(0) = S(0)", registry=None, db=None) -> ScriptResult:
    phi, psi = _group(phi), _group(psi)
    ck = make_CK(_group(A), registry=registry)
    hypothesis = ck_hypothesis(ck, [phi, Imp(phi, psi)], psi, registry)
    proofs = [ck.cke_proof, ck_direction(ck, False, registry), hypothesis, *ck_intro(ck, hypothesis, registry)]
    return run_proofs("ck-main-a", f"DCB ⊢ CK_A(<{to_text(phi)}>) ∧ CK_A(<{to_text(Imp(phi, psi))}>) → "
                                   f"CK_A(<{to_text(psi)}>)", proofs, registry=registry, db=db)


@script("ck-main-b", "DCB ⊢ ∀y∈dL0 (Pr_DCB(y) → CK_A(y))")
def script_ck_main_b(A=DEFAULT_GROUP, registry=None, db=None) -> ScriptResult:
    ck = make_CK(_group(A), registry=registry)
    return run_proofs("ck-main-b", "DCB ⊢ ∀y∈dL0 (Pr_DCB(y) → CK_A(y))",
                      _provability_implies_ck(ck, registry), registry=registry, db=db)


@script("ck-main-c", "DCB ⊢ phi ⟹ DCB ⊢ CK_A(<phi>)")
def script_ck_main_c(A=DEFAULT_GROUP, theorem: Optional[Proof] = None, registry=None, db=None) -> ScriptResult:
    ck = make_CK(_group(A), registry=registry)
    if theorem is None:
        t = ProofBuilder(DCB, "0 = 0", registry)
        t.eq(parse_formula("0 = 0"))
        theorem = t.build()
    if theorem.system != DCB:
        raise ScriptError(f"CK_main (c) starts from a DCB proof, got a {theorem.system} proof")
    proofs = [theorem, *_provability_implies_ck(ck, registry)]
    phi = theorem.conclusion

    b = ProofBuilder(DCB, "CK_main (c)", registry)
    provable_phi = b.d1_db(DCB, phi)
    b.apply(b.inst_guarded(b.lemma(proofs[-1].conclusion), [gq(phi)]), provable_phi)
    proofs.append(b.build())
    return run_proofs("ck-main-c", f"DCB ⊢ CK_A(<{to_text(phi)}>)", proofs, registry=registry, db=db)
