# deduction/kernel.py - the proof checker
#
# check_proof never raises on a bad proof: it returns a Verdict naming the
# first step that does not justify. Accepted conclusions enter the TheoremDB.
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional

from errors import CaptureError, ProofRejected, RegistryError, SchemaError, WorkbenchError
from deduction.computation import normalize, normalize_term
from deduction.proof import Proof
from deduction.systems import SystemDef, SystemRegistry, default_registry, instantiate
from deduction.tautology import is_tautology
from language.coding import code_of, gq, try_decode
from language.syntax import (
    And, App, Atom, Exists, Forall, Imp, Not, Num, Or, Var,
    BINARY_TYPES, DOTTED_RELATIONS, QUANTIFIER_TYPES,
    app, atom, free_vars, is_sentence, pr_symbol, substitute, symbols,
)
from theorem_db import TheoremDB

logger = logging.getLogger(__name__)


class _Reject(Exception):
    pass


@dataclass
class Verdict:
    accepted: bool
    system: str
    conclusion: object = None
    failed_step: Optional[int] = None
    reason: str = ""
    stats: Dict[str, int] = field(default_factory=dict)
    necessitations: int = 0

    def __bool__(self):
        return self.accepted

    def describe(self) -> str:
        if self.accepted:
            return f"accepted in {self.system}"
        where = f" at step {self.failed_step}" if self.failed_step is not None else ""
        return f"rejected in {self.system}{where}: {self.reason}"


# ==================== Formula builders shared with the rule API ====================

def provable(system: str, code_term):
    return atom(pr_symbol(system), code_term)


def knowledge_for_all(phi, var: str = "a"):
    """forall var (Ag(var) -> K2(var, <phi>))"""
    return Forall(var, Imp(atom("Ag", Var(var)), atom("K2", Var(var), gq(phi))))


def d2_formula(system: str, antecedent, consequent):
    """Pr(<a -> b>) -> (Pr(<a>) -> Pr(<b>)) over code terms"""
    return Imp(provable(system, app("dimp", antecedent, consequent)),
               Imp(provable(system, antecedent), provable(system, consequent)))


def instance_code(body_code: int, code_term, variable: str):
    return app("dsbt", Num(body_code), app("dgq", code_term), gq(Var(variable)))


_DECIDABLE_GUARDS = frozenset(name for name, arity in DOTTED_RELATIONS.items() if arity == 1)


def internal_ui_formulas(system: str, quantified, variable: str) -> List:
    """Conclusions of internal instantiation from Pr(<forall y phi>), restricted form first"""
    if not (isinstance(quantified, Forall) and is_sentence(quantified)):
        raise SchemaError("internal instantiation needs the code of a universal sentence")
    y, body = quantified.var, quantified.body
    results = []
    if (isinstance(body, Imp) and isinstance(body.left, Atom) and body.left.pred in _DECIDABLE_GUARDS
            and body.left.args == (Var(y),)):
        results.append(Forall(variable, Imp(atom(body.left.pred, Var(variable)),
                                            provable(system, instance_code(code_of(body.right), Var(variable), y)))))
    results.append(Forall(variable, provable(system, instance_code(code_of(body), Var(variable), y))))
    return results


def pr_sigma_formula(system: str, code_term, variable: str = "w"):
    """Pr(t) -> Pr(dsbt(<Pr(w)>, dgq(t), <w>))"""
    quoted = atom(pr_symbol(system), Var(variable))
    return Imp(provable(system, code_term),
               provable(system, app("dsbt", gq(quoted), app("dgq", code_term), gq(Var(variable)))))


# ==================== Matching ====================

def instance_term(pattern, target, var: str):
    """A term t with pattern[t/var] == target, or None"""
    found: Dict[str, object] = {}

    def walk(p, t, bound: FrozenSet[str]) -> bool:
        if isinstance(p, Var) and p.name == var and var not in bound:
            if "t" in found:
                return found["t"] == t
            found["t"] = t
            return True
        if isinstance(p, App) and p.symbol == "S" and isinstance(t, Num):
            return t.value > 0 and walk(p.args[0], Num(t.value - 1), bound)
        if type(p) is not type(t):
            return False
        if isinstance(p, (Var, Num)):
            return p == t
        if isinstance(p, App):
            return p.symbol == t.symbol and all(walk(a, b, bound) for a, b in zip(p.args, t.args))
        if isinstance(p, Atom):
            return p.pred == t.pred and all(walk(a, b, bound) for a, b in zip(p.args, t.args))
        if isinstance(p, Not):
            return walk(p.body, t.body, bound)
        if isinstance(p, BINARY_TYPES):
            return walk(p.left, t.left, bound) and walk(p.right, t.right, bound)
        if isinstance(p, QUANTIFIER_TYPES):
            return p.var == t.var and walk(p.body, t.body, bound | {p.var})
        return False

    if not walk(pattern, target, frozenset()):
        return None
    term = found.get("t", Var(var))
    try:
        return term if substitute(pattern, var, term) == target else None
    except CaptureError:
        return None


def _replaces_some(a, b, s, t) -> bool:
    if a == b:
        return True
    if a == s and b == t:
        return True
    if isinstance(a, App) and isinstance(b, App) and a.symbol == b.symbol:
        return all(_replaces_some(x, y, s, t) for x, y in zip(a.args, b.args))
    return False


def _quantifier_axiom(phi) -> Optional[str]:
    """None when phi is an instance of Q1-Q4, else the reason"""
    if not isinstance(phi, Imp):
        return "quantifier axioms are implications"
    left, right = phi.left, phi.right
    if isinstance(left, Forall) and instance_term(left.body, right, left.var) is not None:
        return None
    if isinstance(right, Exists) and instance_term(right.body, left, right.var) is not None:
        return None
    if isinstance(left, Forall) and isinstance(left.body, Imp) and isinstance(right, Imp):
        x, inner = left.var, left.body
        if (isinstance(right.right, Forall) and right.right.var == x and inner.left == right.left
                and inner.right == right.right.body and x not in free_vars(inner.left)):
            return None
        if (isinstance(right.left, Exists) and right.left.var == x and inner.left == right.left.body
                and inner.right == right.right and x not in free_vars(inner.right)):
            return None
    return "not an instance of Q1-Q4"


def _equality_axiom(phi) -> Optional[str]:
    if isinstance(phi, Atom) and phi.pred == "=" and phi.args[0] == phi.args[1]:
        return None
    if (isinstance(phi, Imp) and isinstance(phi.left, Atom) and phi.left.pred == "="
            and isinstance(phi.right, Imp)):
        s, t = phi.left.args
        a, b = phi.right.left, phi.right.right
        if (isinstance(a, Atom) and isinstance(b, Atom) and a.pred == b.pred
                and all(_replaces_some(x, y, s, t) for x, y in zip(a.args, b.args))):
            return None
    return "not an instance of E1 or E2"


def _provability(phi, system: str):
    """The argument of a Pr[system] atom, or None"""
    if isinstance(phi, Atom) and phi.pred == pr_symbol(system):
        return phi.args[0]
    return None


def _quoted_sentence(t):
    if isinstance(t, Num):
        x = try_decode(t.value)
        if is_sentence(x):
            return x
    return None


def _evaluation_instance(system: str, phi) -> Optional[str]:
    """Pr(dsbt(<chi(g(y))>, dgq(U), <y>) -> dsbt(<chi(z)>, dgq(g(U)), <z>))"""
    target = _provability(phi, system)
    if not (isinstance(target, App) and target.symbol == "dimp"):
        return "expected Pr(dimp(dsbt(..), dsbt(..)))"
    left, right = target.args
    for side in (left, right):
        if not (isinstance(side, App) and side.symbol == "dsbt" and isinstance(side.args[0], Num)
                and isinstance(side.args[2], Num) and isinstance(side.args[1], App) and side.args[1].symbol == "dgq"):
            return "both sides must be dsbt(<formula>, dgq(term), <variable>)"
    applied, y = try_decode(left.args[0].value), try_decode(left.args[2].value)
    template, z = try_decode(right.args[0].value), try_decode(right.args[2].value)
    if not (isinstance(y, Var) and isinstance(z, Var)) or applied is None or template is None:
        return "quoted parts do not decode"
    if not (free_vars(applied) <= {y.name} and free_vars(template) <= {z.name}):
        return "quoted formulas must be open in the substituted variable only"
    argument, value = left.args[1].args[0], right.args[1].args[0]
    function = instance_term(template, applied, z.name)
    if function is None:
        return "left side is not the template applied to a term"
    if not free_vars(function) <= {y.name} or "u" in symbols(function):
        return "the applied term must be built from arithmetic and dotted symbols over one variable"
    if substitute(function, y.name, argument) != value:
        return "right side does not evaluate the applied term at the instantiated code"
    return None


def _tautology_closure(system: str, phi) -> Optional[str]:
    guards = []
    while isinstance(phi, Imp) and isinstance(phi.left, Atom) and phi.left.pred == "dL0":
        guards.append(normalize_term(phi.left.args[0]))
        phi = phi.right
    target = _provability(phi, system)
    if target is None:
        return "expected dL0 guards followed by a Pr atom"
    letters: Dict[object, Atom] = {}

    def skeleton(t):
        if isinstance(t, App) and t.symbol in ("dneg", "dimp", "dand", "dor"):
            parts = [skeleton(a) for a in t.args]
            if any(p is None for p in parts):
                return None
            kind = {"dneg": Not, "dimp": Imp, "dand": And, "dor": Or}[t.symbol]
            return kind(*parts)
        if t in guards or _quoted_sentence(t) is not None:
            if t not in letters:
                letters[t] = atom("U", Num(len(letters)))
            return letters[t]
        return None

    shape = skeleton(normalize_term(target))
    if shape is None:
        return "a leaf is neither a guarded code nor a sentence code"
    if not is_tautology(shape):
        return "the coded skeleton is not a tautology"
    return None


# ==================== Checker ====================

class _Checker:
    def __init__(self, proof: Proof, system: SystemDef, registry: SystemRegistry, db: TheoremDB):
        self.proof = proof
        self.system = system
        self.registry = registry
        self.db = db
        self.formulas: List = [None]
        self.deps: List[FrozenSet[int]] = [frozenset()]
        self.necessitations = 0

    # -- helpers --

    def premise(self, ref, current: int):
        if not isinstance(ref, int) or not 1 <= ref < current:
            raise _Reject(f"reference {ref} does not point to an earlier step")
        return self.formulas[ref]

    def closed_premise(self, ref, current: int):
        formula = self.premise(ref, current)
        if self.deps[ref]:
            raise _Reject(f"step {ref} depends on hypotheses {sorted(self.deps[ref])}")
        return formula

    def require_rule(self, rule: str):
        if not self.system.has_rule(rule):
            raise _Reject(f"rule {rule} is not available in {self.system.name}")

    def other_system(self, name) -> SystemDef:
        if not isinstance(name, str):
            raise _Reject("expected a system name")
        try:
            return self.registry.get(name)
        except RegistryError as e:
            raise _Reject(str(e)) from None

    def count_necessitation(self, uses: int = 1):
        self.necessitations += uses
        budget = self.system.budget
        if budget is not None and self.necessitations > budget:
            raise _Reject(f"budget of {budget} NEC_T/CONEC_T application(s) exceeded")

    def charge_citation(self, formula, sources):
        """A cited theorem brings its NEC_T/CONEC_T uses into a budgeted proof"""
        if self.system.budget is None:
            return
        uses = self.db.necessitations(formula, sources) or 0
        if uses:
            self.count_necessitation(uses)

    @staticmethod
    def expect(condition: bool, reason: str):
        if not condition:
            raise _Reject(reason)

    # -- rules --

    def check(self, index: int, formula, just) -> FrozenSet[int]:
        handler = getattr(self, f"rule_{just.rule}", None)
        if handler is None:
            raise _Reject(f"unknown justification {just.rule!r}")
        return handler(index, formula, just)

    def rule_hyp(self, index, formula, just):
        return frozenset({index})

    def rule_ded(self, index, formula, just):
        self.expect(len(just.refs) == 2, "ded takes a hypothesis and a step")
        h, i = just.refs
        hypothesis = self.premise(h, index)
        self.expect(self.proof.step(h).justification.rule == "hyp", f"step {h} is not a hypothesis")
        self.expect(formula == Imp(hypothesis, self.premise(i, index)), "formula is not hypothesis -> step")
        return self.deps[i] - {h}

    def rule_ax(self, index, formula, just):
        names = just.words()
        self.expect(len(names) == 1, "ax takes one axiom name")
        self.expect(names[0] in self.system.axioms, f"{self.system.name} has no axiom {names[0]}")
        self.expect(self.system.axioms[names[0]] == formula, f"formula differs from axiom {names[0]}")
        return frozenset()

    def rule_schema(self, index, formula, just):
        self.expect(bool(just.args) and isinstance(just.args[0], str), "schema needs an id")
        instance = instantiate(self.system, just.args[0], *just.args[1:])
        self.expect(instance == formula, f"formula is not the {just.args[0]} instance")
        return frozenset()

    def rule_lemma(self, index, formula, just):
        sources = [self.system.name, *self.system.ancestors]
        self.expect(self.db.holds(formula, sources), f"not a recorded theorem of {self.system.name}")
        self.charge_citation(formula, sources)
        return frozenset()

    def rule_taut(self, index, formula, just):
        self.expect(is_tautology(formula), "not a tautology")
        return frozenset()

    def rule_comp(self, index, formula, just):
        self.expect(is_tautology(normalize(formula)), "not a tautology after computation")
        return frozenset()

    def rule_qax(self, index, formula, just):
        reason = _quantifier_axiom(formula)
        self.expect(reason is None, reason or "")
        return frozenset()

    def rule_eq(self, index, formula, just):
        reason = _equality_axiom(formula)
        self.expect(reason is None, reason or "")
        return frozenset()

    def rule_mp(self, index, formula, just):
        self.expect(len(just.refs) == 2, "mp takes two steps")
        i, j = just.refs
        antecedent, implication = self.premise(i, index), self.premise(j, index)
        self.expect(implication == Imp(antecedent, formula), f"step {j} is not step {i} -> formula")
        return self.deps[i] | self.deps[j]

    def rule_ug(self, index, formula, just):
        self.expect(len(just.refs) == 1 and len(just.words()) == 1, "ug takes a step and a variable")
        i, var = just.refs[0], just.words()[0]
        self.expect(formula == Forall(var, self.premise(i, index)), f"formula is not forall {var} of step {i}")
        for h in self.deps[i]:
            self.expect(var not in free_vars(self.formulas[h]), f"{var} is free in hypothesis {h}")
        return self.deps[i]

    def rule_nec_t(self, index, formula, just):
        self.require_rule("NEC_T")
        phi = self.closed_premise(just.refs[0] if just.refs else None, index)
        self.expect(is_sentence(phi), "NEC_T applies to sentences")
        self.expect(formula == atom("T", gq(phi)), "formula is not T(<step>)")
        self.count_necessitation()
        return frozenset()

    def rule_conec_t(self, index, formula, just):
        self.require_rule("CONEC_T")
        premise = self.closed_premise(just.refs[0] if just.refs else None, index)
        self.expect(is_sentence(formula) and premise == atom("T", gq(formula)), "step is not T(<formula>)")
        self.count_necessitation()
        return frozenset()

    def _known_by_all(self, formula, phi):
        if self.system.collective_knowledge:
            self.expect(formula == atom("K1", gq(phi)), "formula is not K1(<step>)")
        else:
            self.expect(isinstance(formula, Forall) and formula == knowledge_for_all(phi, formula.var),
                        "formula is not forall a in Ag K2(a, <step>)")

    def rule_nec_k(self, index, formula, just):
        self.require_rule("NEC_K")
        phi = self.closed_premise(just.refs[0] if just.refs else None, index)
        self.expect(is_sentence(phi), "NEC_K applies to sentences")
        self._known_by_all(formula, phi)
        return frozenset()

    def rule_t_over_k(self, index, formula, just):
        self.require_rule("T_OVER_K")
        premise = self.closed_premise(just.refs[0] if just.refs else None, index)
        phi = _quoted_sentence(premise.args[0]) if isinstance(premise, Atom) and premise.pred == "T" else None
        self.expect(phi is not None, "T/K needs a step T(<sentence>)")
        self._known_by_all(formula, phi)
        return frozenset()

    def rule_d1(self, index, formula, just):
        words = just.words()
        self.expect(len(words) >= 1, "d1 needs a system")
        target = self.other_system(words[0])
        phi = _quoted_sentence(_provability(formula, target.name))
        self.expect(phi is not None, f"formula is not Pr[{target.name}](<sentence>)")
        if len(words) == 2 and words[1] == "db":
            self.expect(self.db.holds(phi, [target.name, *target.ancestors]),
                        f"no recorded {target.name} proof of the quoted sentence")
            self.charge_citation(phi, [target.name, *target.ancestors])
            return frozenset()
        self.expect(len(just.refs) == 1, "d1 takes a step or 'db'")
        self.expect(target.extends(self.system.name),
                    f"theorems of {self.system.name} are not known to be theorems of {target.name}")
        self.expect(self.closed_premise(just.refs[0], index) == phi, "quoted sentence differs from the step")
        return frozenset()

    def rule_d2(self, index, formula, just):
        target = self.other_system(just.words()[0] if just.words() else None)
        ok = (isinstance(formula, Imp) and isinstance(formula.right, Imp)
              and _provability(formula.left, target.name) is not None
              and _provability(formula.right.left, target.name) is not None
              and _provability(formula.right.right, target.name) is not None)
        self.expect(ok, "expected Pr(t1) -> (Pr(t2) -> Pr(t3))")
        t1 = _provability(formula.left, target.name)
        t2 = _provability(formula.right.left, target.name)
        t3 = _provability(formula.right.right, target.name)
        self.expect(normalize_term(t1) == normalize_term(app("dimp", t2, t3)), "t1 is not dimp(t2, t3)")
        return frozenset()

    def rule_iui(self, index, formula, just):
        words = just.words()
        self.expect(len(words) == 2 and len(just.refs) == 1, "iui takes a system, a step and a variable")
        target = self.other_system(words[0])
        quoted = _quoted_sentence(_provability(self.premise(just.refs[0], index), target.name))
        self.expect(isinstance(quoted, Forall), f"step {just.refs[0]} is not Pr(<forall y phi>)")
        self.expect(formula in internal_ui_formulas(target.name, quoted, words[1]),
                    "formula is not the internal instance")
        return self.deps[just.refs[0]]

    def rule_pr_sigma(self, index, formula, just):
        target = self.other_system(just.words()[0] if just.words() else None)
        ok = isinstance(formula, Imp) and _provability(formula.left, target.name) is not None
        self.expect(ok, "expected Pr(t) -> Pr(dsbt(<Pr(w)>, dgq(t), <w>))")
        quoted = _provability(formula.right, target.name)
        variable = None
        if isinstance(quoted, App) and quoted.symbol == "dsbt" and isinstance(quoted.args[2], Num):
            variable = try_decode(quoted.args[2].value)
        self.expect(isinstance(variable, Var), "the substituted variable is not quoted")
        self.expect(formula == pr_sigma_formula(target.name, formula.left.args[0], variable.name),
                    "not a provable-Sigma-1 completeness instance")
        return frozenset()

    def rule_pr_eval(self, index, formula, just):
        target = self.other_system(just.words()[0] if just.words() else None)
        reason = _evaluation_instance(target.name, formula)
        self.expect(reason is None, reason or "")
        return frozenset()

    def rule_pr_taut(self, index, formula, just):
        target = self.other_system(just.words()[0] if just.words() else None)
        reason = _tautology_closure(target.name, formula)
        self.expect(reason is None, reason or "")
        return frozenset()

    def rule_loeb(self, index, formula, just):
        words = just.words()
        self.expect(len(words) == 1 and len(just.refs) == 1, "loeb takes a system and a step")
        self.expect(words[0] == self.system.name, f"Löb for {words[0]} used in a {self.system.name} proof")
        premise = self.closed_premise(just.refs[0], index)
        self.expect(is_sentence(formula) and premise == Imp(provable(words[0], gq(formula)), formula),
                    f"step {just.refs[0]} is not Pr(<formula>) -> formula")
        return frozenset()


def check_proof(proof: Proof, registry: Optional[SystemRegistry] = None,
                db: Optional[TheoremDB] = None, record: bool = True) -> Verdict:
    registry = registry or default_registry()
    db = db or TheoremDB()
    stats = proof.rule_counts()
    try:
        system = registry.get(proof.system)
    except RegistryError as e:
        return Verdict(False, proof.system, reason=str(e), stats=stats)

    checker = _Checker(proof, system, registry, db)
    for position, step in enumerate(proof.steps, start=1):
        try:
            if step.index != position:
                raise _Reject(f"step numbered {step.index} at position {position}")
            deps = checker.check(position, step.formula, step.justification)
        except _Reject as e:
            logger.debug(f"❌ {proof.name or 'proof'} step {position}: {e}")
            return Verdict(False, system.name, step.formula, position, str(e), stats, checker.necessitations)
        except WorkbenchError as e:
            return Verdict(False, system.name, step.formula, position, str(e), stats, checker.necessitations)
        checker.formulas.append(step.formula)
        checker.deps.append(deps)
        logger.debug(f"step {position} ok ({step.justification.rule}), depends on {sorted(deps)}")

    if not proof.steps:
        return Verdict(False, system.name, reason="empty proof", stats=stats)
    last = len(proof.steps)
    if checker.deps[last]:
        return Verdict(False, system.name, proof.conclusion, last,
                       f"conclusion depends on hypotheses {sorted(checker.deps[last])}", stats,
                       checker.necessitations)
    if record:
        db.add(system.name, proof.conclusion, proof, checker.necessitations)
    logger.debug(f"✅ {proof.name or 'proof'} accepted in {system.name} ({last} steps)")
    return Verdict(True, system.name, proof.conclusion, None, "", stats, checker.necessitations)


# ==================== Rule API ====================

def _accepted(proof: Proof, registry, db) -> Verdict:
    verdict = check_proof(proof, registry, db)
    if not verdict.accepted:
        raise ProofRejected(f"proof not accepted: {verdict.describe()}", verdict)
    return verdict


def rule_D1(system: str, proof: Proof, registry: Optional[SystemRegistry] = None, db: Optional[TheoremDB] = None):
    """Pr_S(<phi>) from an accepted proof of phi; recorded as a Base theorem"""
    registry = registry or default_registry()
    db = db or TheoremDB()
    target = registry.get(system)
    if not target.extends(proof.system):
        raise ProofRejected(f"a {proof.system} proof does not yield {system}-provability")
    verdict = _accepted(proof, registry, db)
    theorem = provable(system, gq(verdict.conclusion))
    db.add("Base", theorem)
    return theorem


def rule_D2_instance(system: str, phi, psi):
    if not (is_sentence(phi) and is_sentence(psi)):
        raise SchemaError("D2 instances are formed from sentences")
    return d2_formula(system, gq(phi), gq(psi))


def rule_internal_UI(system: str, premise, variable: str = "v"):
    quoted = _quoted_sentence(_provability(premise, system))
    if not isinstance(quoted, Forall):
        raise SchemaError(f"expected Pr[{system}](<forall y phi>)")
    return internal_ui_formulas(system, quoted, variable)[0]


def rule_pr_sigma(system: str, code_term, variable: str = "w"):
    return pr_sigma_formula(system, code_term, variable)


def rule_loeb(system: str, proof: Proof, registry: Optional[SystemRegistry] = None, db: Optional[TheoremDB] = None):
    """phi from an accepted proof of Pr_S(<phi>) -> phi in S"""
    registry = registry or default_registry()
    db = db or TheoremDB()
    if proof.system != system:
        raise ProofRejected(f"Löb for {system} needs a {system} proof, got {proof.system}")
    if not registry.get(system).extends("Base"):
        raise ProofRejected(f"{system} does not extend Base")
    verdict = _accepted(proof, registry, db)
    conclusion = verdict.conclusion
    if not (isinstance(conclusion, Imp) and is_sentence(conclusion.right)
            and conclusion.left == provable(system, gq(conclusion.right))):
        raise ProofRejected("the proof does not conclude Pr(<phi>) -> phi")
    db.add(system, conclusion.right, necessitations=verdict.necessitations)
    return conclusion.right
