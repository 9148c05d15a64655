# deduction/builder.py - incremental construction of proofs
#
# ProofBuilder appends steps and returns their indices. The primitive
# methods mirror the justifications one to one; the tactics below them
# (inst, apply, conv, chain) expand into several primitive steps.
import logging
from typing import Iterable, List, Optional, Sequence

from errors import ScriptError
from deduction.computation import normalize
from deduction.kernel import d2_formula, internal_ui_formulas, knowledge_for_all, pr_sigma_formula, provable
from deduction.proof import Justification, Proof, Step
from deduction.systems import SystemRegistry, default_registry, instantiate
from language.coding import decode, gq
from language.syntax import DOTTED_RELATIONS, TOP, Atom, Forall, Imp, atom, implication_chain, substitute, to_text

logger = logging.getLogger(__name__)

_GUARDS = frozenset({"Ag", *(name for name, arity in DOTTED_RELATIONS.items() if arity == 1)})


class ProofBuilder:
    def __init__(self, system: str, name: str = "", registry: Optional[SystemRegistry] = None):
        self.system = system
        self.name = name
        self.registry = registry or default_registry()
        self.steps: List[Step] = []

    def __len__(self):
        return len(self.steps)

    def __getitem__(self, index: int):
        return self.steps[index - 1].formula

    @property
    def last(self) -> int:
        return len(self.steps)

    def add(self, formula, rule: str, *args) -> int:
        index = len(self.steps) + 1
        self.steps.append(Step(index, formula, Justification(rule, tuple(args))))
        return index

    def build(self) -> Proof:
        return Proof(self.system, list(self.steps), self.name)

    # ==================== Primitive steps ====================

    def hyp(self, phi) -> int:
        return self.add(phi, "hyp")

    def ded(self, h: int, i: int) -> int:
        return self.add(Imp(self[h], self[i]), "ded", h, i)

    def ax(self, name: str) -> int:
        return self.add(self.registry.get(self.system).axiom(name), "ax", name)

    def schema(self, schema_id: str, *params) -> int:
        return self.add(instantiate(self.registry.get(self.system), schema_id, *params), "schema", schema_id, *params)

    def lemma(self, phi) -> int:
        return self.add(phi, "lemma")

    def taut(self, phi) -> int:
        return self.add(phi, "taut")

    def comp(self, phi) -> int:
        return self.add(phi, "comp")

    def qax(self, phi) -> int:
        return self.add(phi, "qax")

    def eq(self, phi) -> int:
        return self.add(phi, "eq")

    def mp(self, i: int, j: int) -> int:
        implication = self[j]
        if not (isinstance(implication, Imp) and implication.left == self[i]):
            raise ScriptError(f"{self.name}: step {j} is not an implication from step {i}")
        return self.add(implication.right, "mp", i, j)

    def ug(self, i: int, var: str) -> int:
        return self.add(Forall(var, self[i]), "ug", i, var)

    def nec_t(self, i: int) -> int:
        return self.add(atom("T", gq(self[i])), "nec_t", i)

    def conec_t(self, i: int, phi) -> int:
        return self.add(phi, "conec_t", i)

    def nec_k(self, i: int, var: str = "a") -> int:
        if self.registry.get(self.system).collective_knowledge:
            return self.add(atom("K1", gq(self[i])), "nec_k", i)
        return self.add(knowledge_for_all(self[i], var), "nec_k", i)

    def t_over_k(self, i: int, phi, var: str = "a") -> int:
        return self.add(knowledge_for_all(phi, var), "t_over_k", i)

    def d1(self, system: str, i: int) -> int:
        return self.add(provable(system, gq(self[i])), "d1", system, i)

    def d1_db(self, system: str, phi) -> int:
        return self.add(provable(system, gq(phi)), "d1", system, "db")

    def d2(self, system: str, antecedent, consequent) -> int:
        return self.add(d2_formula(system, antecedent, consequent), "d2", system)

    def iui(self, system: str, i: int, var: str) -> int:
        quoted = decode(self[i].args[0].value)
        return self.add(internal_ui_formulas(system, quoted, var)[0], "iui", system, i, var)

    def pr_sigma(self, system: str, code_term, var: str = "w") -> int:
        return self.add(pr_sigma_formula(system, code_term, var), "pr_sigma", system)

    def pr_eval(self, system: str, phi) -> int:
        return self.add(phi, "pr_eval", system)

    def pr_taut(self, system: str, phi) -> int:
        return self.add(phi, "pr_taut", system)

    def loeb(self, system: str, i: int) -> int:
        return self.add(self[i].right, "loeb", system, i)

    # ==================== Tactics ====================

    def inst(self, i: int, *terms) -> int:
        """Instantiate leading universal quantifiers of step i"""
        for term in terms:
            quantified = self[i]
            if not isinstance(quantified, Forall):
                raise ScriptError(f"{self.name}: step {i} is not universal: {to_text(quantified)}")
            instance = substitute(quantified.body, quantified.var, term)
            i = self.mp(i, self.qax(Imp(quantified, instance)))
        return i

    def apply(self, i: int, *premises: int) -> int:
        """Detach the premises of step i in order"""
        for premise in premises:
            i = self.mp(premise, i)
        return i

    def use(self, i: int, term, *premises: int) -> int:
        return self.apply(self.inst(i, term), *premises)

    def inst_guarded(self, i: int, terms: Sequence, facts: Sequence[int] = ()) -> int:
        """Instantiate bounded quantifiers, discharging each guard by a fact step or by computation"""
        for term in terms:
            i = self._discharge(self.inst(i, term), facts)
        return i

    def _discharge(self, i: int, facts: Sequence[int]) -> int:
        phi = self[i]
        if not (isinstance(phi, Imp) and isinstance(phi.left, Atom) and phi.left.pred in _GUARDS):
            return i
        for f in facts:
            if self[f] == phi.left:
                return self.mp(f, i)
        if normalize(phi.left) == TOP:
            return self.mp(self.comp(phi.left), i)
        return i

    def conv(self, i: int, target) -> int:
        """Step i rewritten to target by the computation rule"""
        if self[i] == target:
            return i
        return self.mp(i, self.comp(Imp(self[i], target)))

    def chain(self, premises: Sequence[int], conclusion, rule: str = "taut") -> int:
        """conclusion from the premise steps by one tautology (or computation) step"""
        implication = implication_chain([self[p] for p in premises], conclusion)
        j = self.add(implication, rule)
        return self.apply(j, *premises)

    def generalize(self, i: int, variables: Iterable[str]) -> int:
        for var in variables:
            i = self.ug(i, var)
        return i
