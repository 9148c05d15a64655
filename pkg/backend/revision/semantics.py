# revision/semantics.py - three-valued satisfaction, the revision operator and instance checks
#
# Quantifier domains:
#   forall a in Ag / exists a in Ag    exactly the agents of the frame
#   forall t in dTerm0 / exists ...    the codes of the pool terms
#   anything else                      the agents, then the pool values
# Only the agent domain is complete, so other universals are at best
# unknown and other existentials without a witness are unknown.
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from errors import EvaluationError, FrameError
from deduction.systems import SystemRegistry, default_registry
from language.coding import apply_dotted, code_of, evaluate_term, pretty, sentence_of
from language.syntax import (
    And, Atom, BINARY_TYPES, DOTTED_RELATIONS, Exists, Forall, Imp, Not, Num, Var,
    free_vars, pr_system, substitute, to_text,
)
from revision.evaluation import EvaluationFunction, ExplicitSet, InducedExpansion
from revision.fragment import Fragment
from revision.frames import AgencyFrame
from revision.truth import FALSE, TRUE, UNKNOWN, ThreeValuedTruth, all_of, any_of
from stability import safe_memory_operation
from theorem_db import TheoremDB, get_theorem_db

logger = logging.getLogger(__name__)


@lru_cache(maxsize=100_000)
def _term_value(t, u_items: Tuple[Tuple[int, int], ...]) -> int:
    return evaluate_term(t, dict(u_items))


def relativization(phi) -> Optional[str]:
    """Guard predicate of forall v (P(v) -> ..) or exists v (P(v) & ..)"""
    if isinstance(phi, Forall) and isinstance(phi.body, Imp):
        guard = phi.body.left
    elif isinstance(phi, Exists) and isinstance(phi.body, And):
        guard = phi.body.left
    else:
        return None
    if isinstance(guard, Atom) and guard.args == (Var(phi.var),):
        return guard.pred
    return None


class Evaluator:
    """sat3 for one evaluation function over one frame and fragment"""

    def __init__(self, frame: AgencyFrame, f: EvaluationFunction, fragment: Fragment,
                 db: Optional[TheoremDB] = None, registry: Optional[SystemRegistry] = None):
        self.frame, self.f, self.fragment = frame, f, fragment
        self.db = db or get_theorem_db()
        self.registry = registry or default_registry()
        self.expansions = {w: InducedExpansion(frame, f, w, self.db, self.registry) for w in frame.worlds}
        agents = list(frame.agents)
        self.domain = agents + [v for v in fragment.values() if v not in agents]
        self.term_codes = [code_of(t) for t in fragment.terms()]
        self._u = {w: tuple(sorted(frame.u_map(w).items())) for w in frame.worlds}

    def sat3(self, world: str, phi) -> ThreeValuedTruth:
        if free_vars(phi):
            raise EvaluationError(f"sat3 evaluates sentences; {to_text(phi)} is open")
        if world not in self.expansions:
            raise FrameError(f"unknown world {world!r}")
        return self._eval(world, phi)

    def _eval(self, world: str, phi) -> ThreeValuedTruth:
        if isinstance(phi, Atom):
            return self._atom(world, phi)
        if isinstance(phi, Not):
            return self._eval(world, phi.body).neg()
        if isinstance(phi, BINARY_TYPES):
            left = self._eval(world, phi.left)
            if isinstance(phi, Imp):
                return TRUE if left is FALSE else left.implies(self._eval(world, phi.right))
            if isinstance(phi, And):
                return FALSE if left is FALSE else left.conj(self._eval(world, phi.right))
            return TRUE if left is TRUE else left.disj(self._eval(world, phi.right))
        return self._quantifier(world, phi)

    def _quantifier(self, world: str, phi) -> ThreeValuedTruth:
        guard = relativization(phi)
        if guard == "Ag":
            domain, complete = list(self.frame.agents), True
        elif guard == "dTerm0":
            domain, complete = self.term_codes, False
        else:
            domain, complete = self.domain, False
        verdicts = (self._eval(world, substitute(phi.body, phi.var, Num(n))) for n in domain)
        if isinstance(phi, Forall):
            result = all_of(verdicts)
            return UNKNOWN if result is TRUE and not complete else result
        result = any_of(verdicts)
        return UNKNOWN if result is FALSE and not complete else result

    def _atom(self, world: str, a: Atom) -> ThreeValuedTruth:
        try:
            values = [_term_value(t, self._u[world]) for t in a.args]
        except EvaluationError as e:
            logger.debug(f"undefined term in {pretty(a)}: {e}")
            return UNKNOWN
        expansion = self.expansions[world]
        pred = a.pred
        if pred == "=":
            return ThreeValuedTruth.of(values[0] == values[1])
        if pred == "U":
            return ThreeValuedTruth.of(self.frame.in_U(world, values[0]))
        if pred == "Ag":
            return ThreeValuedTruth.of(values[0] in self.frame.agents)
        if pred == "T":
            return expansion.truth(values[0])
        if pred == "K2":
            return expansion.knows(values[0], values[1])
        if pred == "K1":
            return expansion.known_by_all(values[0])
        if pred in DOTTED_RELATIONS:
            try:
                return ThreeValuedTruth.of(apply_dotted(pred, values))
            except EvaluationError:
                return UNKNOWN
        system = pr_system(pred)
        if system is not None:
            sentence = sentence_of(values[0])
            if sentence is None:
                return FALSE
            theory = self.registry.get(system)
            return TRUE if self.db.holds(sentence, theory.ancestors | {theory.name}) else UNKNOWN
        raise EvaluationError(f"no interpretation for the predicate {pred}")


# ==================== Operations ====================

def sat3(world: str, f: EvaluationFunction, phi, fragment: Fragment, frame: AgencyFrame,
         db: Optional[TheoremDB] = None, registry: Optional[SystemRegistry] = None) -> ThreeValuedTruth:
    return Evaluator(frame, f, fragment, db, registry).sat3(world, phi)


@safe_memory_operation
def gamma(f: EvaluationFunction, fragment: Fragment, frame: AgencyFrame,
          db: Optional[TheoremDB] = None, registry: Optional[SystemRegistry] = None) -> EvaluationFunction:
    """Revise f: at each world, the fragment sentences f makes true, with the undecided ones kept apart"""
    evaluator = Evaluator(frame, f, fragment, db, registry)
    revised = {}
    for world in frame.worlds:
        true, unknown = set(), set()
        for phi in fragment:
            verdict = evaluator.sat3(world, phi)
            if verdict is TRUE:
                true.add(code_of(phi))
            elif verdict is UNKNOWN:
                unknown.add(code_of(phi))
        revised[world] = ExplicitSet(frozenset(true), frozenset(unknown))
    return EvaluationFunction(revised)


def revisions(f: EvaluationFunction, fragment: Fragment, frame: AgencyFrame, steps: int,
              db: Optional[TheoremDB] = None, registry: Optional[SystemRegistry] = None
              ) -> Iterator[Tuple[int, EvaluationFunction]]:
    """(0, f), (1, gamma(f)), .. up to steps"""
    yield 0, f
    for n in range(1, steps + 1):
        f = gamma(f, fragment, frame, db, registry)
        logger.debug(f"🔁 revision stage {n}: " + "; ".join(
            f"{w}: {f[w].describe()}" for w in frame.worlds))
        yield n, f


# ==================== Instance reports ====================

@dataclass
class InstanceVerdict:
    axiom: str
    world: str
    stage: int
    instance: str
    verdict: ThreeValuedTruth

    def to_json(self) -> Dict:
        return {"axiom": self.axiom, "world": self.world, "stage": self.stage,
                "instance": self.instance, "verdict": str(self.verdict)}


@dataclass
class InstanceReport:
    rows: List[InstanceVerdict] = field(default_factory=list)

    @property
    def counts(self) -> Counter:
        return Counter(str(r.verdict) for r in self.rows)

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def false_rows(self) -> List[InstanceVerdict]:
        return [r for r in self.rows if r.verdict is FALSE]

    def extend(self, other: "InstanceReport") -> "InstanceReport":
        self.rows.extend(other.rows)
        return self

    def by_axiom(self) -> Dict[str, Counter]:
        table: Dict[str, Counter] = {}
        for r in self.rows:
            table.setdefault(r.axiom, Counter())[str(r.verdict)] += 1
        return table

    def summary(self) -> Dict:
        counts = self.counts
        return {"instances": self.total, "true": counts["true"], "unknown": counts["unknown"],
                "false": counts["false"]}


def evaluate_instances(world: str, f: EvaluationFunction, instances: Iterable, fragment: Fragment,
                    frame: AgencyFrame, stage: int = 0, db: Optional[TheoremDB] = None,
                    registry: Optional[SystemRegistry] = None, evaluator: Optional[Evaluator] = None
                    ) -> InstanceReport:
    """Verdict of every sampled axiom instance at world"""
    evaluator = evaluator or Evaluator(frame, f, fragment, db, registry)
    report = InstanceReport()
    for inst in instances:
        verdict = evaluator.sat3(world, inst.formula)
        report.rows.append(InstanceVerdict(inst.axiom, world, stage, pretty(inst.formula), verdict))
        if verdict is FALSE:
            logger.warning(f"❌ {inst.axiom} is false at {world}, stage {stage}: {pretty(inst.formula)}")
    return report


def check_instances(world: str, f: EvaluationFunction, system: str, fragment: Fragment, sampler,
                    frame: AgencyFrame, stage: int = 0, db: Optional[TheoremDB] = None,
                    registry: Optional[SystemRegistry] = None) -> InstanceReport:
    """Sample axiom instances of system whose quoted parts lie in the fragment and evaluate them at world"""
    registry = registry or default_registry()
    instances = sampler.sample(registry.get(system), frame, fragment)
    return evaluate_instances(world, f, instances, fragment, frame, stage, db, registry)
