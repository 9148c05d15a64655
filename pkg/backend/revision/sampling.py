# revision/sampling.py - axiom instances whose quoted parts lie in the fragment
import logging
import random
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from errors import EvaluationError
from deduction.systems import SystemDef, instantiate
from language.coding import code_of, evaluate_term
from language.syntax import Atom, Forall, Imp, Num, QUANTIFIER_TYPES, Var, free_vars, substitute, subformulas
from revision.fragment import Fragment, quoted_argument
from revision.frames import AgencyFrame
import settings

logger = logging.getLogger(__name__)

# arithmetic and representation axioms hold in the shared standard part
SKIPPED_PREFIXES = ("PA", "REP")
_GUARDS = frozenset({"Ag", "dL0", "dTerm0", "dVar", "dL1"})
ATOMIC_TRUTH_RELATIONS = ("=", "U", "Ag")


@dataclass(frozen=True)
class AxiomInstance:
    axiom: str
    formula: object
    parameters: Tuple[int, ...]


def quantifier_prefix(phi) -> Tuple[List[Tuple[str, Optional[Atom]]], object]:
    """Leading universals with their guards, and the matrix under them"""
    prefix = []
    while isinstance(phi, Forall):
        body = phi.body
        if (isinstance(body, Imp) and isinstance(body.left, Atom) and body.left.pred in _GUARDS
                and body.left.args[0] == Var(phi.var)):
            prefix.append((phi.var, body.left))
            phi = body.right
        else:
            prefix.append((phi.var, None))
            phi = body
    return prefix, phi


def sampled_axioms(system: SystemDef) -> Dict[str, object]:
    """Axioms of system worth sampling, with atomic truth instantiated per relation"""
    axioms = {name: phi for name, phi in system.axioms.items() if not name.startswith(SKIPPED_PREFIXES)}
    if "UCT-Atom" in system.schemata:
        for relation in ATOMIC_TRUTH_RELATIONS:
            axioms[f"UCT-Atom[{relation}]"] = instantiate(system, "UCT-Atom", relation)
    return axioms


class InstanceSampler:
    """Seeded sampler drawing up to per_axiom distinct instances of each axiom"""

    def __init__(self, seed: Optional[int] = None, per_axiom: Optional[int] = None, max_combinations: int = 20000):
        self.seed = settings.SEED if seed is None else seed
        self.rng = random.Random(self.seed)
        self.per_axiom = settings.SAMPLES_PER_AXIOM if per_axiom is None else per_axiom
        self.max_combinations = max_combinations

    def sample(self, system: SystemDef, frame: AgencyFrame, fragment: Fragment) -> List[AxiomInstance]:
        pools = _Candidates(frame, fragment)
        instances: List[AxiomInstance] = []
        for name, axiom in sampled_axioms(system).items():
            drawn = self.instances_of(name, axiom, pools, fragment)
            if not drawn:
                logger.debug(f"no instance of {name} has its quoted parts in the fragment")
            instances.extend(drawn)
        logger.debug(f"sampled {len(instances)} instance(s) of {system.name}")
        return instances

    def instances_of(self, name: str, axiom, pools: "_Candidates", fragment: Fragment) -> List[AxiomInstance]:
        """Enumerate parameter choices in a seeded order up to the cap, then draw per_axiom of the valid ones"""
        prefix, matrix = quantifier_prefix(axiom)
        if not prefix:
            return [AxiomInstance(name, axiom, ())]
        valid: Dict[int, AxiomInstance] = {}
        for count, chosen in enumerate(self._choices(prefix, pools, {})):
            if count >= self.max_combinations:
                logger.debug(f"{name}: stopped after {count} parameter choices")
                break
            formula = matrix
            for var, value in chosen.items():
                formula = substitute(formula, var, Num(value))
            if free_vars(formula) or not _quoted_parts_in(formula, fragment):
                continue
            valid.setdefault(code_of(formula), AxiomInstance(name, formula, tuple(chosen.values())))
        found = list(valid.values())
        return self.rng.sample(found, min(len(found), self.per_axiom))

    def _choices(self, prefix, pools: "_Candidates", chosen: Dict[str, int]) -> Iterator[Dict[str, int]]:
        if not prefix:
            yield dict(chosen)
            return
        (var, guard), rest = prefix[0], prefix[1:]
        candidates = list(pools.for_guard(guard, chosen))
        self.rng.shuffle(candidates)
        for value in candidates:
            chosen[var] = value
            yield from self._choices(rest, pools, chosen)
        chosen.pop(var, None)


class _Candidates:
    """Parameter values per guard for one frame and fragment"""

    def __init__(self, frame: AgencyFrame, fragment: Fragment):
        self.agents = list(frame.agents)
        self.sentences = sorted(fragment.codes)
        self.terms = [code_of(t) for t in fragment.terms()]
        self.values = self.agents + [v for v in fragment.values() if v not in self.agents]
        # open bodies of the fragment's quantified sentences, by the code of their variable
        self.bodies: Dict[int, List[int]] = {}
        for phi in fragment:
            if isinstance(phi, QUANTIFIER_TYPES) and free_vars(phi.body) == frozenset({phi.var}):
                bodies = self.bodies.setdefault(code_of(Var(phi.var)), [])
                body = code_of(phi.body)
                if body not in bodies:
                    bodies.append(body)
        self.variables = sorted(self.bodies) or [code_of(Var("x"))]

    def for_guard(self, guard: Optional[Atom], chosen: Dict[str, int]) -> Sequence[int]:
        if guard is None:
            return self.values
        if guard.pred == "Ag":
            return self.agents
        if guard.pred == "dL0":
            return self.sentences
        if guard.pred == "dTerm0":
            return self.terms
        if guard.pred == "dVar":
            return self.variables
        # dL1(p, r) with r chosen earlier
        other = guard.args[1]
        if isinstance(other, Var) and other.name in chosen:
            return self.bodies.get(chosen[other.name], [])
        return []


def _quoted_parts_in(phi, fragment: Fragment) -> bool:
    """Every closed code term under T, K or Pr evaluates to a fragment sentence"""
    codes = fragment.codes
    for sub in subformulas(phi):
        t = quoted_argument(sub)
        if t is None or free_vars(t):
            continue
        try:
            if evaluate_term(t) not in codes:
                return False
        except EvaluationError:
            return False
    return True
