# revision/evaluation.py - evaluation functions and the expansions they induce
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Union

from errors import FrameError
from deduction.systems import SystemRegistry, default_registry
from language.coding import sentence_of
from revision.frames import AgencyFrame
from revision.truth import FALSE, TRUE, UNKNOWN, ThreeValuedTruth, all_of
from theorem_db import TheoremDB, get_theorem_db

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExplicitSet:
    """Codes that are true, codes whose truth is unknown; every other code is false"""
    true: FrozenSet[int] = frozenset()
    unknown: FrozenSet[int] = frozenset()

    def __post_init__(self):
        for code in self.true | self.unknown:
            if sentence_of(code) is None:
                raise FrameError(f"{code} in an explicit truth set does not code a sentence")
        if self.true & self.unknown:
            raise FrameError("a code cannot be both true and unknown")

    def value(self, code: int, db: TheoremDB, registry: SystemRegistry) -> ThreeValuedTruth:
        if code in self.true:
            return TRUE
        return UNKNOWN if code in self.unknown else FALSE

    def describe(self) -> str:
        return f"{len(self.true)} true, {len(self.unknown)} unknown"


@dataclass(frozen=True)
class TheoremSet:
    """The theorems of a system, as far as the TheoremDB has recorded them"""
    system: str

    def value(self, code: int, db: TheoremDB, registry: SystemRegistry) -> ThreeValuedTruth:
        sentence = sentence_of(code)
        if sentence is None:
            return FALSE
        theory = registry.get(self.system)
        return TRUE if db.holds(sentence, theory.ancestors | {theory.name}) else UNKNOWN

    def describe(self) -> str:
        return f"theorems of {self.system}"


TruthSet = Union[ExplicitSet, TheoremSet]


class EvaluationFunction:
    """One truth set per world"""

    def __init__(self, sets: Mapping[str, TruthSet]):
        self.sets: Dict[str, TruthSet] = dict(sets)

    @classmethod
    def empty(cls, worlds: Iterable[str]) -> "EvaluationFunction":
        return cls({w: ExplicitSet() for w in worlds})

    @classmethod
    def explicit(cls, sets: Mapping[str, Iterable[int]]) -> "EvaluationFunction":
        return cls({w: ExplicitSet(frozenset(codes)) for w, codes in sets.items()})

    @classmethod
    def intensional(cls, assignment: Mapping[str, str], registry: Optional[SystemRegistry] = None,
                    base: str = "DCB") -> "EvaluationFunction":
        """f(w) = theorems of S_w; every S_w must extend base"""
        registry = registry or default_registry()
        for world, system in assignment.items():
            if not registry.get(system).extends(base):
                raise FrameError(f"seed system {system} of world {world} does not extend {base}")
        return cls({w: TheoremSet(s) for w, s in assignment.items()})

    def __getitem__(self, world: str) -> TruthSet:
        try:
            return self.sets[world]
        except KeyError:
            raise FrameError(f"the evaluation function is not defined at {world!r}") from None

    def __eq__(self, other):
        return isinstance(other, EvaluationFunction) and self.sets == other.sets

    @property
    def is_explicit(self) -> bool:
        return all(isinstance(s, ExplicitSet) for s in self.sets.values())

    def covers(self, frame: AgencyFrame) -> bool:
        return set(frame.worlds) <= set(self.sets)

    def to_json(self) -> Dict:
        out = {}
        for w, s in self.sets.items():
            if isinstance(s, TheoremSet):
                out[w] = {"theorems_of": s.system}
            else:
                out[w] = {"true": sorted(s.true), "unknown": sorted(s.unknown)}
        return out


class InducedExpansion:
    """The expansion of the standard model that world w and f induce

    T is f(w); agent alpha knows exactly what is true in every f(v) with
    w R_alpha v, so an agent without successors knows nothing; K1 holds of
    what every agent knows.
    """

    def __init__(self, frame: AgencyFrame, f: EvaluationFunction, world: str,
                 db: Optional[TheoremDB] = None, registry: Optional[SystemRegistry] = None):
        if not f.covers(frame):
            raise FrameError("the evaluation function must be defined on every world of the frame")
        frame.index(world)
        self.frame, self.f, self.world = frame, f, world
        self.db = db or get_theorem_db()
        self.registry = registry or default_registry()

    def truth(self, code: int) -> ThreeValuedTruth:
        return self.f[self.world].value(code, self.db, self.registry)

    def knows(self, alpha: int, code: int) -> ThreeValuedTruth:
        if alpha not in self.frame.agents:
            return FALSE
        successors = self.frame.successors(alpha, self.world)
        if not successors:
            return FALSE
        return all_of(self.f[v].value(code, self.db, self.registry) for v in successors)

    def known_by_all(self, code: int) -> ThreeValuedTruth:
        return all_of(self.knows(alpha, code) for alpha in self.frame.agents)

    def agent_set(self, alpha: int, codes: Iterable[int]) -> ExplicitSet:
        """f_alpha(w) restricted to codes"""
        verdicts = {c: self.knows(alpha, c) for c in codes}
        return ExplicitSet(frozenset(c for c, v in verdicts.items() if v is TRUE),
                           frozenset(c for c, v in verdicts.items() if v is UNKNOWN))
