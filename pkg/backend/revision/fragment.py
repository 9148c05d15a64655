# revision/fragment.py - finite fragments of sentences that revision works on
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from errors import EvaluationError, FragmentError
from language import diagonal
from language.coding import code_of, evaluate_term, sentence_of
from language.parser import parse_formula, parse_term
from language.syntax import (
    Atom, QUANTIFIER_TYPES, free_vars, immediate_subformulas, is_pa_term, is_sentence, pr_system,
    substitute, symbols, to_text,
)
import settings

logger = logging.getLogger(__name__)

DEFAULT_POOL = ("0", "S(0)", "S(S(0))", "S(0)+S(0)", "S(S(S(0)))")

# fixed points that fragment documents may name instead of spelling out
NAMED_SENTENCES = {
    "liar": lambda: diagonal.liar().sentence,
    "truth-teller": lambda: diagonal.truth_teller().sentence,
}

_QUOTING = ("T", "K1")


def quoted_argument(phi) -> Optional[object]:
    """The code term of a T, K1, K2 or Pr atom"""
    if not isinstance(phi, Atom):
        return None
    if phi.pred in _QUOTING or pr_system(phi.pred) is not None:
        return phi.args[0]
    if phi.pred == "K2":
        return phi.args[1]
    return None


def quoted_sentence(phi):
    """The sentence a T, K or Pr atom speaks about, when its code term is u-free and evaluates to one"""
    t = quoted_argument(phi)
    if t is None or free_vars(t) or "u" in symbols(t):
        return None
    try:
        return sentence_of(evaluate_term(t))
    except EvaluationError:
        return None


@dataclass(frozen=True)
class Fragment:
    sentences: Tuple
    pool: Tuple
    cutoff: int

    def __post_init__(self):
        for t in self.pool:
            if not (is_pa_term(t) and not free_vars(t)):
                raise FragmentError(f"pool terms must be closed arithmetic terms, got {to_text(t)}")
        if self.cutoff < 1:
            raise FragmentError(f"the quantifier cutoff must be positive, got {self.cutoff}")

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def __contains__(self, phi) -> bool:
        return code_of(phi) in self.codes

    @cached_property
    def codes(self) -> FrozenSet[int]:
        return frozenset(code_of(s) for s in self.sentences)

    def values(self) -> List[int]:
        """Pool values in pool order, at most cutoff of them"""
        seen: List[int] = []
        for t in self.pool:
            v = evaluate_term(t)
            if v not in seen:
                seen.append(v)
        return seen[:self.cutoff]

    def terms(self) -> Tuple:
        return self.pool[:self.cutoff]

    def missing(self) -> List:
        """Sentences the closure conditions require but the fragment lacks"""
        codes = self.codes
        needed = []
        for phi in self.sentences:
            for psi in _required(phi, self.pool):
                if code_of(psi) not in codes:
                    needed.append(psi)
        return needed

    def is_closed(self) -> bool:
        return not self.missing()

    # ==================== Construction ====================

    @classmethod
    def build(cls, seeds: Iterable, pool: Optional[Sequence] = None, cutoff: Optional[int] = None,
              limit: Optional[int] = None) -> "Fragment":
        """Close seeds under immediate subformulas, pool instances of quantifiers and quoted sentences"""
        pool = tuple(parse_term(t) if isinstance(t, str) else t for t in (pool or DEFAULT_POOL))
        cutoff = settings.CUTOFF_B if cutoff is None else cutoff
        limit = settings.FRAGMENT_LIMIT if limit is None else limit
        ordered: Dict[int, object] = {}
        queue = [parse_formula(s) if isinstance(s, str) else s for s in seeds]
        while queue:
            phi = queue.pop(0)
            if not is_sentence(phi):
                raise FragmentError(f"fragments hold sentences, got {to_text(phi)}")
            code = code_of(phi)
            if code in ordered:
                continue
            ordered[code] = phi
            if len(ordered) > limit:
                raise FragmentError(f"the fragment grows beyond {limit} sentences; lower the pool or the seeds")
            queue.extend(_required(phi, pool))
        fragment = cls(tuple(ordered.values()), pool, cutoff)
        logger.debug(f"fragment of {len(fragment)} sentences from {len(pool)} pool terms")
        return fragment

    @classmethod
    def from_json(cls, data: Mapping) -> "Fragment":
        seeds = []
        for entry in data.get("sentences", []):
            if entry in NAMED_SENTENCES:
                seeds.append(NAMED_SENTENCES[entry]())
            else:
                seeds.append(parse_formula(entry))
        if not seeds:
            raise FragmentError("the fragment document lists no sentences")
        return cls.build(seeds, data.get("pool"), data.get("cutoff"), data.get("limit"))

    def to_json(self) -> Dict:
        return {
            "sentences": [to_text(s) for s in self.sentences],
            "pool": [to_text(t) for t in self.pool],
            "cutoff": self.cutoff,
        }

    def header(self) -> str:
        return (f"fragment: {len(self)} sentences, cutoff {self.cutoff}, "
                f"pool {', '.join(to_text(t) for t in self.pool)}")


def _required(phi, pool: Sequence) -> List:
    needed = list(immediate_subformulas(phi))
    if isinstance(phi, QUANTIFIER_TYPES):
        needed.extend(substitute(phi.body, phi.var, t) for t in pool)
    quoted = quoted_sentence(phi)
    if quoted is not None:
        needed.append(quoted)
    return needed
