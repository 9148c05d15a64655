# scripts/base.py - script results, the script registry and shared epistemic tactics
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import wraps
from typing import Callable, Dict, List, Optional, Sequence

from deduction.builder import ProofBuilder
from deduction.kernel import Verdict, check_proof
from deduction.proof import Proof
from language.coding import gq
from language.syntax import Var, atom, implication_chain, is_sentence
from errors import ScriptError
from stability import ManagedResource

logger = logging.getLogger(__name__)


@dataclass
class ScriptResult:
    script_id: str
    statement: str
    proofs: List[Proof] = field(default_factory=list)
    verdicts: List[Verdict] = field(default_factory=list)
    # verdicts of proofs that must be rejected, e.g. a derivation replayed in a weaker system
    counterchecks: List[Verdict] = field(default_factory=list)
    elapsed: float = 0.0
    error: str = ""

    @property
    def accepted(self) -> bool:
        return (not self.error and len(self.verdicts) == len(self.proofs) and all(self.verdicts)
                and not any(self.counterchecks))

    @property
    def verdict(self) -> Optional[Verdict]:
        for v in self.verdicts:
            if not v:
                return v
        return self.verdicts[-1] if self.verdicts else None

    @property
    def conclusion(self):
        return self.proofs[-1].conclusion if self.proofs else None

    @property
    def stats(self) -> Dict[str, int]:
        total: Counter = Counter()
        for proof in self.proofs:
            total.update(proof.rule_counts())
        return dict(total)

    def describe(self) -> str:
        if self.error:
            return self.error
        if self.accepted:
            return "ok"
        for v in self.verdicts:
            if not v:
                return v.describe()
        for v in self.counterchecks:
            if v:
                return f"expected rejection, but accepted in {v.system}"
        return "not all proofs were checked"

    def row(self) -> Dict:
        return {
            "script": self.script_id,
            "statement": self.statement,
            "result": "PASS" if self.accepted else "FAIL",
            "proofs": len(self.proofs),
            "steps": sum(len(p) for p in self.proofs),
            "seconds": round(self.elapsed, 3),
            "detail": self.describe(),
        }


def retarget(proof: Proof, system: str) -> Proof:
    """The same steps read as a proof in another system"""
    return Proof(system, list(proof.steps), proof.name)


def run_proofs(script_id: str, statement: str, proofs: Sequence[Proof], counterproofs: Sequence[Proof] = (),
               registry=None, db=None) -> ScriptResult:
    """Check proofs in order, each recording its theorem for the next; stop at the first rejection"""
    result = ScriptResult(script_id, statement, list(proofs))
    with ManagedResource(f"script {script_id}") as scope:
        for proof in proofs:
            verdict = check_proof(proof, registry, db)
            result.verdicts.append(verdict)
            if not verdict:
                logger.warning(f"❌ {script_id}: {proof.name or 'proof'} {verdict.describe()}")
                break
        for proof in counterproofs:
            result.counterchecks.append(check_proof(proof, registry, db, record=False))
    result.elapsed = scope.elapsed
    if result.accepted:
        logger.info(f"✅ {script_id}: {statement} ({result.elapsed:.2f}s)")
    return result


# ==================== Registry ====================

SCRIPTS: Dict[str, Dict] = {}


def script(script_id: str, statement: str):
    """Register a zero-argument run of a script under its id"""
    def decorator(func: Callable[..., ScriptResult]):
        @wraps(func)
        def wrapper(*args, **kwargs):
            logger.debug(f"🚀 running script {script_id}")
            return func(*args, **kwargs)
        SCRIPTS[script_id] = {"statement": statement, "run": wrapper}
        return wrapper
    return decorator


# ==================== Epistemic tactics ====================

def know_mp(b: ProofBuilder, agent, agent_step: int, known: int, known_imp: int, p, q) -> int:
    """K2(agent, <q>) from K2(agent, <p>) and K2(agent, <p -> q>) by UK^K"""
    uk = b.inst_guarded(b.ax("UK^K"), [agent, gq(p), gq(q)], facts=[agent_step])
    return b.chain([known, known_imp, uk], atom("K2", agent, gq(q)), rule="comp")


def knowledge_of_theorem(b: ProofBuilder, agent, agent_step: int, theorem: int) -> int:
    """K2(agent, <phi>) for a hypothesis-free step phi, through NEC_K or D1 with R_DCB"""
    phi = b[theorem]
    system = b.registry.get(b.system)
    if system.has_rule("NEC_K") and not system.collective_knowledge:
        return b.inst_guarded(b.nec_k(theorem, "a"), [agent], facts=[agent_step])
    if "R_DCB" not in system.axioms:
        raise ScriptError(f"{b.system} has neither NEC_K nor R_DCB")
    provable = b.d1("DCB", theorem)
    reflect = b.inst_guarded(b.ax("R_DCB"), [agent, gq(phi)], facts=[agent_step])
    return b.mp(provable, reflect)


def knowledge_closure(b: ProofBuilder, agent, agent_step: int, known: Sequence[int], premises: Sequence,
                      conclusion) -> int:
    """K2(agent, <conclusion>) from K2(agent, <premise>) steps when the premises tautologically imply it"""
    if not all(is_sentence(p) for p in [*premises, conclusion]):
        raise ScriptError("knowledge closure works on sentences")
    known = [b.conv(k, atom("K2", agent, gq(p))) for k, p in zip(known, premises)]
    rest = implication_chain(premises, conclusion)
    step = knowledge_of_theorem(b, agent, agent_step, b.taut(rest))
    for k, p in zip(known, premises):
        rest = rest.right
        step = know_mp(b, agent, agent_step, k, step, p, rest)
    return step


def agent_hypothesis(b: ProofBuilder, name: str = "a") -> int:
    return b.hyp(atom("Ag", Var(name)))
