# scripts/befs.py - KT proves the epistemic axioms of BEFS instance by instance
import logging
import random
from typing import Iterable, List, Optional, Sequence, Tuple

from errors import ScriptError
from deduction.builder import ProofBuilder
from deduction.proof import Proof
from language.coding import gq
from language.syntax import (
    Imp, Not, Num, Var, app, atom, eq, eval_closed_term, free_vars, iff, is_pa_term, substitute, to_text,
)
import settings
from scripts.base import ScriptResult, agent_hypothesis, know_mp, run_proofs, script

logger = logging.getLogger(__name__)

AGENT = "a"
PLACEHOLDER = "z"


def _closed_pa_term(t) -> bool:
    return is_pa_term(t) and not free_vars(t)


def und_instance(s, t, system: str = "KT", registry=None) -> Proof:
    """forall a in Ag (dev(<s>) != dev(<t>) -> K2(a, dneg(deq(<s>, <t>)))) for s, t of different value"""
    if not (_closed_pa_term(s) and _closed_pa_term(t)) or eval_closed_term(s) == eval_closed_term(t):
        raise ScriptError(f"UND^K instances need closed terms of different value, got {to_text(s)}, {to_text(t)}")
    a = Var(AGENT)
    distinct = Not(eq(s, t))
    b = ProofBuilder(system, f"UND^K {to_text(s)}, {to_text(t)}", registry)
    known = b.nec_k(b.comp(distinct), AGENT)
    ag = agent_hypothesis(b, AGENT)
    knows = b.inst_guarded(known, [a], facts=[ag])
    values_differ = Not(eq(app("dev", gq(s)), app("dev", gq(t))))
    body = Imp(values_differ, atom("K2", a, app("dneg", app("deq", gq(s), gq(t)))))
    b.ug(b.ded(ag, b.chain([knows], body, rule="comp")), AGENT)
    return b.build()


def uns_instance(phi, s, t, system: str = "KT", registry=None) -> Proof:
    """dev(<s>) = dev(<t>) -> (K2(a, dsbt(<phi>, <s>, <z>)) <-> K2(a, dsbt(<phi>, <t>, <z>))) for all agents"""
    if free_vars(phi) != frozenset({PLACEHOLDER}):
        raise ScriptError(f"UNS^K instances need a formula in {PLACEHOLDER} alone, got {to_text(phi)}")
    if not (_closed_pa_term(s) and _closed_pa_term(t)) or eval_closed_term(s) != eval_closed_term(t):
        raise ScriptError(f"UNS^K instances need closed terms of equal value, got {to_text(s)}, {to_text(t)}")
    a = Var(AGENT)
    at_s, at_t = substitute(phi, PLACEHOLDER, s), substitute(phi, PLACEHOLDER, t)
    b = ProofBuilder(system, f"UNS^K {to_text(phi)} at {to_text(s)}, {to_text(t)}", registry)
    forward = b.nec_k(b.comp(Imp(at_s, at_t)), AGENT)
    backward = b.nec_k(b.comp(Imp(at_t, at_s)), AGENT)
    ag = agent_hypothesis(b, AGENT)
    knows_s = b.hyp(atom("K2", a, gq(at_s)))
    to_t = know_mp(b, a, ag, knows_s, b.inst_guarded(forward, [a], facts=[ag]), at_s, at_t)
    knows_t = b.hyp(atom("K2", a, gq(at_t)))
    to_s = know_mp(b, a, ag, knows_t, b.inst_guarded(backward, [a], facts=[ag]), at_t, at_s)
    there, back = b.ded(knows_s, to_t), b.ded(knows_t, to_s)

    variable = gq(Var(PLACEHOLDER))
    same_value = eq(app("dev", gq(s)), app("dev", gq(t)))
    body = Imp(same_value, iff(atom("K2", a, app("dsbt", gq(phi), gq(s), variable)),
                               atom("K2", a, app("dsbt", gq(phi), gq(t), variable))))
    b.ug(b.ded(ag, b.chain([there, back], body, rule="comp")), AGENT)
    return b.build()


def admissibility_replays(registry=None) -> List[Proof]:
    """T/K in KT+UBF+IA via CONEC_T and NEC_K; NEC_K in BEFS+V+R_DCB via NEC_T and T/K"""
    truth = eq(Num(0), Num(0))
    tk = ProofBuilder("KT+UBF+IA", "T/K admissible", registry)
    true = tk.nec_t(tk.eq(truth))
    tk.nec_k(tk.conec_t(true, truth), AGENT)

    nec = ProofBuilder("BEFS+V+R_DCB", "NEC_K admissible", registry)
    nec.t_over_k(nec.nec_t(nec.eq(truth)), truth, AGENT)
    return [tk.build(), nec.build()]


# ==================== Sampling ====================

_TEMPLATES = ("z = S(S(0))", "~(z = 0)", "U(z)", "exists m (m + z = S(S(S(S(0)))))", "Ag(z) -> K2(z, z)")


def _term_pool() -> List:
    from language.parser import parse_term
    return [parse_term(t) for t in (
        "0", "S(0)", "S(S(0))", "S(0)+S(0)", "S(0)*S(S(0))", "S(S(0))*S(S(0))",
        "S(S(S(0)))+0", "S(S(S(S(0))))", "(S(0)+S(0))*S(S(0))", "0*S(S(S(0)))",
    )]


def sample_parameters(count: int, seed: Optional[int] = None) -> Tuple[List, List]:
    """Pairs (phi, s, t) for UNS^K and (s, t) for UND^K drawn from a fixed term pool"""
    from language.parser import parse_formula
    rng = random.Random(settings.SEED if seed is None else seed)
    pool = _term_pool()
    templates = [parse_formula(t) for t in _TEMPLATES]
    equal = [(s, t) for s in pool for t in pool if s != t and eval_closed_term(s) == eval_closed_term(t)]
    different = [(s, t) for s in pool for t in pool if eval_closed_term(s) != eval_closed_term(t)]
    uns = [(rng.choice(templates), *rng.choice(equal)) for _ in range(count)]
    und = [rng.choice(different) for _ in range(count)]
    return uns, und


@script("kt-proves-befs", "KT ⊢ UNS^K, UND^K instances; T/K and NEC_K admissible")
def script_kt_proves_befs_instances(sample: Optional[Sequence] = None, count: int = 12, seed: Optional[int] = None,
                                    registry=None, db=None) -> ScriptResult:
    from language.parser import parse_formula, parse_term
    if sample is None:
        uns, und = sample_parameters(count, seed)
        uns.insert(0, (parse_formula("z = S(S(0))"), parse_term("S(0)+S(0)"), parse_term("S(S(0))")))
        und.insert(0, (parse_term("S(0)"), parse_term("0")))
    else:
        uns = [p for p in sample if len(p) == 3]
        und = [p for p in sample if len(p) == 2]
    proofs = [uns_instance(*p, registry=registry) for p in uns]
    proofs += [und_instance(*p, registry=registry) for p in und]
    proofs += admissibility_replays(registry)
    return run_proofs("kt-proves-befs", f"KT ⊢ {len(uns)} UNS^K and {len(und)} UND^K instances; two rule replays",
                      proofs, registry=registry, db=db)


# ==================== Necessitation budgets ====================

def necessitation_chain(n: int, system: str, registry=None) -> Proof:
    """n alternating NEC_T / CONEC_T steps starting from 0 = 0"""
    truth = eq(Num(0), Num(0))
    b = ProofBuilder(system, f"{n} truth necessitation(s)", registry)
    step = b.eq(truth)
    for k in range(n):
        step = b.nec_t(step) if k % 2 == 0 else b.conec_t(step, truth)
    return b.build()


@script("befs-budget", "BEFS_{n+1} accepts n NEC_T/CONEC_T steps, BEFS_n does not (n = 1, 2, 3)")
def script_befs_budget(levels: Iterable[int] = (1, 2, 3), registry=None, db=None) -> ScriptResult:
    levels = list(levels)
    accepted = [necessitation_chain(n, f"BEFS_{n + 1}", registry) for n in levels]
    rejected = [necessitation_chain(n, f"BEFS_{n}", registry) for n in levels]
    return run_proofs("befs-budget", f"BEFS_(n+1) accepts and BEFS_n rejects n necessitations, n in {levels}",
                      accepted, counterproofs=rejected, registry=registry, db=db)
