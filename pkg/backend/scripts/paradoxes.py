# scripts/paradoxes.py - the knower paradoxes, U4 over KT and a Henkin sentence
import logging

from deduction.builder import ProofBuilder
from language import diagonal
from language.coding import gq
from language.syntax import BOT, And, Exists, Imp, Not, Var, app, atom, iff
from scripts.base import ScriptResult, retarget, run_proofs, script

logger = logging.getLogger(__name__)


@script("kaplan-montague", "PA+UT^K+K[UT^K]+I^K ⊢ ⊥")
def script_kaplan_montague(system: str = "KM", registry=None, db=None) -> ScriptResult:
    """Derive ⊥ from kappa <-> K(<~kappa>); replayed against another system when one is given"""
    fixed = diagonal.kappa(registry)
    kappa = fixed.sentence
    not_kappa = Not(kappa)
    knows_not = atom("K1", gq(not_kappa))
    reflection = Imp(knows_not, not_kappa)

    # Base: (K(<~kappa>) -> ~kappa) -> ~kappa
    lemma = ProofBuilder("Base", "kappa lemma", registry)
    w = lemma.conv(lemma.lemma(fixed.witness), iff(kappa, knows_not))
    lemma.chain([w], Imp(reflection, not_kappa))
    lemma_proof = lemma.build()

    b = ProofBuilder("KM", "Kaplan-Montague", registry)
    w = b.conv(b.lemma(fixed.witness), iff(kappa, knows_not))
    ut = b.schema("UT^K", not_kappa)
    refuted = b.chain([w, ut], not_kappa)
    provable = b.d1_db("Base", lemma_proof.conclusion)
    known_ut = b.schema("K[UT^K]", not_kappa)
    closure = b.schema("I^K", reflection, not_kappa)
    known = b.chain([provable, known_ut, closure], knows_not)
    b.chain([w, refuted, known], BOT)
    proof = b.build()
    if system != "KM":
        proof = retarget(proof, system)
    return run_proofs("kaplan-montague", "PA+UT^K+K[UT^K]+I^K ⊢ ⊥",
                      [fixed.proof, lemma_proof, proof], registry=registry, db=db)


@script("montague", "PA+UT^K+NEC^K ⊢ ⊥")
def script_montague(system: str = "Montague", registry=None, db=None) -> ScriptResult:
    fixed = diagonal.delta(registry)
    delta = fixed.sentence

    b = ProofBuilder("Montague", "Montague", registry)
    w = b.lemma(fixed.witness)
    ut = b.schema("UT^K", delta)
    true = b.chain([w, ut], delta)
    known = b.nec_k(true)
    b.chain([w, true, known], BOT)
    proof = b.build()
    if system != "Montague":
        proof = retarget(proof, system)
    return run_proofs("montague", "PA+UT^K+NEC^K ⊢ ⊥", [fixed.proof, proof], registry=registry, db=db)


@script("u4-inconsistency", "KT+U4 ⊢ ⊥")
def script_u4_inconsistency(system: str = "KT+U4", registry=None, db=None) -> ScriptResult:
    """
    nu <-> ~exists x in Ag K2(x, <nu>). An agent x knowing nu knows that it
    knows nu by U4, and knows the instance at x of a DCB theorem by internal
    instantiation and R_DCB, so it knows ~Ag(x). V and atomic truth refute
    that; hence nu, and NEC_K makes every agent know it.
    """
    fixed = diagonal.unknown(registry)
    nu = fixed.sentence
    x = Var("x")
    known_nu = atom("K2", x, gq(nu))
    someone = Exists("x", And(atom("Ag", x), known_nu))
    not_agent = app("dneg", app("dAg", app("dnum", x)))

    # Base: forall x (K2(x, <nu>) -> (nu -> ~Ag(x)))
    lemma = ProofBuilder("Base", "knowing nu refutes agency", registry)
    w = lemma.lemma(fixed.witness)
    intro = lemma.qax(Imp(And(atom("Ag", x), known_nu), someone))
    lemma.ug(lemma.chain([w, intro], Imp(known_nu, Imp(nu, Not(atom("Ag", x))))), "x")
    lemma_proof = lemma.build()
    instance = lemma_proof.conclusion

    b = ProofBuilder("KT+U4", "U4 inconsistency", registry)
    w = b.lemma(fixed.witness)

    # an agent that knows nu is no agent
    h = b.hyp(And(atom("Ag", x), known_nu))
    ag = b.chain([h], atom("Ag", x))
    knows = b.chain([h], known_nu)
    lifted_code = app("dK2", app("dnum", x), app("dgq", gq(nu)))
    lifted = b.apply(b.inst_guarded(b.ax("U4"), [x, gq(nu)], facts=[ag]), knows)
    internal = b.inst(b.iui("DCB", b.d1_db("DCB", instance), "x"), x)
    code = b[internal].args[0]
    knows_instance = b.apply(b.inst_guarded(b.ax("R_DCB"), [x, code], facts=[ag]), internal)
    rest = app("dimp", gq(nu), not_agent)
    uk = b.inst_guarded(b.ax("UK^K"), [x, lifted_code, rest], facts=[ag])
    knows_rest = b.chain([lifted, knows_instance, uk], atom("K2", x, rest), rule="comp")
    uk = b.inst_guarded(b.ax("UK^K"), [x, gq(nu), not_agent], facts=[ag])
    knows_not_agent = b.chain([knows, knows_rest, uk], atom("K2", x, not_agent), rule="comp")
    true_not_agent = b.apply(b.inst_guarded(b.ax("V"), [x, not_agent], facts=[ag]), knows_not_agent)
    negation = b.inst_guarded(b.ax("UCT-neg"), [not_agent.args[0]])
    atomic = b.inst_guarded(b.schema("UCT-Atom", "Ag"), [app("dnum", x)])
    bot = b.chain([true_not_agent, negation, atomic, ag], BOT, rule="comp")
    nobody = b.ug(b.ded(h, bot), "x")
    q4 = b.qax(Imp(b[nobody], Imp(someone, BOT)))
    refuted = b.apply(q4, nobody)

    # nu, so every agent knows it
    true = b.chain([w, refuted], nu)
    everyone = b.nec_k(true, "x")
    a = Var("a")
    ha = b.hyp(atom("Ag", a))
    witness = b.chain([ha, b.apply(b.inst(everyone, a), ha)], And(atom("Ag", a), atom("K2", a, gq(nu))))
    found = b.apply(b.qax(Imp(b[witness], someone)), witness)
    absurd = b.ug(b.ded(ha, b.apply(refuted, found)), "a")
    q4 = b.qax(Imp(b[absurd], Imp(Exists("a", atom("Ag", a)), BOT)))
    b.apply(q4, absurd, b.ax("Non-triviality"))
    proof = b.build()
    if system != "KT+U4":
        proof = retarget(proof, system)
    return run_proofs("u4-inconsistency", "KT+U4 ⊢ ⊥", [fixed.proof, lemma_proof, proof],
                      registry=registry, db=db)


@script("henkin", "Base ⊢ h for h <-> Pr_Base(<h>)")
def script_henkin(system: str = "Base", registry=None, db=None) -> ScriptResult:
    fixed = diagonal.henkin(system, registry)
    h = fixed.sentence
    b = ProofBuilder(system, "Henkin", registry)
    w = b.lemma(fixed.witness)
    b.loeb(system, b.chain([w], Imp(atom(f"Pr[{system}]", gq(h)), h)))
    return run_proofs("henkin", f"{system} ⊢ h for h <-> Pr_{system}(<h>)",
                      [fixed.proof, b.build()], registry=registry, db=db)
