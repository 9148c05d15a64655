# scripts/transfer.py - carrying disquotation over knowledge with IA
import logging
from typing import Optional

from errors import ScriptError
from deduction.builder import ProofBuilder
from deduction.proof import Proof
from language.coding import gq
from language.syntax import Atom, Forall, Imp, Num, Var, app, atom, iff, is_sentence, to_text
from scripts.base import ScriptResult, agent_hypothesis, retarget, run_proofs, script

logger = logging.getLogger(__name__)

AGENT = "a"


def disquotation_proof(phi, system: str, registry=None) -> Proof:
    """T(<s = t>) <-> s = t from atomic truth, for closed arithmetic equations"""
    if not (isinstance(phi, Atom) and phi.pred == "=" and is_sentence(phi)):
        raise ScriptError(f"no built-in disquotation proof for {to_text(phi)}; supply one")
    b = ProofBuilder(system, f"TB {to_text(phi)}", registry)
    left, right = phi.args
    atomic = b.inst_guarded(b.schema("UCT-Atom", "="), [gq(left), gq(right)])
    b.chain([atomic], iff(atom("T", gq(phi)), phi), rule="comp")
    return b.build()


def transferred(phi):
    """forall a in Ag (T(dK2(dnum(a), dgq(<phi>))) <-> K2(a, <phi>))"""
    a = Var(AGENT)
    coded = atom("T", app("dK2", app("dnum", a), app("dgq", gq(phi))))
    return Forall(AGENT, Imp(atom("Ag", a), iff(coded, atom("K2", a, gq(phi)))))


def transfer_steps(b: ProofBuilder, disquotation: int, phi) -> int:
    """From a closed step T(<phi>) <-> phi: NEC_K both ways, UK^K per agent, then IA"""
    a = Var(AGENT)
    quoted_truth = atom("T", gq(phi))
    down = b.nec_k(b.chain([disquotation], Imp(quoted_truth, phi)), AGENT)
    up = b.nec_k(b.chain([disquotation], Imp(phi, quoted_truth)), AGENT)

    ag = agent_hypothesis(b, AGENT)
    knows_down = b.inst_guarded(down, [a], facts=[ag])
    knows_up = b.inst_guarded(up, [a], facts=[ag])
    uk = b.ax("UK^K")
    forward = b.inst_guarded(uk, [a, gq(quoted_truth), gq(phi)], facts=[ag])
    backward = b.inst_guarded(uk, [a, gq(phi), gq(quoted_truth)], facts=[ag])
    interaction = b.inst_guarded(b.ax("IA"), [a, gq(phi)], facts=[ag])
    body = transferred(phi).body.right
    step = b.chain([knows_down, knows_up, forward, backward, interaction], body, rule="comp")
    return b.ug(b.ded(ag, step), AGENT)


@script("tb-transfer", "KT+IA: TB(phi) ⟹ ∀a∈Ag TB(K(a, phi)), nested once with Ag(0)")
def script_tb_transfer(phi=None, system: str = "KT+IA", tb_proof: Optional[Proof] = None,
                       nested: bool = True, against: Optional[str] = None, registry=None, db=None) -> ScriptResult:
    phi = phi if phi is not None else atom("=", Num(0), Num(0))
    tb_proof = tb_proof or disquotation_proof(phi, system, registry)
    if tb_proof.conclusion != iff(atom("T", gq(phi)), phi):
        raise ScriptError("the supplied proof does not conclude T(<phi>) <-> phi")

    b = ProofBuilder(system, "TB transfer", registry)
    transfer_steps(b, b.lemma(tb_proof.conclusion), phi)
    proofs = [tb_proof, b.build()]

    if nested:
        # K2(0, <phi>) is a sentence, so its disquotation can be transferred again
        inner = atom("K2", Num(0), gq(phi))
        n = ProofBuilder(f"{system}+Ag(0)", "TB transfer, nested", registry)
        once = n.apply(n.inst(n.lemma(proofs[-1].conclusion), Num(0)), n.ax("Ag(0)"))
        transfer_steps(n, n.conv(once, iff(atom("T", gq(inner)), inner)), inner)
        proofs.append(n.build())

    if against is not None:
        proofs = [retarget(p, against) for p in proofs]
    statement = f"{system}: TB({to_text(phi)}) transfers over knowledge"
    return run_proofs("tb-transfer", statement, proofs, registry=registry, db=db)
