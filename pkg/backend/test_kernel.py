# test_kernel.py - proof checking, the proof text format and the derivability rules
import pytest

from deduction.builder import ProofBuilder
from deduction.kernel import (
    check_proof, provable, rule_D1, rule_D2_instance, rule_internal_UI, rule_loeb, rule_pr_sigma,
)
from deduction.proof import proof_from_text, proofs_from_text, proofs_to_text
from deduction.systems import induction_instance, instantiate
from errors import ProofFormatError, ProofRejected, SchemaError
from language.coding import gq
from language.parser import parse_formula
from language.syntax import Forall, Imp, Var, atom, free_vars, is_sentence
from scripts.befs import necessitation_chain

MONTAGUE_STEP = """# system: KT
# name: known identity
1 | 0 = 0 | eq
2 | forall a (Ag(a) -> K2(a, [[0 = 0]])) | nec_k 1
"""


def test_text_proof_is_accepted_and_recorded(registry, db):
    proof = proof_from_text(MONTAGUE_STEP)
    assert proof.system == "KT"
    assert proof.name == "known identity"
    verdict = check_proof(proof, registry, db)
    assert verdict, verdict.describe()
    assert verdict.stats == {"eq": 1, "nec_k": 1}
    assert db.proved_in("KT", proof.conclusion)


def test_nec_k_on_a_hypothesis_is_rejected(registry, db):
    b = ProofBuilder("KT", "necessitated hypothesis", registry)
    h = b.hyp(parse_formula("U(0)"))
    b.nec_k(h)
    verdict = check_proof(b.build(), registry, db)
    assert not verdict
    assert verdict.failed_step == 2
    assert not db.proved_in("KT", b[2])


def test_nec_k_needs_the_rule(registry, db):
    proof = proof_from_text(MONTAGUE_STEP, system="DCB")
    verdict = check_proof(proof, registry, db)
    assert not verdict
    assert verdict.failed_step == 2


def test_conclusion_may_not_depend_on_hypotheses(registry, db):
    b = ProofBuilder("Base", "open dependency", registry)
    h = b.hyp(parse_formula("U(0)"))
    b.chain([h], parse_formula("U(0) | Ag(0)"))
    verdict = check_proof(b.build(), registry, db)
    assert not verdict
    assert "hypotheses" in verdict.reason


def test_deduction_discharges_hypotheses(registry, db):
    b = ProofBuilder("Base", "discharged", registry)
    h = b.hyp(parse_formula("U(0)"))
    i = b.chain([h], parse_formula("U(0) | Ag(0)"))
    b.ded(h, i)
    assert check_proof(b.build(), registry, db)


def test_ug_respects_hypotheses(registry, db):
    b = ProofBuilder("Base", "bad generalization", registry)
    h = b.hyp(parse_formula("U(x)"))
    b.ug(h, "x")
    verdict = check_proof(b.build(), registry, db)
    assert not verdict
    assert verdict.failed_step == 2


@pytest.mark.parametrize("rule, text", [("taut", "U(0)"), ("comp", "S(0) + S(0) = S(S(S(0)))"), ("eq", "0 = S(0)")])
def test_unjustified_steps_are_rejected(registry, db, rule, text):
    b = ProofBuilder("Base", "bad step", registry)
    getattr(b, rule)(parse_formula(text))
    verdict = check_proof(b.build(), registry, db)
    assert not verdict
    assert verdict.failed_step == 1


def test_mp_checks_its_premises(registry, db):
    b = ProofBuilder("Base", "bad mp", registry)
    i = b.comp(parse_formula("S(0) + S(0) = S(S(0))"))
    j = b.taut(parse_formula("U(0) -> U(0)"))
    b.add(parse_formula("U(0)"), "mp", i, j)
    assert not check_proof(b.build(), registry, db)


def test_unknown_system_is_a_verdict_not_an_exception(registry, db):
    proof = proof_from_text("1 | 0 = 0 | eq\n", system="NoSuchSystem")
    verdict = check_proof(proof, registry, db)
    assert not verdict
    assert "NoSuchSystem" in verdict.reason


@pytest.mark.parametrize("n", [1, 2, 3])
def test_truth_necessitation_budgets(registry, db, n):
    assert check_proof(necessitation_chain(n, f"BEFS_{n + 1}", registry), registry, db)
    assert not check_proof(necessitation_chain(n, f"BEFS_{n}", registry), registry, db, record=False)


def test_cited_theorems_count_against_the_budget(registry, db):
    assert check_proof(necessitation_chain(1, "BEFS_2", registry), registry, db)
    truth = parse_formula("T([[0 = 0]])")
    assert db.necessitations(truth, ["BEFS_2"]) == 1

    b = ProofBuilder("BEFS_2", "necessitated lemma", registry)
    b.nec_t(b.lemma(truth))
    verdict = check_proof(b.build(), registry, db)
    assert not verdict
    assert verdict.failed_step == 2
    assert "budget" in verdict.reason

    b = ProofBuilder("BEFS_3", "necessitated lemma", registry)
    b.nec_t(b.lemma(truth))
    verdict = check_proof(b.build(), registry, db)
    assert verdict, verdict.describe()
    assert verdict.necessitations == 2

    b = ProofBuilder("BEFS_2", "necessitated citation", registry)
    b.nec_t(b.d1_db("BEFS_2", truth))
    assert not check_proof(b.build(), registry, db)


def test_proof_text_round_trip(registry):
    b = ProofBuilder("KT", "round trip", registry)
    b.nec_k(b.eq(parse_formula("0 = 0")))
    c = ProofBuilder("Base", "second", registry)
    c.taut(parse_formula("U(0) | ~U(0)"))
    text = proofs_to_text([b.build(), c.build()])
    back = proofs_from_text(text)
    assert [p.system for p in back] == ["KT", "Base"]
    assert [s.formula for s in back[0].steps] == [s.formula for s in b.build().steps]
    assert back[1].conclusion == parse_formula("U(0) | ~U(0)")


@pytest.mark.parametrize("text", ["1 | 0 = 0\n", "# system: Base\n2 | 0 = 0 | eq\n", "# system: Base\n"])
def test_malformed_proof_text(text):
    with pytest.raises(ProofFormatError):
        proof_from_text(text)


def test_d1_records_provability_in_base(registry, db):
    b = ProofBuilder("DCB", "identity", registry)
    b.eq(parse_formula("0 = 0"))
    theorem = rule_D1("DCB", b.build(), registry, db)
    assert theorem == provable("DCB", gq(parse_formula("0 = 0")))
    assert db.proved_in("Base", theorem)

    bad = ProofBuilder("DCB", "not a theorem", registry)
    bad.taut(parse_formula("U(0)"))
    with pytest.raises(ProofRejected):
        rule_D1("DCB", bad.build(), registry, db)


def test_d2_and_sigma_instances():
    phi, psi = parse_formula("U(0)"), parse_formula("Ag(0)")
    d2 = rule_D2_instance("DCB", phi, psi)
    assert not free_vars(d2)
    with pytest.raises(SchemaError):
        rule_D2_instance("DCB", parse_formula("U(x)"), psi)
    sigma = rule_pr_sigma("DCB", Var("y"))
    assert "y" in free_vars(sigma)


def test_schema_instances(registry):
    km = registry.get("KM")
    phi = parse_formula("0 = 0")
    assert instantiate(km, "UT^K", phi) == parse_formula("K1([[0 = 0]]) -> 0 = 0")
    with pytest.raises(SchemaError):
        instantiate(km, "UT^K", parse_formula("U(x)"))
    with pytest.raises(SchemaError):
        instantiate(registry.get("KT"), "UT^K", phi)


def test_loeb_discharges_reflection(registry, db):
    phi = parse_formula("0 = 0")
    b = ProofBuilder("Base", "reflection for an identity", registry)
    b.chain([b.eq(phi)], Imp(provable("Base", gq(phi)), phi))
    assert rule_loeb("Base", b.build(), registry, db) == phi
    assert db.proved_in("Base", phi)
    with pytest.raises(ProofRejected):
        rule_loeb("DCB", b.build(), registry, db)


def test_internal_instantiation():
    premise = provable("Base", gq(parse_formula("forall x (x = x)")))
    instance = rule_internal_UI("Base", premise)
    assert isinstance(instance, Forall) and not free_vars(instance)
    with pytest.raises(SchemaError):
        rule_internal_UI("Base", provable("Base", gq(parse_formula("0 = 0"))))


def test_induction_instances_are_closed():
    phi = induction_instance(atom("U", Var("v")), "v")
    assert is_sentence(phi)
    assert isinstance(phi, Imp) and phi.right == Forall("v", atom("U", Var("v")))


def test_evaluation_undoes_numeral_quotes(registry, db):
    proof = proof_from_text("""# system: Base
1 | Ag(dev(dnum(x))) -> Ag(x) | comp
2 | forall x (Ag(dev(dnum(x))) -> Ag(x)) | ug 1 x
""")
    assert check_proof(proof, registry, db)
    wrong = proof_from_text("# system: Base\n1 | Ag(dev(x)) -> Ag(x) | comp\n")
    assert not check_proof(wrong, registry, db)
