# test_scripts.py - replayed derivations: paradoxes, TB transfer, BEFS and common knowledge
import pytest

from errors import ScriptError
from language.parser import parse_formula, parse_term
from language.syntax import BOT
from scripts import (
    SCRIPTS, format_table, run_all, run_script, script_befs_budget, script_ck_main_b, script_conj_ck,
    script_kaplan_montague, script_kt_proves_befs_instances, script_montague, script_tb_transfer,
    script_u4_inconsistency,
)
from scripts.befs import sample_parameters, und_instance, uns_instance
import settings


@pytest.mark.parametrize("run", [script_kaplan_montague, script_montague, script_u4_inconsistency])
def test_paradoxes_derive_bot_quickly(run, registry, db):
    result = run(registry=registry, db=db)
    assert result.accepted, result.describe()
    assert result.conclusion == BOT
    assert result.elapsed < 5


def test_montague_needs_necessitation(registry, db):
    """The same derivation read in KM lacks NEC^K"""
    result = script_montague(system="KM", registry=registry, db=db)
    assert not result.accepted
    assert "NEC_K" in result.describe()


def test_montague_rule_use(registry, db):
    result = script_montague(registry=registry, db=db)
    assert result.accepted, result.describe()
    stats = result.proofs[-1].rule_counts()
    assert stats.get("nec_k") == 1
    assert "nec_t" not in stats and "ax" not in stats


def test_u4_paradox_needs_u4(registry, db):
    result = script_u4_inconsistency(registry=registry, db=db)
    assert result.accepted, result.describe()
    assert "U4[K1]" not in registry.get("KT+U4").axioms
    db.clear()
    without = script_u4_inconsistency(system="KT", registry=registry, db=db)
    assert not without.accepted
    assert "no axiom U4" in without.describe()


def test_kaplan_montague_needs_untyped_truth_of_knowledge(registry, db):
    result = script_kaplan_montague(system="KT", registry=registry, db=db)
    assert not result.accepted
    verdict = result.verdicts[-1]
    assert verdict.failed_step == 4
    assert "UT^K" in verdict.reason


def test_tb_transfer_needs_interaction(registry, db):
    result = script_tb_transfer(registry=registry, db=db)
    assert result.accepted, result.describe()
    assert len(result.proofs) == 3
    db.clear()
    weaker = script_tb_transfer(against="KT", registry=registry, db=db)
    assert not weaker.accepted


@pytest.mark.parametrize("n", [1, 2, 3])
def test_befs_budget_levels(n, registry, db):
    result = script_befs_budget(levels=[n], registry=registry, db=db)
    assert result.accepted, result.describe()
    assert len(result.counterchecks) == 1
    assert not result.counterchecks[0]


def test_kt_proves_twenty_befs_instances(registry, db):
    uns, und = sample_parameters(10, seed=settings.SEED)
    result = script_kt_proves_befs_instances(sample=[*uns, *und], registry=registry, db=db)
    assert result.accepted, result.describe()
    assert len(result.proofs) >= 20 + 2


def test_befs_instance_parameters_are_checked(registry):
    with pytest.raises(ScriptError):
        und_instance(parse_term("S(0)+S(0)"), parse_term("S(S(0))"), registry=registry)
    with pytest.raises(ScriptError):
        uns_instance(parse_formula("U(z)"), parse_term("0"), parse_term("S(0)"), registry=registry)


def test_conj_ck_on_two_identities(registry, db):
    result = script_conj_ck(phi="0 = 0", psi="S(0) = S(0)", registry=registry, db=db)
    assert result.accepted, result.describe()


def test_ck_main_b_uses_one_loeb_and_one_sigma(registry, db):
    result = script_ck_main_b(registry=registry, db=db)
    assert result.accepted, result.describe()
    assert result.stats.get("loeb") == 1
    assert result.stats.get("pr_sigma") == 1
    assert result.proofs[-1].rule_counts().get("loeb") == 1


@pytest.mark.parametrize("script_id", ["implied-ck", "unique-ck", "general-ck", "monotone-ck",
                                       "ck-main-a", "ck-main-c", "henkin"])
def test_common_knowledge_scripts(script_id, registry, db):
    result = run_script(script_id, registry, db)
    assert result.accepted, result.describe()


def test_unknown_script_id():
    with pytest.raises(ScriptError):
        run_script("no-such-script")
    with pytest.raises(ScriptError):
        run_all(["montague", "no-such-script"])


def test_run_all_table_has_a_row_per_statement(registry, db):
    results = run_all(["montague", "henkin", "befs-budget"], registry, db)
    table = format_table(results)
    assert all(r.accepted for r in results.values())
    for script_id in results:
        assert script_id in table
        assert SCRIPTS[script_id]["statement"] in table or results[script_id].statement in table
    assert "FAIL" not in table
