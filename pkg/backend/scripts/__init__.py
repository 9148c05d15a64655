# This file makes the scripts directory a Python package; importing it registers every script
from .base import SCRIPTS, ScriptResult, run_proofs
from .paradoxes import script_henkin, script_kaplan_montague, script_montague, script_u4_inconsistency
from .transfer import script_tb_transfer
from .befs import script_befs_budget, script_kt_proves_befs_instances
from .common_knowledge import (
    make_CK, script_ck_main_a, script_ck_main_b, script_ck_main_c, script_conj_ck, script_general_ck,
    script_implied_ck, script_monotone_ck, script_unique_ck,
)
from .runner import check_ids, export_proofs, format_table, run_all, run_script

__all__ = [
    'SCRIPTS', 'ScriptResult', 'run_proofs',
    'script_henkin', 'script_kaplan_montague', 'script_montague', 'script_u4_inconsistency',
    'script_tb_transfer',
    'script_befs_budget', 'script_kt_proves_befs_instances',
    'make_CK', 'script_ck_main_a', 'script_ck_main_b', 'script_ck_main_c', 'script_conj_ck',
    'script_general_ck', 'script_implied_ck', 'script_monotone_ck', 'script_unique_ck',
    'check_ids', 'export_proofs', 'format_table', 'run_all', 'run_script',
]
