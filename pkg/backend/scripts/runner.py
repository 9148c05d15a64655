# scripts/runner.py - run registered scripts, tabulate results, export their proofs
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional

from errors import ScriptError
from deduction.proof import proofs_to_text
from scripts.base import SCRIPTS, ScriptResult
import settings

logger = logging.getLogger(__name__)

COLUMNS = ("script", "result", "proofs", "steps", "seconds", "statement")


def script_ids() -> List[str]:
    return list(SCRIPTS)


def check_ids(ids: Iterable[str]) -> List[str]:
    ids = list(ids)
    unknown = [i for i in ids if i not in SCRIPTS]
    if unknown:
        raise ScriptError(f"unknown script(s) {', '.join(unknown)}; known: {', '.join(SCRIPTS)}")
    return ids


def run_script(script_id: str, registry=None, db=None, **kwargs) -> ScriptResult:
    check_ids([script_id])
    result = SCRIPTS[script_id]["run"](registry=registry, db=db, **kwargs)
    if result.elapsed > settings.SCRIPT_TIME_LIMIT:
        logger.warning(f"⏱️ {script_id} took {result.elapsed:.2f}s, over {settings.SCRIPT_TIME_LIMIT}s")
    return result


def run_all(ids: Optional[Iterable[str]] = None, registry=None, db=None) -> Dict[str, ScriptResult]:
    """
    Run scripts in registration order; an exception in one script fails only
    that script. Unknown ids raise ScriptError before anything runs.
    """
    results: Dict[str, ScriptResult] = {}
    for script_id in check_ids(ids or script_ids()):
        try:
            results[script_id] = run_script(script_id, registry, db)
        except Exception as e:
            logger.error(f"❌ {script_id} raised {type(e).__name__}: {e}")
            statement = SCRIPTS[script_id]["statement"]
            results[script_id] = ScriptResult(script_id, statement, error=f"{type(e).__name__}: {e}")
    passed = sum(r.accepted for r in results.values())
    logger.info(f"🎉 {passed}/{len(results)} scripts passed")
    return results


def format_table(results: Dict[str, ScriptResult]) -> str:
    rows = [r.row() for r in results.values()]
    widths = {c: max([len(c)] + [len(str(r[c])) for r in rows]) for c in COLUMNS}
    lines = ["  ".join(c.upper().ljust(widths[c]) for c in COLUMNS),
             "  ".join("-" * widths[c] for c in COLUMNS)]
    for row in rows:
        lines.append("  ".join(str(row[c]).ljust(widths[c]) for c in COLUMNS))
        if row["result"] == "FAIL":
            lines.append(f"    {row['detail']}")
    return "\n".join(lines)


def export_proofs(result: ScriptResult, directory: Path) -> Path:
    """Write every proof of a script to <directory>/<script>.proof"""
    directory.mkdir(parents=True, exist_ok=True)
    target = directory / f"{result.script_id}.proof"
    target.write_text(proofs_to_text(result.proofs), encoding="utf-8")
    logger.info(f"📝 wrote {len(result.proofs)} proofs to {target}")
    return target
