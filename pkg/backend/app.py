# app.py - command line entry point for the knowledge and truth workbench
import argparse
import logging
import random
import sys
from pathlib import Path
from typing import List, Optional

from deduction.kernel import check_proof
from deduction.proof import proofs_from_text
from deduction.systems import default_registry
from language import diagonal
from language.coding import decode, gc, pretty
from language.parser import parse, parse_formula
from language.syntax import BOT, is_formula, to_text
from revision import experiments
from revision.frames import frame_of_kind, random_frame
from revision.sampling import InstanceSampler
from stability import EXIT_INPUT_ERROR, EXIT_OK, EXIT_REJECTED, stable_command
from theorem_db import get_theorem_db
import scripts
import settings

logger = logging.getLogger(__name__)


def _read_text(value: str) -> str:
    """Contents of the file when value names one, value itself otherwise"""
    path = Path(value)
    if path.suffix and path.is_file():
        return path.read_text(encoding="utf-8")
    return value


# ==================== Syntax commands ====================

@stable_command
def cmd_parse(args) -> int:
    x = parse(_read_text(args.text).strip())
    kind = "formula" if is_formula(x) else "term"
    print(f"{kind}: {to_text(x)}")
    print(f"quoted: {pretty(x)}")
    return EXIT_OK


@stable_command
def cmd_code(args) -> int:
    if args.decode:
        value = decode(int(args.text))
        print(f"{args.text} decodes to {to_text(value)}")
        return EXIT_OK
    x = parse(_read_text(args.text).strip())
    code = gc(x)
    print(int(code))
    print(f"decodes to {to_text(code.decode())}")
    return EXIT_OK


@stable_command
def cmd_diag(args) -> int:
    phi = parse_formula(_read_text(args.formula).strip())
    fixed = diagonal.fixed_point(phi, args.var, name=args.name)
    verdict = fixed.check()
    print(f"theta: {pretty(fixed.sentence)}")
    print(f"code: {fixed.code}")
    print(f"witness: {pretty(fixed.witness)}")
    if args.output:
        Path(args.output).write_text(fixed.proof.to_text(), encoding="utf-8")
        logger.info(f"📝 witness proof written to {args.output}")
    else:
        print(fixed.proof.to_text(), end="")
    return EXIT_OK if verdict else EXIT_REJECTED


# ==================== Proof commands ====================

@stable_command
def cmd_check(args) -> int:
    registry = default_registry()
    proofs = proofs_from_text(Path(args.file).read_text(encoding="utf-8"))
    if args.system:
        for proof in proofs:
            proof.system = args.system
    for proof in proofs:
        verdict = check_proof(proof, registry, get_theorem_db())
        if not verdict:
            print(f"❌ {proof.name or args.file}: {verdict.describe()}")
            return EXIT_REJECTED
        label = registry.get(verdict.system).label
        if verdict.conclusion == BOT:
            print(f"⊥ derived in {label}")
        else:
            print(f"✅ {proof.name or 'proof'} accepted in {label}: {pretty(verdict.conclusion)}")
    return EXIT_OK


@stable_command
def cmd_systems(args) -> int:
    registry = default_registry()
    if args.name:
        print(registry.get(args.name).manifest())
        return EXIT_OK
    for name in registry.names():
        system = registry.get(name)
        print(f"{name:<20} {system.label if system.label != name else ''}")
    return EXIT_OK


@stable_command
def cmd_scripts(args) -> int:
    if args.action == "list":
        for script_id, entry in scripts.SCRIPTS.items():
            print(f"{script_id:<20} {entry['statement']}")
        return EXIT_OK
    ids = None if args.all or not args.ids else args.ids
    if args.action == "run":
        results = scripts.run_all(ids)
        print(scripts.format_table(results))
        return EXIT_OK if all(r.accepted for r in results.values()) else EXIT_REJECTED
    directory = Path(args.directory)
    for script_id in scripts.check_ids(ids or list(scripts.SCRIPTS)):
        scripts.export_proofs(scripts.run_script(script_id), directory)
    return EXIT_OK


# ==================== Revision command ====================

def _frame(args):
    if args.frame:
        return experiments.load_frame(args.frame)
    if args.mode == "befs":
        return random_frame(random.Random(args.seed), args.worlds, properties=("reflexive", "left-total"))
    return frame_of_kind("reflexive", worlds=args.worlds)


@stable_command
def cmd_revise(args) -> int:
    fragment = experiments.load_fragment(args.fragment) if args.fragment else None
    if args.mode == "liar":
        report = experiments.experiment_liar(steps=args.max_iter)
    elif args.mode == "truth-teller":
        report = experiments.experiment_truth_teller(steps=args.max_iter)
    else:
        frame = _frame(args)
        sampler = InstanceSampler(args.seed)
        if args.mode == "local":
            report = experiments.experiment_local_validation(frame, fragment, args.target, args.max_iter, sampler)
        elif args.mode == "dcb":
            report = experiments.experiment_dcb_seed(frame, fragment, args.stages, sampler=sampler)
        else:
            report = experiments.experiment_revision_befs(frame, args.n, fragment,
                                                          seeds=range(args.seed, args.seed + args.seeds))
    print(report.table())
    if args.json:
        experiments.dump_report(report, args.json)
    return EXIT_OK if report.passed else EXIT_REJECTED


# ==================== Argument parsing ====================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="workbench", description="Knowledge and truth workbench")
    parser.add_argument("--seed", type=int, default=settings.SEED, help="sampler seed")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="DEBUG, INFO, WARNING or ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a term or formula and print it back")
    p.add_argument("text", help="syntax or a file holding it")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("code", help="Gödel code of syntax, or the syntax of a code")
    p.add_argument("text")
    p.add_argument("--decode", action="store_true", help="read text as a code and decode it")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("diag", help="fixed point of a formula with its witness proof")
    p.add_argument("formula", help="formula or a file holding it")
    p.add_argument("--var", default="y")
    p.add_argument("--name", default="")
    p.add_argument("--output", help="write the witness proof here")
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser("check", help="check a proof file")
    p.add_argument("file")
    p.add_argument("--system", help="override the '# system:' headers")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("systems", help="list systems or print one manifest")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_systems)

    p = sub.add_parser("scripts", help="run, list or export the proof scripts")
    p.add_argument("action", choices=("run", "list", "export"))
    p.add_argument("ids", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--directory", default="proofs", help="export target")
    p.set_defaults(func=cmd_scripts)

    p = sub.add_parser("revise", help="revision experiments over agency frames")
    p.add_argument("frame", nargs="?", help="frame JSON; a generated frame is used without one")
    p.add_argument("--fragment", help="fragment JSON; the default fragment is used without one")
    p.add_argument("--mode", choices=("local", "befs", "dcb", "liar", "truth-teller"), default="local")
    p.add_argument("--target", default="kt-ubf-ia", help=f"one of {', '.join(experiments.TARGETS)} or a system")
    p.add_argument("--max-iter", type=int, default=settings.MAX_ITER)
    p.add_argument("--stages", type=int, default=2, help="revisions checked in dcb mode")
    p.add_argument("--n", type=int, default=1, help="BEFS_n in befs mode")
    p.add_argument("--seeds", type=int, default=3, help="random starting functions in befs mode")
    p.add_argument("--worlds", type=int, default=3, help="size of a generated frame")
    p.add_argument("--json", help="also write the report as JSON")
    p.set_defaults(func=cmd_revise)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT_ERROR
    level = getattr(logging, str(args.log_level).upper(), None)
    if not isinstance(level, int):
        print(f"unknown log level {args.log_level}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    logging.basicConfig(level=level, format='%(asctime)s - %(levelname)s - %(message)s')
    logger.debug(f"🚀 {args.command} with seed {args.seed}")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
