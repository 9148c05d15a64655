# revision/experiments.py - revision experiments over agency frames and their reports
import json
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Union

from errors import FragmentError, FrameError, WorkbenchError
from deduction.builder import ProofBuilder
from deduction.kernel import check_proof
from deduction.systems import SystemDef, SystemRegistry, default_registry
from language import diagonal
from language.coding import code_of
from language.parser import parse_formula
from revision.evaluation import EvaluationFunction, ExplicitSet
from revision.fragment import Fragment
from revision.frames import AgencyFrame, frame_of_kind
from revision.sampling import InstanceSampler
from revision.semantics import Evaluator, InstanceReport, evaluate_instances, revisions
from revision.truth import TRUE, UNKNOWN
from stability import ManagedResource
from theorem_db import TheoremDB, get_theorem_db
import settings

logger = logging.getLogger(__name__)

TARGETS = {
    "kt-ubf-ia": "KT+UBF+IA",
    "kt-ubf-ia-in+": "KT+UBF+IA+In+",
    "kt-ubf-ia-in+in-": "KT+UBF+IA+In+In-",
}

# relation properties each validation target asks of the frame
TARGET_PROPERTIES = {
    "KT+UBF+IA": ("reflexive",),
    "KT+UBF+IA+In+": ("reflexive", "transitive"),
    "KT+UBF+IA+In+In-": ("reflexive", "transitive", "euclidean"),
}

STABLE_WINDOW = 4

DEFAULT_SEEDS = (
    "0 = 0", "S(0) = S(0)", "0 = S(0)", "S(0)+S(0) = S(S(0))", "~(0 = S(0))", "~(S(0) = 0)",
    "U(0)", "U(S(0))", "Ag(0)", "Ag(S(S(0)))",
    "T([[0 = 0]])", "T([[0 = S(0)]])", "T([[U(0)]])",
    "K2(0, [[0 = 0]])", "K2(1, [[0 = 0]])", "K2(0, [[U(0)]])", "K2(1, [[U(0)]])",
    "K2(0, [[T([[0 = 0]])]])", "K2(1, [[T([[0 = 0]])]])",
    "T([[K2(0, [[0 = 0]])]])", "T([[K2(1, [[0 = 0]])]])",
    "K2(0, [[T([[U(0)]])]])", "T([[K2(0, [[U(0)]])]])",
    "K2(0, [[K2(0, [[0 = 0]])]])", "K2(0, [[~K2(0, [[U(0)]])]])",
    "K1([[0 = 0]])", "0 = 0 -> U(0)", "U(0) & Ag(0)", "U(0) | ~U(0)",
    "forall x in Ag (K2(x, [[0 = 0]]))", "exists x (U(x))", "forall x (x = x)",
)

DEFAULT_POOL = ("0", "S(0)", "S(S(0))", "S(0)+S(0)", "S(S(S(0)))")


def default_fragment(cutoff: Optional[int] = None) -> Fragment:
    return Fragment.build(DEFAULT_SEEDS, DEFAULT_POOL, cutoff)


def seed_theorems(registry: Optional[SystemRegistry] = None, db: Optional[TheoremDB] = None) -> List:
    """Check a few small DCB proofs so the intensional seed has theorems to start from"""
    registry = registry or default_registry()
    db = db or get_theorem_db()
    proved = []
    for rule, text in (("eq", "0 = 0"), ("comp", "S(0)+S(0) = S(S(0))"),
                       ("comp", "~(0 = S(0))"), ("taut", "U(0) | ~U(0)")):
        b = ProofBuilder("DCB", f"seed {text}", registry)
        getattr(b, rule)(parse_formula(text))
        verdict = check_proof(b.build(), registry, db)
        if not verdict:
            raise WorkbenchError(f"seed theorem {text} was rejected: {verdict.describe()}")
        proved.append(verdict.conclusion)
    logger.debug(f"seeded {len(proved)} DCB theorem(s)")
    return proved


# ==================== Reports ====================

@dataclass
class ExperimentReport:
    name: str
    frame: AgencyFrame
    fragment: Fragment
    parameters: Dict = field(default_factory=dict)
    instances: InstanceReport = field(default_factory=InstanceReport)
    stages: List[Dict] = field(default_factory=list)
    findings: Dict = field(default_factory=dict)
    passed: bool = True
    counterexample: Optional[Dict] = None
    seconds: float = 0.0

    def header(self) -> List[str]:
        props = ", ".join(f"{p}={'yes' if ok else 'no'}" for p, ok in self.frame.properties().items())
        lines = [f"experiment {self.name}", self.fragment.header(), f"frame: {self.frame.describe()}",
                 f"frame properties: {props}"]
        lines.extend(f"{k}: {v}" for k, v in self.parameters.items())
        return lines

    def table(self) -> str:
        lines = self.header()
        if self.stages:
            lines.append(f"{'stage':>5}  {'instances':>9}  {'true':>6}  {'unknown':>7}  {'false':>5}")
            for row in self.stages:
                lines.append(f"{row['stage']:>5}  {row['instances']:>9}  {row['true']:>6}  "
                             f"{row['unknown']:>7}  {row['false']:>5}")
        by_axiom = self.instances.by_axiom()
        if by_axiom:
            lines.append("per axiom (true/unknown/false):")
            for axiom, counts in sorted(by_axiom.items()):
                lines.append(f"  {axiom}: {counts['true']}/{counts['unknown']}/{counts['false']}")
        lines.extend(f"{k}: {v}" for k, v in self.findings.items())
        if self.counterexample:
            c = self.counterexample
            lines.append(f"counterexample: {c['axiom']} at {c['world']}, stage {c['stage']}: {c['instance']}")
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'} in {self.seconds:.2f}s")
        return "\n".join(lines)

    def to_json(self) -> Dict:
        return {
            "experiment": self.name,
            "header": {
                "fragment_size": len(self.fragment),
                "cutoff": self.fragment.cutoff,
                "pool": self.fragment.to_json()["pool"],
                "frame_properties": self.frame.properties(),
            },
            "parameters": self.parameters,
            "summary": self.instances.summary(),
            "stages": self.stages,
            "findings": self.findings,
            "passed": self.passed,
            "counterexample": self.counterexample,
            "seconds": round(self.seconds, 3),
        }

    def _close(self):
        false_rows = self.instances.false_rows
        if false_rows:
            self.passed = False
            self.counterexample = self.counterexample or false_rows[0].to_json()


def _stage_row(stage: int, report: InstanceReport) -> Dict:
    return {"stage": stage, **report.summary()}


def _check_stage(frame: AgencyFrame, f: EvaluationFunction, instances, fragment: Fragment, stage: int,
                 db: TheoremDB, registry: SystemRegistry) -> InstanceReport:
    evaluator = Evaluator(frame, f, fragment, db, registry)
    report = InstanceReport()
    for world in frame.worlds:
        report.extend(evaluate_instances(world, f, instances, fragment, frame, stage, db, registry, evaluator))
    return report


# ==================== Experiments ====================

def experiment_dcb_seed(frame: AgencyFrame, fragment: Optional[Fragment] = None, stages: int = 0,
                        assignment: Optional[Mapping[str, str]] = None, sampler: Optional[InstanceSampler] = None,
                        db: Optional[TheoremDB] = None, registry: Optional[SystemRegistry] = None
                        ) -> ExperimentReport:
    """DCB instances under f(w) = theorems of S_w, and under its revisions up to stages"""
    registry = registry or default_registry()
    db = db or get_theorem_db()
    fragment = fragment or default_fragment()
    sampler = sampler or InstanceSampler()
    assignment = dict(assignment or frame.seed_systems or {w: "DCB" for w in frame.worlds})
    report = ExperimentReport("dcb", frame, fragment, {"seed systems": assignment, "stages": stages})
    with ManagedResource("dcb experiment") as scope:
        seed_theorems(registry, db)
        f0 = EvaluationFunction.intensional(assignment, registry)
        instances = sampler.sample(registry.get("DCB"), frame, fragment)
        for n, f in revisions(f0, fragment, frame, stages, db, registry):
            stage = _check_stage(frame, f, instances, fragment, n, db, registry)
            report.stages.append(_stage_row(n, stage))
            report.instances.extend(stage)
    report.seconds = scope.elapsed
    report.findings["left-total"] = frame.has_property("left-total")
    if not frame.has_property("left-total"):
        report.findings["note"] = "an agent without successors knows nothing, so UND^K can fail"
    report._close()
    return report


def resolve_target(target: str) -> str:
    return TARGETS.get(target.lower(), target)


def experiment_local_validation(frame: AgencyFrame, fragment: Optional[Fragment] = None, target: str = "kt-ubf-ia",
                                max_iter: Optional[int] = None, sampler: Optional[InstanceSampler] = None,
                                db: Optional[TheoremDB] = None, registry: Optional[SystemRegistry] = None
                                ) -> ExperimentReport:
    """Find the first stage m from which the target's instances stay non-false for a window of stages

    DCB instances are checked at every stage along the way.
    """
    registry = registry or default_registry()
    db = db or get_theorem_db()
    fragment = fragment or default_fragment()
    sampler = sampler or InstanceSampler()
    max_iter = settings.MAX_ITER if max_iter is None else max_iter
    system = registry.get(resolve_target(target))
    needed = TARGET_PROPERTIES.get(system.name, ("reflexive",))
    lacking = [p for p in needed if not frame.has_property(p)]
    if lacking:
        raise FrameError(f"{system.name} is validated on {', '.join(needed)} frames; this frame is not "
                         f"{', '.join(lacking)}")

    report = ExperimentReport("local", frame, fragment, {"target": system.name, "max_iter": max_iter,
                                                         "window": STABLE_WINDOW})
    with ManagedResource("local validation") as scope:
        seed_theorems(registry, db)
        assignment = dict(frame.seed_systems or {w: "DCB" for w in frame.worlds})
        f0 = EvaluationFunction.intensional(assignment, registry)
        target_instances = sampler.sample(system, frame, fragment)
        dcb_instances = sampler.sample(registry.get("DCB"), frame, fragment)
        clean: List[bool] = []
        for n, f in revisions(f0, fragment, frame, max_iter, db, registry):
            dcb = _check_stage(frame, f, dcb_instances, fragment, n, db, registry)
            if dcb.false_rows and report.counterexample is None:
                report.counterexample = dcb.false_rows[0].to_json()
            stage = _check_stage(frame, f, target_instances, fragment, n, db, registry)
            report.stages.append(_stage_row(n, stage))
            report.instances.extend(stage)
            clean.append(not stage.false_rows)
    report.seconds = scope.elapsed

    m = next((n for n in range(len(clean) - STABLE_WINDOW + 1) if all(clean[n:n + STABLE_WINDOW])), None)
    report.findings["m"] = m
    report.findings["dcb at every stage"] = report.counterexample is None
    if m is None:
        report.passed = False
        first = next((r for r in report.instances.false_rows), None)
        if first is not None and report.counterexample is None:
            report.counterexample = first.to_json()
        logger.warning(f"❌ no window of {STABLE_WINDOW} clean stages for {system.name} within {max_iter}")
    else:
        report.passed = report.counterexample is None
        if report.passed:
            logger.info(f"✅ {system.name} holds from stage {m} through {m + STABLE_WINDOW - 1}")
    return report


def befs_system(n: int, frame: AgencyFrame, registry: Optional[SystemRegistry] = None) -> SystemDef:
    """BEFS_n with V on reflexive frames, In+ on transitive ones and In- on Euclidean ones"""
    registry = registry or default_registry()
    befs = registry.befs(n)
    extras = registry.get("KT+UBF+IA+In+In-").axioms
    axioms, suffix = {}, ""
    for name, prop in (("V", "reflexive"), ("In+", "transitive"), ("In-", "euclidean")):
        if frame.has_property(prop):
            axioms[name] = extras[name]
            suffix += f"+{name}"
    return befs.extend(befs.name + suffix, axioms, budget=befs.budget)


def random_evaluation(rng: random.Random, frame: AgencyFrame, fragment: Fragment) -> EvaluationFunction:
    """An arbitrary explicit evaluation function over the fragment"""
    codes = sorted(fragment.codes)
    sets = {}
    for w in frame.worlds:
        true = frozenset(c for c in codes if rng.random() < 0.4)
        unknown = frozenset(c for c in codes if c not in true and rng.random() < 0.2)
        sets[w] = ExplicitSet(true, unknown)
    return EvaluationFunction(sets)


def experiment_revision_befs(frame: AgencyFrame, n: int, fragment: Optional[Fragment] = None,
                             seeds: Sequence[int] = (0, 1, 2), db: Optional[TheoremDB] = None,
                             registry: Optional[SystemRegistry] = None) -> ExperimentReport:
    """BEFS_n instances after n revisions of random starting functions"""
    if n < 1:
        raise FrameError(f"the BEFS experiment needs n >= 1, got {n}")
    if not frame.has_property("left-total"):
        raise FrameError("the BEFS experiment needs left-total relations")
    registry = registry or default_registry()
    db = db or get_theorem_db()
    fragment = fragment or default_fragment()
    system = befs_system(n, frame, registry)
    report = ExperimentReport("befs", frame, fragment, {"system": system.name, "n": n, "seeds": list(seeds)})
    with ManagedResource("befs experiment") as scope:
        for seed in seeds:
            rng = random.Random(seed)
            f = random_evaluation(rng, frame, fragment)
            for _, f in revisions(f, fragment, frame, n, db, registry):
                pass
            instances = InstanceSampler(seed).sample(system, frame, fragment)
            stage = _check_stage(frame, f, instances, fragment, n, db, registry)
            report.stages.append({**_stage_row(n, stage), "seed": seed})
            report.instances.extend(stage)
    report.seconds = scope.elapsed
    report._close()
    logger.info(f"{'✅' if report.passed else '❌'} {system.name}: {report.instances.total} instance verdicts "
                f"over {len(seeds)} seed(s)")
    return report


# ==================== Liar and truth-teller ====================

def _single_world() -> AgencyFrame:
    return frame_of_kind("reflexive", worlds=1, agents=(0,))


def memberships(sentence, f: EvaluationFunction, fragment: Fragment, frame: AgencyFrame, steps: int,
                db: Optional[TheoremDB] = None, registry: Optional[SystemRegistry] = None) -> List[str]:
    """Verdict of T(sentence) at the first world along the revision sequence"""
    code = code_of(sentence)
    world = frame.worlds[0]
    out = []
    for _, g in revisions(f, fragment, frame, steps, db, registry):
        value = g[world].value(code, db or get_theorem_db(), registry or default_registry())
        out.append(str(value))
    return out


def period(sequence: Sequence) -> Optional[int]:
    """Smallest p with sequence[k] == sequence[k + p] throughout, None without a repeat"""
    for p in range(1, len(sequence)):
        if all(sequence[k] == sequence[k + p] for k in range(len(sequence) - p)):
            return p
    return None


def _teller_runs(teller, frame: AgencyFrame, fragment: Fragment, steps: int, db: Optional[TheoremDB],
                 registry: Optional[SystemRegistry]):
    """Truth-teller memberships starting inside and outside the truth set"""
    world = frame.worlds[0]
    start_in = EvaluationFunction.explicit({world: [code_of(teller)]})
    teller_in = memberships(teller, start_in, fragment, frame, steps, db, registry)
    teller_out = memberships(teller, EvaluationFunction.empty(frame.worlds), fragment, frame, steps, db, registry)
    bistable = all(v == str(TRUE) for v in teller_in) and all(v != str(TRUE) for v in teller_out)
    return teller_in, teller_out, bistable


def experiment_truth_teller(steps: int = 6, db: Optional[TheoremDB] = None,
                            registry: Optional[SystemRegistry] = None) -> ExperimentReport:
    frame = _single_world()
    teller = diagonal.truth_teller(registry).sentence
    fragment = Fragment.build([teller], DEFAULT_POOL)
    report = ExperimentReport("truth-teller", frame, fragment, {"steps": steps})
    with ManagedResource("truth-teller experiment") as scope:
        teller_in, teller_out, bistable = _teller_runs(teller, frame, fragment, steps, db, registry)
    report.seconds = scope.elapsed
    report.findings.update({
        "truth-teller from {tau}": " ".join(teller_in),
        "truth-teller from {}": " ".join(teller_out),
        "truth-teller bistable": bistable,
    })
    report.passed = bistable
    return report


def experiment_liar(steps: int = 6, db: Optional[TheoremDB] = None,
                    registry: Optional[SystemRegistry] = None) -> ExperimentReport:
    """The liar flips membership at each stage; the truth-teller keeps whatever it starts with"""
    frame = _single_world()
    liar = diagonal.liar(registry).sentence
    teller = diagonal.truth_teller(registry).sentence
    fragment = Fragment.build([liar, teller], DEFAULT_POOL)
    report = ExperimentReport("liar", frame, fragment, {"steps": steps})
    with ManagedResource("liar experiment") as scope:
        liar_run = memberships(liar, EvaluationFunction.empty(frame.worlds), fragment, frame, steps, db, registry)
        teller_in, teller_out, bistable = _teller_runs(teller, frame, fragment, steps, db, registry)
    report.seconds = scope.elapsed
    liar_period = period(liar_run)
    report.findings.update({
        "liar": " ".join(liar_run),
        "liar period": liar_period,
        "truth-teller from {tau}": " ".join(teller_in),
        "truth-teller from {}": " ".join(teller_out),
        "truth-teller bistable": bistable,
    })
    report.passed = liar_period == 2 and bistable and str(UNKNOWN) not in liar_run
    return report


# ==================== Files ====================

def load_json(path: Union[str, Path]) -> Dict:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise FragmentError(f"{path} is not valid JSON: {e}") from None


def load_frame(path: Union[str, Path]) -> AgencyFrame:
    return AgencyFrame.from_json(load_json(path))


def load_fragment(path: Union[str, Path]) -> Fragment:
    return Fragment.from_json(load_json(path))


def dump_report(report: ExperimentReport, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(json.dumps(report.to_json(), indent=2), encoding="utf-8")
    logger.info(f"📝 report written to {path}")
    return path
