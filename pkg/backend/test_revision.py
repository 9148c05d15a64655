# test_revision.py - frames, three-valued satisfaction, revision and the experiments
import itertools
import json
import random
import time
from pathlib import Path

import numpy as np
import pytest

from errors import EvaluationError, FragmentError, FrameError
from language import diagonal
from language.coding import code_of
from language.parser import parse_formula
from revision import (
    FALSE, TRUE, UNKNOWN, AgencyFrame, EvaluationFunction, ExplicitSet, Fragment, InstanceSampler,
    ThreeValuedTruth, experiment_dcb_seed, experiment_liar, experiment_local_validation,
    experiment_revision_befs, experiment_truth_teller, frame_of_kind, gamma, load_fragment, load_frame,
    random_frame, sat3,
)
from revision.experiments import befs_system, period
from revision.frames import is_euclidean, is_left_total, is_reflexive, is_transitive
from revision.truth import all_of, any_of

DATA = Path(__file__).parent / "data"


# ==================== Truth values ====================

def test_strong_kleene_tables():
    assert UNKNOWN.neg() is UNKNOWN
    assert FALSE.conj(UNKNOWN) is FALSE
    assert TRUE.disj(UNKNOWN) is TRUE
    assert FALSE.implies(UNKNOWN) is TRUE
    assert UNKNOWN.implies(UNKNOWN) is UNKNOWN
    assert UNKNOWN.iff(TRUE) is UNKNOWN
    assert all_of([]) is TRUE and any_of([]) is FALSE
    assert ThreeValuedTruth.of(False) is FALSE
    assert str(UNKNOWN) == "unknown"


# ==================== Frames ====================

def _brute_force(r):
    n = len(r)
    idx = range(n)
    return {
        "reflexive": all(r[i][i] for i in idx),
        "transitive": all(not (r[i][j] and r[j][k]) or r[i][k] for i, j, k in itertools.product(idx, repeat=3)),
        "euclidean": all(not (r[i][j] and r[i][k]) or r[j][k] for i, j, k in itertools.product(idx, repeat=3)),
        "left-total": all(any(r[i]) for i in idx),
    }


def test_property_detectors_match_enumeration(rng):
    detectors = {"reflexive": is_reflexive, "transitive": is_transitive, "euclidean": is_euclidean,
                 "left-total": is_left_total}
    for _ in range(300):
        n = rng.randint(1, 4)
        r = np.array([[rng.random() < 0.5 for _ in range(n)] for _ in range(n)], dtype=bool)
        expected = _brute_force(r.tolist())
        for prop, detect in detectors.items():
            assert detect(r) == expected[prop], (prop, r.astype(int).tolist())


@pytest.mark.parametrize("kind, props", [
    ("reflexive", ("reflexive",)),
    ("preorder", ("reflexive", "transitive")),
    ("equivalence", ("reflexive", "transitive", "euclidean")),
])
def test_frames_of_each_kind(kind, props, rng):
    for frame in (frame_of_kind(kind), frame_of_kind(kind, worlds=4, rng=rng)):
        for prop in props:
            assert frame.has_property(prop)


def test_random_frames_have_requested_properties(rng):
    for props in (["left-total"], ["reflexive", "transitive"], ["reflexive", "euclidean"]):
        for _ in range(20):
            frame = random_frame(rng, rng.randint(1, 4), properties=props)
            assert all(frame.has_property(p) for p in props)


def test_frame_documents():
    frame = load_frame(DATA / "frame.json")
    assert frame.worlds == ("w0", "w1", "w2")
    assert frame.accessible(0, "w0", "w1") and not frame.accessible(1, "w0", "w1")
    assert frame.in_U("w2", 2) and frame.u_map("w1") == {0: 1}
    assert frame.has_property("reflexive") and not frame.has_property("transitive")
    assert not frame.has_property("transitive", 0) and frame.has_property("transitive", 1)
    again = AgencyFrame.from_json(json.loads(json.dumps(frame.to_json())))
    assert again.properties() == frame.properties()
    assert again.U == frame.U


@pytest.mark.parametrize("document", [
    {"worlds": ["w0"], "relations": {}},
    {"agents": [0], "worlds": ["w0"], "relations": {"0": [["w0", "w9"]]}},
    {"agents": [0], "worlds": ["w0", "w0"], "relations": {}},
    {"agents": [0], "worlds": ["w0"], "relations": {}, "U": {"w5": [1]}},
])
def test_bad_frame_documents(document):
    with pytest.raises(FrameError):
        AgencyFrame.from_json(document)


# ==================== Satisfaction ====================

def _codes(*texts):
    return [code_of(parse_formula(t)) for t in texts]


def test_sat3_on_a_small_frame(db, registry):
    frame = frame_of_kind("reflexive")
    fragment = Fragment.build(["K2(0, [[0 = 0]])", "K2(1, [[0 = 0]])", "K1([[0 = 0]])", "U(0)"])
    f = EvaluationFunction.explicit({"w0": _codes("0 = 0"), "w1": _codes("0 = 0"), "w2": []})

    def value(world, text):
        return sat3(world, f, parse_formula(text), fragment, frame, db, registry)

    assert value("w0", "U(0)") is TRUE
    assert value("w0", "U(S(0))") is FALSE
    assert value("w0", "T([[0 = 0]])") is TRUE
    assert value("w2", "T([[0 = 0]])") is FALSE
    assert value("w0", "K2(0, [[0 = 0]])") is TRUE
    assert value("w1", "K2(1, [[0 = 0]])") is FALSE
    assert value("w0", "K1([[0 = 0]])") is TRUE
    assert value("w0", "K2(S(S(0)), [[0 = 0]])") is FALSE
    assert value("w0", "forall x in Ag (Ag(x))") is TRUE
    assert value("w0", "forall x (x = x)") is UNKNOWN
    assert value("w0", "exists x (U(x))") is TRUE
    assert value("w0", "exists x (x = S(S(S(S(S(S(0)))))))") is UNKNOWN
    with pytest.raises(EvaluationError):
        value("w0", "U(x)")
    with pytest.raises(FrameError):
        value("w9", "U(0)")


def test_agents_without_successors_know_nothing(db, registry):
    relations = {0: np.array([[False, False], [False, True]]), 1: np.eye(2, dtype=bool)}
    frame = AgencyFrame((0, 1), ("w0", "w1"), relations)
    fragment = Fragment.build(["K2(0, [[0 = 0]])"])
    f = EvaluationFunction.explicit({"w0": _codes("0 = 0"), "w1": _codes("0 = 0")})
    assert sat3("w0", f, parse_formula("K2(0, [[0 = 0]])"), fragment, frame, db, registry) is FALSE
    assert sat3("w1", f, parse_formula("K2(0, [[0 = 0]])"), fragment, frame, db, registry) is TRUE


def test_explicit_sets_hold_sentence_codes():
    with pytest.raises(FrameError):
        ExplicitSet(frozenset({code_of(parse_formula("U(x)"))}))
    c = code_of(parse_formula("0 = 0"))
    with pytest.raises(FrameError):
        ExplicitSet(frozenset({c}), frozenset({c}))


def test_gamma_collects_true_sentences(db, registry):
    frame = frame_of_kind("reflexive", worlds=1, agents=(0,))
    fragment = Fragment.build(["T([[0 = 0]])", "0 = S(0)"])
    revised = gamma(EvaluationFunction.empty(frame.worlds), fragment, frame, db, registry)
    true = revised["w0"].true
    assert code_of(parse_formula("0 = 0")) in true
    assert code_of(parse_formula("T([[0 = 0]])")) not in true
    assert code_of(parse_formula("0 = S(0)")) not in true
    twice = gamma(revised, fragment, frame, db, registry)
    assert code_of(parse_formula("T([[0 = 0]])")) in twice["w0"].true


# ==================== Fragments ====================

def test_fragments_are_closed():
    fragment = Fragment.build(["K2(0, [[T([[0 = 0]])]])", "forall x (U(x))"], pool=["0", "S(0)"])
    assert fragment.is_closed()
    for text in ("T([[0 = 0]])", "0 = 0", "U(0)", "U(S(0))"):
        assert parse_formula(text) in fragment
    assert fragment.values() == [0, 1]


def test_fragment_errors():
    with pytest.raises(FragmentError):
        Fragment.build(["U(x)"])
    with pytest.raises(FragmentError):
        Fragment.build(["forall x (U(x) & x = x)"], limit=3)
    with pytest.raises(FragmentError):
        Fragment.from_json({"sentences": []})


def test_fragment_documents_name_fixed_points():
    fragment = load_fragment(DATA / "frag.json")
    assert diagonal.liar().sentence in fragment
    assert fragment.cutoff == 16
    assert fragment.is_closed()


def test_sampled_instances_speak_about_the_fragment(registry):
    frame = frame_of_kind("reflexive")
    fragment = Fragment.build(["K2(0, [[0 = 0]])", "T([[U(0)]])"], pool=["0", "S(0)"])
    first = InstanceSampler(seed=3).sample(registry.get("DCB"), frame, fragment)
    second = InstanceSampler(seed=3).sample(registry.get("DCB"), frame, fragment)
    assert first and [i.formula for i in first] == [i.formula for i in second]


# ==================== Experiments ====================

def test_liar_oscillates_and_truth_teller_is_bistable(db, registry):
    report = experiment_liar(steps=6, db=db, registry=registry)
    assert report.passed, report.table()
    assert report.findings["liar period"] == 2
    assert report.findings["truth-teller bistable"]
    assert period(["a", "b", "a", "b"]) == 2
    assert period(["a", "b", "c"]) is None


def test_truth_teller_keeps_its_start_value(db, registry):
    report = experiment_truth_teller(steps=4, db=db, registry=registry)
    assert report.passed, report.table()
    assert report.findings["truth-teller from {tau}"] == " ".join(["true"] * 5)


@pytest.mark.parametrize("kind, target", [
    ("reflexive", "kt-ubf-ia"),
    ("preorder", "kt-ubf-ia-in+"),
    ("equivalence", "kt-ubf-ia-in+in-"),
])
def test_local_validation_stabilizes(kind, target, db, registry):
    start = time.perf_counter()
    report = experiment_local_validation(frame_of_kind(kind), target=target, max_iter=12, db=db, registry=registry)
    assert report.passed, report.table()
    assert report.findings["m"] is not None and report.findings["m"] <= 8
    assert report.findings["dcb at every stage"]
    assert time.perf_counter() - start < 120
    summary = report.to_json()
    assert summary["header"]["frame_properties"]["reflexive"]
    assert summary["summary"]["false"] == len(report.instances.false_rows)


def test_local_validation_checks_frame_properties(db, registry):
    chain = np.eye(3, dtype=bool)
    chain[0, 1] = chain[1, 2] = True
    frame = AgencyFrame((0,), ("w0", "w1", "w2"), {0: chain})
    assert frame.has_property("reflexive") and not frame.has_property("transitive")
    with pytest.raises(FrameError):
        experiment_local_validation(frame, target="kt-ubf-ia-in+", db=db, registry=registry)
    frame = AgencyFrame((0,), ("w0",), {0: np.zeros((1, 1), dtype=bool)})
    with pytest.raises(FrameError):
        experiment_local_validation(frame, db=db, registry=registry)


def test_dcb_instances_under_theorem_seeds(db, registry):
    frame = load_frame(DATA / "frame.json")
    report = experiment_dcb_seed(frame, stages=2, db=db, registry=registry)
    assert report.passed, report.table()
    assert not report.instances.false_rows
    assert [row["stage"] for row in report.stages] == [0, 1, 2]


@pytest.mark.parametrize("n", [1, 2])
def test_befs_holds_after_n_revisions(n, db, registry):
    rng = random.Random(100 + n)
    total = 0
    for worlds in (2, 3, 4):
        frame = random_frame(rng, worlds, properties=["left-total"])
        start = time.perf_counter()
        report = experiment_revision_befs(frame, n, seeds=(0, 1, 2), db=db, registry=registry)
        assert time.perf_counter() - start < 120
        assert report.passed, report.table()
        assert not report.instances.false_rows
        total += report.instances.total
    assert total >= 500


def test_befs_system_follows_frame_properties(registry):
    equivalence = befs_system(2, frame_of_kind("equivalence"), registry)
    assert {"V", "In+", "In-"} <= set(equivalence.axioms)
    assert equivalence.budget == 1
    plain = befs_system(1, random_frame(random.Random(0), 2, properties=["left-total"]), registry)
    assert plain.name.startswith("BEFS_1")
    with pytest.raises(FrameError):
        experiment_revision_befs(frame_of_kind("reflexive"), 0, db=None, registry=registry)
