# This file makes the revision directory a Python package
from .truth import FALSE, TRUE, UNKNOWN, ThreeValuedTruth
from .frames import AgencyFrame, frame_of_kind, random_frame
from .evaluation import EvaluationFunction, ExplicitSet, InducedExpansion, TheoremSet
from .fragment import Fragment
from .semantics import Evaluator, InstanceReport, check_instances, evaluate_instances, gamma, revisions, sat3
from .sampling import InstanceSampler
from .experiments import (
    ExperimentReport, TARGETS, default_fragment, experiment_dcb_seed, experiment_liar,
    experiment_local_validation, experiment_truth_teller, experiment_revision_befs, load_fragment, load_frame,
)

__all__ = [
    'FALSE', 'TRUE', 'UNKNOWN', 'ThreeValuedTruth',
    'AgencyFrame', 'frame_of_kind', 'random_frame',
    'EvaluationFunction', 'ExplicitSet', 'InducedExpansion', 'TheoremSet',
    'Fragment',
    'Evaluator', 'InstanceReport', 'check_instances', 'evaluate_instances', 'gamma', 'revisions', 'sat3',
    'InstanceSampler',
    'ExperimentReport', 'TARGETS', 'default_fragment', 'experiment_dcb_seed', 'experiment_liar',
    'experiment_local_validation', 'experiment_truth_teller', 'experiment_revision_befs', 'load_fragment', 'load_frame',
]
