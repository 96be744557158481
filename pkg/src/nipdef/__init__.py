"""Finite set systems, teaching sets, eps-approximations and majority
certificates that define every type of a set system of bounded VC dimension."""

from .approx import Measure, Multiset, approx_error, find_approximation, min_approximation_size
from .certificate import (
    Certificate,
    UniformTemplate,
    compress_type,
    count_types_check,
    decode,
    eval_exists,
    eval_forall,
    make_template,
    verify_certificate,
)
from .corpus import FamilySpec, generate, parse_spec, standard_corpus
from .experiment import ExperimentRecord, run_experiment
from .game import (
    Committee,
    GameMatrix,
    HypothesisPool,
    SkolemTable,
    build_committee,
    build_pool,
    claimN_tuple,
    game_value,
    induced_signs,
)
from .setsystem import (
    SetSystem,
    TypeOverA,
    dual,
    restrict,
    shatters,
    symmetric_difference_family,
    trace_count,
    vc_dim,
)
from .teaching import (
    SignedTuple,
    TeachingSet,
    isolate,
    isolate_under_constraint,
    k_budget,
    min_teaching_set,
    t_budget,
    teaching_sequence,
)

__version__ = "0.1.0"
