"""One-shot induction of parametric concept definitions.

A definition is learned from a single grounded example by refining its
variablized bottom clause under a score that combines coverage loss with
a compression distance between derived plans, asking a teacher to pick
among candidate constraint literals along the way.
"""

from .logic import (
    BUILTIN_ARITY,
    Clause,
    GroundExample,
    Literal,
    LogicError,
    Substitution,
    Term,
    Theory,
    apply_substitution,
    eval_builtin,
    intc,
    is_builtin,
    single,
    strc,
    var,
    variablize,
)
from .coverage import CoverageBudgetError, CoverageResult, covers
from .compressor import compress, compressed_size, decompress
from .distance import EPSILON_C, SENTINEL_DISTANCE, DistanceReport, conceptual_distance, ncd
from .plans import (
    ActionTemplate,
    Affine,
    CompositeRef,
    ExpansionError,
    ExpansionRule,
    GroundingError,
    check_decomposable,
    derive_plan,
    example_plan,
    ground_theory,
)
from .domain import ConstraintLibrary, ConstraintTemplate, Domain, ModeDecl
from .parsing import (
    ParseError,
    load_constraints,
    load_domain,
    load_example,
    load_theory,
    parse_constraints,
    parse_domain,
    parse_example,
    parse_theory,
    render_example,
)
from .search import SearchConfig, SearchContext, bottom_clause, neg_log_likelihood, refinements, search_step
from .advice import (
    AdviceEngine,
    AdvicePreference,
    AdviceQuery,
    Candidate,
    ReplayTeacher,
    ScriptedOracle,
    SilentTeacher,
    apply_advice,
    enumerate_candidates,
)
from .loop import InductionResult, IterationTrace, LoopConfig, evaluate_precision, run_induction, run_multi

__all__ = [name for name in dir() if not name.startswith("_")]
