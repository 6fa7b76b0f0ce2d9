"""Reasoning about cyber-physical system designs over a concern forest.

A declarative spec names the concerns of the NIST CPS Framework that a
design must satisfy, the properties addressing them, and the dynamics
(impacts, action effects, triggers) relating them. The package grounds
such a spec into a logic program under stable-model semantics and
answers satisfaction, completion, what-if, and mitigation queries.
"""

from .bundle import BundledExample, bundled_domain, bundled_examples, bundled_scenario
from .encoder import Base, Horizon, Mitigation, encode
from .encoder import Completion as CompletionMode
from .errors import (
    AmbiguousConcernError,
    CpsfError,
    HorizonTooSmallError,
    InconsistentSpecError,
    ResourceBudgetExceededError,
    TooLargeForOracleError,
    UnknownActionError,
    UnknownAtomError,
    UnknownConcernError,
    UnknownGoalError,
)
from .language import (
    EMPTY_SCENARIO,
    ParseError,
    QueryExpr,
    Scenario,
    SourceSpan,
    format_errors,
    parse_domain,
    parse_query,
    parse_scenario,
    render_domain,
    render_scenario,
)
from .model import (
    ActionDecl,
    AddressLink,
    Causes,
    ConcernForest,
    ConcernId,
    Condition,
    Default,
    DomainSpec,
    Impacts,
    SatAtom,
    SpecLit,
    SystemProp,
    Triggers,
    validate,
)
from .program import GroundProgram, Literal, ProgramBuilder, Rule, WeakConstraint
from .solver import (
    AnswerSet,
    brute_force_answer_sets,
    enumerate_answer_sets,
    is_answer_set,
    minimal_model,
    optimal_answer_sets,
    reduct,
)
from .tasks import (
    AllSatResult,
    Completion,
    MitigationPlan,
    Verdict,
    all_sat,
    check,
    complete_design,
    default_candidates,
    mitigate,
    resolve_goal,
    triggered_actions,
    what_if,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AnswerSet",
    "ActionDecl",
    "AddressLink",
    "AllSatResult",
    "AmbiguousConcernError",
    "Base",
    "BundledExample",
    "Causes",
    "Completion",
    "CompletionMode",
    "ConcernForest",
    "ConcernId",
    "Condition",
    "CpsfError",
    "Default",
    "DomainSpec",
    "EMPTY_SCENARIO",
    "GroundProgram",
    "Horizon",
    "HorizonTooSmallError",
    "Impacts",
    "InconsistentSpecError",
    "Literal",
    "Mitigation",
    "MitigationPlan",
    "ParseError",
    "ProgramBuilder",
    "QueryExpr",
    "ResourceBudgetExceededError",
    "Rule",
    "SatAtom",
    "Scenario",
    "SourceSpan",
    "SpecLit",
    "SystemProp",
    "TooLargeForOracleError",
    "Triggers",
    "UnknownActionError",
    "UnknownAtomError",
    "UnknownConcernError",
    "UnknownGoalError",
    "Verdict",
    "WeakConstraint",
    "all_sat",
    "brute_force_answer_sets",
    "bundled_domain",
    "bundled_examples",
    "bundled_scenario",
    "check",
    "complete_design",
    "default_candidates",
    "encode",
    "enumerate_answer_sets",
    "format_errors",
    "is_answer_set",
    "minimal_model",
    "mitigate",
    "optimal_answer_sets",
    "parse_domain",
    "parse_query",
    "parse_scenario",
    "reduct",
    "render_domain",
    "render_scenario",
    "resolve_goal",
    "triggered_actions",
    "validate",
    "what_if",
]
