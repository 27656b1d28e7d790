"""Submodular maximization over independence systems.

Greedy, threshold greedy (as a MAX-UNION approximation), double greedy for
unconstrained maximization, TripleGreedy, exhaustive checkers for the
structural definitions, and the padding reduction from graph independent
set.
"""

from .core import (
    CapExceededError,
    DomainError,
    ElementSet,
    GroundSet,
    MembershipOracle,
    SystemClass,
    ValueOracle,
    marginal_gain,
    restrict_complement,
    restrict_to,
)
from .functions import (
    CoverageFunction,
    CutFunction,
    FacilityLocationFunction,
    ModularFunction,
    PhiObjective,
    evaluate,
    function_from_spec,
)
from .systems import (
    CardinalitySystem,
    EdgeIndependenceSystem,
    ExplicitSystem,
    Graph,
    IntersectionSystem,
    MatchingSystem,
    PartitionMatroid,
    PhiSystem,
    contains,
    phi_project,
    phi_reduce,
    system_from_spec,
)
from .algorithms import (
    RunRecord,
    brute_force,
    greedy,
    max_union_ratio,
    threshold_greedy,
    triple_greedy,
    unconstrained_max_deterministic,
    unconstrained_max_randomized,
)

__version__ = "0.1.0"
