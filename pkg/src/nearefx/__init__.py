"""Near-EFX partial allocations of indivisible goods with a small pool.

Exact rational arithmetic throughout; a compiled enumeration kernel with a
pure-Python fallback backs the exhaustive oracles (see sweeps.active_kernel).
"""

from .champion import Witness, heavy_envy, most_envious_agent, strong_envy
from .demand import (
    DemandClassification,
    GroupChampionGraph,
    build_group_champion_graph,
    check_high_demand_bound,
    classify_demand,
    rainbow_cycle_to_u3,
)
from .engine import (
    BoundCheck,
    SolveResult,
    TerminationBudget,
    TraceRecord,
    choose_d,
    initial_allocation,
    pool_within_bound,
    solve,
    solve_with_welfare_init,
    termination_budget,
)
from .envy import (
    EnvyGraph,
    SourceAssignment,
    assign_sources,
    build_envy_graph,
    eliminate_envy_cycles,
)
from .errors import (
    InternalInvariantError,
    InvalidInputError,
    NearEfxError,
    PreconditionError,
    ResourceLimitError,
    UnsupportedInputError,
)
from .model import (
    EfxReport,
    Instance,
    PartialAllocation,
    Rational,
    bundle_value,
    format_rational,
    nash_welfare_product,
    parse_rational,
    value_vector,
    verify_partial_efx,
)
from .oracle import (
    counterexample_instance,
    enumerate_complete_allocations,
    exhaustive_partial_efx_best,
    phi_lex_compare,
)
from .rainbow import (
    KPartiteDigraph,
    RainbowCycle,
    brute_force_rainbow_cycle,
    brute_force_rainbow_number,
    find_rainbow_cycle,
    lower_bound_graph,
    representative_set,
    sigma,
    verify_cover_condition,
    verify_rainbow_cycle,
)
from .rules import StepOutcome, U3CycleInput, try_u1, try_u2, try_u3
from .sweeps import active_kernel, compiled_available

__version__ = "0.1.0"
