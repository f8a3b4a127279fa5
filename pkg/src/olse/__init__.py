"""Ordered list subgraph embedding: exact, approximate and parameterized solvers."""
from ._accel import BACKEND, HAVE_NUMBA
from .approx import approx_olise, approx_olse, greedy_independent
from .core import (
    Embedding,
    EmbeddingCheck,
    InternalError,
    Instance,
    MalformedCertificateError,
    OlseError,
    PreconditionError,
    SizeGuardError,
    Solution,
    Variant,
    check_embedding,
    degree_stats,
    validate_instance,
)
from .exact import solve_dp_no_edges, solve_oracle
from .split import (
    ConflictGraph,
    SplitInstance,
    TrialBudget,
    build_conflict_graph,
    permutation_mis,
    simplify,
    solve_random_sep_simple,
    solve_split_fpt,
    split,
)
from .unordered import build_matching_graph, max_weight_matching, matching_to_solution, solve_lise_matching, solve_lse_rules
from .vc import min_vertex_cover, solve_vc_fpt

__version__ = "0.1.0"
