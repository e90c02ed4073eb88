"""Round-synchronous simulation of the distributed (f+eps)-approximation for
minimum weight hypergraph vertex cover, with exact-arithmetic verification.

    >>> from mwhvc import Hypergraph, make_params, run
    >>> h = Hypergraph(2, (1, 1), [(0, 1)])
    >>> r = run(h, make_params(h, epsilon=1))
    >>> r.cover, r.iterations, str(r.dual_sum)
    ((0, 1), 2, '2/3')
"""

from .engine import RunResult, run
from .errors import (
    BudgetViolation,
    InvalidInstance,
    InvariantViolation,
    MWHVCError,
    ParameterError,
    ParseError,
    ProtocolError,
)
from .hypergraph import (
    Hypergraph,
    SetSystem,
    degree_stats,
    from_set_cover,
    read_hypergraph,
    validate,
    write_hypergraph,
)
from .params import Params, make_params
from .verify import brute_force_opt, certificate, verify_run

__version__ = "0.1.0"

__all__ = [
    "Hypergraph",
    "SetSystem",
    "Params",
    "RunResult",
    "make_params",
    "run",
    "validate",
    "degree_stats",
    "from_set_cover",
    "read_hypergraph",
    "write_hypergraph",
    "brute_force_opt",
    "certificate",
    "verify_run",
    "MWHVCError",
    "ParseError",
    "ParameterError",
    "ProtocolError",
    "InvariantViolation",
    "BudgetViolation",
    "InvalidInstance",
]
