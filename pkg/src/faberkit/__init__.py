"""Exact verification of Faber-type set-partition identities.

The main entry points are re-exported here; see :mod:`faberkit.cli` for the
command-line interface.
"""
from __future__ import annotations

from .correlators import (
    CorrelatorKey,
    CorrelatorSystem,
    correlator_key,
    example1_system,
    example2_system,
    make_delta_system,
)
from .exact import (
    ExactRational,
    HalfInteger,
    bernoulli,
    binomial,
    double_factorial_odd,
    faber_constant,
    q_poly,
)
from .identities import (
    SimplexPoint,
    conjecture_rhs,
    eval_A,
    eval_E,
    eval_P,
    eval_P_nt,
    eval_P_split,
    eval_P_tilde,
    eval_R,
    eval_S,
    faber_integral,
    tilde_S_closed,
)
from .reports import VerificationReport
from .verify import verify_simplex

__version__ = "0.1.0"

__all__ = [
    "CorrelatorKey",
    "CorrelatorSystem",
    "ExactRational",
    "HalfInteger",
    "SimplexPoint",
    "VerificationReport",
    "bernoulli",
    "binomial",
    "conjecture_rhs",
    "correlator_key",
    "double_factorial_odd",
    "eval_A",
    "eval_E",
    "eval_P",
    "eval_P_nt",
    "eval_P_split",
    "eval_P_tilde",
    "eval_R",
    "eval_S",
    "example1_system",
    "example2_system",
    "faber_constant",
    "faber_integral",
    "make_delta_system",
    "q_poly",
    "tilde_S_closed",
    "verify_simplex",
]
