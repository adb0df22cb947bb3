"""Automata as continuous self-maps of the p-adic integers.

Transducers over {0..p-1} realize continuous (n-unit delay) maps on the
p-adic integers.  This package extracts their Mahler coefficients,
decides the delay / measure-preservation / ergodicity coefficient
conditions, cross-validates every verdict against brute-force oracles on
finite quotients (fiber counts and cycle decompositions), and probes
geometric image density by exact box counting.
"""

from .errors import BudgetExceededError, FormatError, PrecisionError
from .mahler import (
    CheckStatus,
    ConditionReport,
    MahlerSeries,
    check_delay_conditions,
    check_ergodicity_conditions,
    check_measure_preserving_conditions,
    coeffs_from_oracle,
    eval_series,
    series_oracle,
)
from .oracle import FunctionOracle
from .padics import PadicInt, Valuation, binomial_eval, floor_log, make
from .quotient import (
    CycleReport,
    ReducedMap,
    cycles,
    endomap,
    is_measure_preserving_upto,
    preimage_counts,
    reduce_map,
    unique_cycle_upto,
)
from .transducer import (
    AsyncTransducer,
    SyncTransducer,
    delay_profile,
    family_transitivity,
    function_of,
    reachable_states,
    residual_map,
    run_async,
    run_sync,
)

__version__ = "0.1.0"
