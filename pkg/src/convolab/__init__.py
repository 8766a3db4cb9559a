"""Desk-scale numerics for Fourier convolution operators.

convolab discretizes convolution operators with bounded symbols on Lp and
power-weighted Lp spaces and measures the facts that make them tractable:
variation-norm bounds on multiplier norms, maximal-function domination of
mollifier families, density of band-limited probes, and the decay of
modulation-conjugated operators when the symbol dies off at infinity.
"""

from .errors import InconclusiveError, NoConvergenceError
from .fourier import (
    EmbeddingReport,
    Mollifier,
    MollifyRow,
    StechkinReport,
    apply_multiplier,
    convolve,
    make_mollifier,
    mollify_sweep,
    multiplier_norm_lower_bound,
    schwartz_embedding_check,
    stechkin_check,
)
from .grid import (
    Grid,
    GridFunction,
    bump_profile,
    dft_pair,
    indicator_profile,
    make_grid,
    parse_profile,
    quadrature,
    random_mixture,
    sample,
    to_csv,
)
from .limitops import (
    ConjugatedResult,
    DensityResult,
    LimitSweepConfig,
    S0Probe,
    SweepRow,
    band_limited_probe,
    conjugated_apply,
    density_experiment,
    limit_operator_sweep,
    modulate,
    s0_test_function,
)
from .maximal import maximal_function, maximal_norm_estimate
from .spaces import (
    AxiomCheck,
    SpaceNorm,
    associate_space,
    axioms_report_json,
    space_norm,
    verify_axioms,
    weight_values,
)
from .symbols import (
    Symbol,
    SymbolNorms,
    TailBehavior,
    arctan_symbol,
    const_symbol,
    indicator_symbol,
    parse_symbol,
    rational_decay_symbol,
    shift_symbol,
    symbol_norms,
    tail_sup,
    tail_truncate,
)

__version__ = "0.1.0"
