"""Context-weighted similarity scoring for first-order-logic arguments."""

from .backends import (
    EmbeddingCacheProvider,
    ExactMatchProvider,
    LookupTableProvider,
    MissingSymbolError,
    SymbolSimilarityProvider,
    load_backend,
)
from .cnf import (
    Clause,
    ClauseSet,
    CompiledArgument,
    Literal,
    SkolemNamer,
    bijective_equal,
    compile_argument,
    compile_formula,
    compile_set,
    fold_polarity,
)
from .core import (
    SimConfig,
    best_match_pairs,
    combine_eta,
    crossover_eta,
    membership,
    sim_arg,
    sim_clause,
    sim_lit_flat,
    sim_lit_weighted,
    sim_ord,
    sim_para,
    sim_sets_bm,
    sim_unord,
    tversky,
)
from .explain import Explanation, MatchRecord, emit, explain
from .syntax import (
    Argument,
    ArgumentFormatError,
    Formula,
    FreeVariableError,
    ParseError,
    parse_argument,
    parse_formula,
    render,
)
from .weights import (
    ComparisonWeights,
    ComponentWeights,
    MissingWeightError,
    WeightProfile,
    WeightValidationError,
    default_uniform,
    load_comparison_weights,
    uniform_comparison,
    validate,
)

__version__ = "0.1.0"
