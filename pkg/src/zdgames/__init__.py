"""Zero-determinant strategies in iterated two-player games.

Build bimatrix games with any finite strategy counts, derive the Markov
chain of memory-one play, synthesize strategies that force linear relations
between the long-run scores (score pinning, extortion), and check
everything against exact stationary solves and seeded simulation.
"""

from .chain import (
    CofactorVector,
    FeasibilityReport,
    ScorePair,
    StationaryDistribution,
    TransitionMatrix,
    cofactor_row,
    expected_scores,
    stationary,
    transition_matrix,
    zd_feasibility_condition,
)
from .documents import load_game, load_strategy, save_game, save_strategy
from .errors import (
    DegenerateDenominator,
    DegenerateRatio,
    NoFeasiblePin,
    NonUniqueStationary,
    SchemaError,
    ZDGamesError,
)
from .extortion import (
    ConditionReport,
    ExtortionParams,
    FactorBounds,
    check_extortion_factor,
    chicken_extortion,
    extortion_factor_bounds,
    extortion_strategy,
    n2_conditions,
    theta_max,
)
from .model import (
    FILL_RULES,
    BimatrixGame,
    MemoryOneStrategy,
    PayoffVector,
    StateIndex,
    UnilateralColumn,
    chicken_family,
    complete_from_first_component,
    flatten_payoffs,
    make_game,
    make_strategy,
    make_symmetric,
    own_move_one_indicator,
    state_order,
    unilateral_column,
)
from .simulate import (
    ComparisonReport,
    ExtortionEstimate,
    SimulationConfig,
    SimulationReport,
    compare_to_stationary,
    play,
    verify_extortion_empirically,
)
from .zd import (
    RelationCheck,
    SynthesisResult,
    ZDCoefficients,
    extortion_coefficients,
    pin_opponent_score,
    press_dyson_determinant,
    score_combination,
    synthesize_zd_alpha,
    synthesize_zd_beta,
    verify_linear_relation,
)

__version__ = "0.1.0"

__all__ = [
    "BimatrixGame",
    "CofactorVector",
    "ComparisonReport",
    "ConditionReport",
    "DegenerateDenominator",
    "DegenerateRatio",
    "ExtortionEstimate",
    "ExtortionParams",
    "FactorBounds",
    "FeasibilityReport",
    "FILL_RULES",
    "MemoryOneStrategy",
    "NoFeasiblePin",
    "NonUniqueStationary",
    "PayoffVector",
    "RelationCheck",
    "SchemaError",
    "ScorePair",
    "SimulationConfig",
    "SimulationReport",
    "StateIndex",
    "StationaryDistribution",
    "SynthesisResult",
    "TransitionMatrix",
    "UnilateralColumn",
    "ZDCoefficients",
    "ZDGamesError",
    "check_extortion_factor",
    "chicken_extortion",
    "chicken_family",
    "cofactor_row",
    "compare_to_stationary",
    "complete_from_first_component",
    "expected_scores",
    "extortion_coefficients",
    "extortion_factor_bounds",
    "extortion_strategy",
    "flatten_payoffs",
    "load_game",
    "load_strategy",
    "make_game",
    "make_strategy",
    "make_symmetric",
    "n2_conditions",
    "own_move_one_indicator",
    "pin_opponent_score",
    "play",
    "press_dyson_determinant",
    "save_game",
    "save_strategy",
    "score_combination",
    "state_order",
    "stationary",
    "synthesize_zd_alpha",
    "synthesize_zd_beta",
    "theta_max",
    "transition_matrix",
    "unilateral_column",
    "verify_extortion_empirically",
    "verify_linear_relation",
    "zd_feasibility_condition",
]
