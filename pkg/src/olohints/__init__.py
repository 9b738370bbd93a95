"""Online linear optimization on the unit ball with multiple imperfect hints."""

from .adversaries import (
    Scenario,
    ScenarioSpec,
    gen_alpha_lower,
    gen_complementary_pair,
    gen_correlated,
    gen_logK_lower,
    gen_random_signs,
    generate,
)
from .combiners import (
    AdaptiveOGD,
    DeterministicCombiner,
    DiagonalAdagrad,
    PNormFTRL,
    RandomizedCombiner,
    base_learner_zoo,
    khints_factory,
    unknown_alpha_learner,
)
from .core import Learner, RegretLedger, make_rng, play, project_to_ball, worst_case_regret
from .multi_hint import KHints, MWUHints, bad_step_set, smoothed_hinge
from .single_hint import OneHint
from .unconstrained import KTBettor, ParameterFreeLearner, UnconstrainedHints

__version__ = "0.1.0"

__all__ = [
    "AdaptiveOGD",
    "DeterministicCombiner",
    "DiagonalAdagrad",
    "KHints",
    "KTBettor",
    "Learner",
    "MWUHints",
    "OneHint",
    "PNormFTRL",
    "ParameterFreeLearner",
    "RandomizedCombiner",
    "RegretLedger",
    "Scenario",
    "ScenarioSpec",
    "UnconstrainedHints",
    "bad_step_set",
    "base_learner_zoo",
    "gen_alpha_lower",
    "gen_complementary_pair",
    "gen_correlated",
    "gen_logK_lower",
    "gen_random_signs",
    "generate",
    "khints_factory",
    "make_rng",
    "play",
    "project_to_ball",
    "smoothed_hinge",
    "unknown_alpha_learner",
    "worst_case_regret",
]
