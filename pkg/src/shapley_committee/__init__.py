"""Committee selection by Shapley value of generalized approval ballots."""

from .model import (
    AlternativeSet,
    Ballot,
    Coalition,
    EvaluationProfile,
    ModelError,
    TUGame,
    build_game,
    game_add,
    identity_game,
    null_game,
)
from .rules import (
    CollectiveRanking,
    Committee,
    TieError,
    collective_ranking,
    compare_rules,
    group_score_rule,
    k_approval,
    select_committee,
    sv_committee,
)
from .shapley import ScoreVector, shapley_dense, shapley_permutation_oracle, shapley_sparse

__version__ = "0.1.0"
