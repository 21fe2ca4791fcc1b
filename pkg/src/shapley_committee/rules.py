"""Committee selection rules over exact score vectors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .model import AlternativeSet, Coalition, EvaluationProfile, ModelError, build_game
from .shapley import ScoreVector, shapley_sparse

TiePolicy = Literal["lex", "error", "report"]
TIE_POLICIES: tuple[str, ...] = ("lex", "error", "report")


class TieError(ValueError):
    """A score tie straddles the committee boundary under the ``error`` policy."""

    def __init__(self, k: int, tied: tuple[str, ...]):
        self.k = k
        self.tied = tied
        super().__init__(f"tie at position {k} between {', '.join(tied)}")


@dataclass(frozen=True)
class CollectiveRanking:
    """Weak order of alternatives: tiers of exactly equal score, best first.

    Members of a tier are listed in alternative order.
    """

    tiers: tuple[tuple[str, ...], ...]
    scores: ScoreVector

    @property
    def alternatives(self) -> AlternativeSet:
        return self.scores.alternatives

    def order(self) -> list[str]:
        """Flattened ranking with ties broken by ascending name."""
        return [name for tier in self.tiers for name in sorted(tier)]

    def tier_of(self, name: str) -> int:
        for position, tier in enumerate(self.tiers):
            if name in tier:
                return position
        raise ModelError(f"unknown alternative {name!r}")

    def __str__(self):
        return " > ".join(" ~ ".join(tier) for tier in self.tiers)


@dataclass(frozen=True)
class Committee:
    members: tuple[str, ...]
    k: int
    tie_broken: bool = False
    boundary_ties: frozenset[str] = field(default_factory=frozenset)

    def __contains__(self, name) -> bool:
        return name in self.members

    @property
    def member_set(self) -> frozenset[str]:
        return frozenset(self.members)


@dataclass(frozen=True)
class ApprovalScore:
    """Singleton approval counts, in alternative order."""

    alternatives: AlternativeSet
    counts: tuple[int, ...]

    def __getitem__(self, name: str) -> int:
        return self.counts[self.alternatives.index(name)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.alternatives.names, self.counts))


def collective_ranking(scores: ScoreVector) -> CollectiveRanking:
    by_score: dict[Fraction, list[str]] = {}
    for name, score in zip(scores.alternatives.names, scores.scores):
        by_score.setdefault(score, []).append(name)
    tiers = tuple(tuple(by_score[s]) for s in sorted(by_score, reverse=True))
    return CollectiveRanking(tiers, scores)


def select_committee(ranking: CollectiveRanking, k: int, policy: TiePolicy = "report") -> Committee:
    """Take the top ``k`` alternatives of ``ranking``.

    Whole tiers are taken until one straddles position ``k``. The straddling
    tier is cut by ascending name under ``lex`` and ``report``; ``report``
    additionally lists the whole tier in ``boundary_ties``. ``error`` raises
    :class:`TieError` instead.
    """
    m = ranking.alternatives.m
    if not 1 <= k <= m:
        raise ModelError(f"committee size must be between 1 and {m}, got {k}")
    if policy not in TIE_POLICIES:
        raise ValueError(f"unknown tie policy {policy!r}")
    chosen: list[str] = []
    for tier in ranking.tiers:
        room = k - len(chosen)
        if room == 0:
            break
        if len(tier) <= room:
            chosen.extend(tier)
            continue
        if policy == "error":
            raise TieError(k, tier)
        chosen.extend(sorted(tier)[:room])
        ties = frozenset(tier) if policy == "report" else frozenset()
        return Committee(tuple(chosen), k, tie_broken=True, boundary_ties=ties)
    return Committee(tuple(chosen), k)


def shapley_scores(profile: EvaluationProfile) -> ScoreVector:
    return shapley_sparse(build_game(profile))


def sv_committee(profile: EvaluationProfile, k: int, policy: TiePolicy = "report") -> Committee:
    """k-SV-CR: the Shapley committee of size ``k`` for ``profile``."""
    return select_committee(collective_ranking(shapley_scores(profile)), k, policy)


def approval_scores(profile: EvaluationProfile) -> ApprovalScore:
    alts = profile.alternatives
    counts = [0] * alts.m
    for ballot in profile.ballots:
        for i in range(alts.m):
            if 1 << i in ballot.approved:
                counts[i] += 1
    return ApprovalScore(alts, tuple(counts))


def k_approval(
    profile: EvaluationProfile, k: int, policy: TiePolicy = "report"
) -> tuple[ApprovalScore, CollectiveRanking, Committee]:
    approvals = approval_scores(profile)
    ranking = collective_ranking(ScoreVector(profile.alternatives, approvals.counts))
    return approvals, ranking, select_committee(ranking, k, policy)


def group_score_rule(profile: EvaluationProfile, k: int) -> tuple[dict[Coalition, int], frozenset[Coalition]]:
    """Score each size-``k`` group by its direct approvals; return all maximizers."""
    alts = profile.alternatives
    if not 1 <= k <= alts.m:
        raise ModelError(f"committee size must be between 1 and {alts.m}, got {k}")
    game = build_game(profile)
    scores = {}
    for combo in itertools.combinations(range(alts.m), k):
        coalition = sum(1 << i for i in combo)
        scores[coalition] = game(coalition)
    best = max(scores.values())
    return scores, frozenset(c for c, s in scores.items() if s == best)


@dataclass(frozen=True)
class RuleComparison:
    k: int
    shapley: ScoreVector
    shapley_ranking: CollectiveRanking
    shapley_committee: Committee
    approvals: ApprovalScore
    approval_ranking: CollectiveRanking
    approval_committee: Committee
    group_scores: dict[Coalition, int]
    group_winners: frozenset[Coalition]

    @property
    def alternatives(self) -> AlternativeSet:
        return self.shapley.alternatives

    @property
    def same_committee_as_approval(self) -> bool:
        return self.shapley_committee.member_set == self.approval_committee.member_set

    @property
    def same_ranking_as_approval(self) -> bool:
        return [set(t) for t in self.shapley_ranking.tiers] == [set(t) for t in self.approval_ranking.tiers]

    @property
    def shapley_is_group_winner(self) -> bool:
        coalition = self.alternatives.coalition(self.shapley_committee.members)
        return coalition in self.group_winners

    @property
    def refines_group_tie(self) -> bool:
        """Group score ties several groups and the Shapley committee picks one of them."""
        return len(self.group_winners) > 1 and self.shapley_is_group_winner


def compare_rules(profile: EvaluationProfile, k: int, policy: TiePolicy = "report") -> RuleComparison:
    scores = shapley_scores(profile)
    ranking = collective_ranking(scores)
    committee = select_committee(ranking, k, policy)
    approvals, approval_ranking, approval_committee = k_approval(profile, k, policy)
    group_scores, winners = group_score_rule(profile, k)
    return RuleComparison(
        k=k,
        shapley=scores,
        shapley_ranking=ranking,
        shapley_committee=committee,
        approvals=approvals,
        approval_ranking=approval_ranking,
        approval_committee=approval_committee,
        group_scores=group_scores,
        group_winners=winners,
    )
