"""Instance-level checks of the axioms behind the Shapley committee rule.

Detectors scan every coalition, so they are limited to the dense-mode
alternative cap. Checks return an :class:`AxiomReport`; a failed
precondition is a distinct status, never an exception.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Iterable

import numpy as np

from .generate import default_alternatives, random_ballots
from .model import (
    AlternativeSet,
    Coalition,
    EvaluationProfile,
    ModelError,
    TUGame,
    build_game,
    identity_game,
)
from .rules import collective_ranking, select_committee
from .shapley import ScoreVector, dense_worths, shapley_sparse

HOLDS = "holds"
VIOLATED = "violated"
PRECONDITION_UNMET = "precondition-unmet"


@dataclass(frozen=True)
class Witness:
    subject: tuple[str, ...]
    expected: Any
    actual: Any
    context: str = ""


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of one axiom check.

    ``status`` is ``holds``, ``violated`` or ``precondition-unmet``; it is
    ``violated`` exactly when ``witnesses`` is non-empty.
    """

    axiom: str
    status: str
    witnesses: tuple[Witness, ...] = ()
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def violated(self) -> bool:
        return self.status == VIOLATED


def _report(axiom: str, witnesses: Iterable[Witness], detail: str = "") -> AxiomReport:
    witnesses = tuple(witnesses)
    return AxiomReport(axiom, VIOLATED if witnesses else HOLDS, witnesses, detail)


def _without_bits(m: int, mask: int) -> np.ndarray:
    everything = np.arange(1 << m, dtype=np.int64)
    return everything[everything & mask == 0]


def find_neutral_alternatives(game: TUGame) -> frozenset[str]:
    """Alternatives whose joining never changes any coalition's worth."""
    table = dense_worths(game)
    found = set()
    for i, name in enumerate(game.alternatives.names):
        rest = _without_bits(game.m, 1 << i)
        if np.array_equal(table[rest | (1 << i)], table[rest]):
            found.add(name)
    return frozenset(found)


def find_dummy_alternatives(game: TUGame) -> frozenset[str]:
    """Alternatives that always add exactly their stand-alone worth."""
    table = dense_worths(game)
    found = set()
    for i, name in enumerate(game.alternatives.names):
        rest = _without_bits(game.m, 1 << i)
        if np.array_equal(table[rest | (1 << i)], table[rest] + table[1 << i]):
            found.add(name)
    return frozenset(found)


def find_symmetric_pairs(game: TUGame) -> frozenset[frozenset[str]]:
    table = dense_worths(game)
    names = game.alternatives.names
    pairs = set()
    for i, j in itertools.combinations(range(game.m), 2):
        rest = _without_bits(game.m, (1 << i) | (1 << j))
        if np.array_equal(table[rest | (1 << i)], table[rest | (1 << j)]):
            pairs.add(frozenset((names[i], names[j])))
    return frozenset(pairs)


def check_efficiency(game: TUGame, scores: ScoreVector) -> AxiomReport:
    total = scores.total()
    grand = game.grand_worth
    witnesses = [] if total == grand else [Witness(scores.alternatives.names, grand, total)]
    return _report("efficiency", witnesses, f"sum of scores {total}, grand coalition worth {grand}")


def check_one_person_one_vote(profile: EvaluationProfile, scores: ScoreVector) -> AxiomReport:
    grand = profile.alternatives.grand
    missing = [b.voter_id for b in profile.ballots if grand not in b.approved]
    if missing:
        return AxiomReport(
            "one-person-one-vote",
            PRECONDITION_UNMET,
            detail=f"ballots not approving the grand coalition: {', '.join(missing)}",
        )
    total = scores.total()
    witnesses = [] if total == profile.n else [Witness(scores.alternatives.names, profile.n, total)]
    return _report("one-person-one-vote", witnesses, f"sum of scores {total}, voters {profile.n}")


def check_null_player(game: TUGame, scores: ScoreVector) -> AxiomReport:
    witnesses = [
        Witness((name,), Fraction(0), scores[name])
        for name in sorted(find_neutral_alternatives(game))
        if scores[name] != 0
    ]
    return _report("neutral", witnesses)


def check_dummy(game: TUGame, scores: ScoreVector) -> AxiomReport:
    alts = game.alternatives
    witnesses = []
    for name in sorted(find_dummy_alternatives(game)):
        alone = game(1 << alts.index(name))
        if scores[name] != alone:
            witnesses.append(Witness((name,), Fraction(alone), scores[name]))
    return _report("dummy", witnesses)


def check_symmetry(game: TUGame, scores: ScoreVector) -> AxiomReport:
    ranking = collective_ranking(scores)
    witnesses = []
    for pair in sorted(find_symmetric_pairs(game), key=sorted):
        a, b = sorted(pair)
        if scores[a] != scores[b] or ranking.tier_of(a) != ranking.tier_of(b):
            witnesses.append(Witness((a, b), scores[a], scores[b]))
    return _report("symmetry", witnesses)


def _committee_totals(scores: ScoreVector, k: int) -> list[Fraction]:
    return [sum((scores.scores[i] for i in combo), Fraction(0))
            for combo in itertools.combinations(range(scores.alternatives.m), k)]


def check_consistency_join(
    e1: EvaluationProfile, e2: EvaluationProfile, k: int, max_committees: int = 120
) -> AxiomReport:
    """Score additivity under a disjoint-voter join, plus committee comparisons.

    Committees are compared by the total score of their members. When there
    are at most ``max_committees`` committees of size ``k`` every ordered pair
    is checked; otherwise only the additivity core is verified.
    """
    joined = e1.join(e2)
    m = joined.alternatives.m
    if not 1 <= k <= m:
        raise ModelError(f"committee size must be between 1 and {m}, got {k}")
    s1 = shapley_sparse(build_game(e1))
    s2 = shapley_sparse(build_game(e2))
    s12 = shapley_sparse(build_game(joined))
    witnesses = [
        Witness((name,), a + b, c, "score additivity")
        for name, a, b, c in zip(joined.alternatives.names, s1, s2, s12)
        if a + b != c
    ]
    detail = "score additivity"
    if comb(m, k) <= max_committees:
        detail += "; committee pairs by total member score"
        combos = list(itertools.combinations(joined.alternatives.names, k))
        t1, t2, t12 = (_committee_totals(s, k) for s in (s1, s2, s12))
        for x, y in itertools.permutations(range(len(combos)), 2):
            if t1[x] >= t1[y] and t2[x] >= t2[y]:
                strict = t1[x] > t1[y] or t2[x] > t2[y]
                if t12[x] < t12[y] or (strict and t12[x] == t12[y]):
                    witnesses.append(Witness(combos[x] + ("vs",) + combos[y],
                                             "preferred" if strict else "weakly preferred",
                                             t12[x] - t12[y], "committee order"))
    return _report("consistency", witnesses, detail)


def check_gain_loss(g1: TUGame, g2: TUGame) -> AxiomReport:
    if g1.alternatives != g2.alternatives:
        raise ModelError("games over different alternative sets")
    if g1.grand_worth != g2.grand_worth:
        return AxiomReport(
            "gain-loss",
            PRECONDITION_UNMET,
            detail=f"grand coalition worths differ: {g1.grand_worth} vs {g2.grand_worth}",
        )
    p1, p2 = shapley_sparse(g1), shapley_sparse(g2)
    names = g1.alternatives.names
    gainers = [i for i in range(g1.m) if p1.scores[i] > p2.scores[i]]
    has_loser = any(p1.scores[j] < p2.scores[j] for j in range(g1.m))
    witnesses = []
    if gainers and not has_loser:
        witnesses = [Witness((names[i],), p2.scores[i], p1.scores[i], "gain without loss") for i in gainers]
    return _report("gain-loss", witnesses)


def check_monotonicity(profile: EvaluationProfile, k: int, o: str, group: Coalition) -> AxiomReport:
    """Append one ballot approving exactly ``group`` and check ``o`` keeps its seat."""
    alts = profile.alternatives
    if not group >> alts.index(o) & 1:
        return AxiomReport("monotonicity", PRECONDITION_UNMET, detail=f"{o} not in {alts.format(group)}")
    before = shapley_sparse(build_game(profile))
    if o not in select_committee(collective_ranking(before), k, "lex"):
        return AxiomReport("monotonicity", PRECONDITION_UNMET, detail=f"{o} not in the size-{k} committee")
    extended = profile.with_ballot([group])
    after = shapley_sparse(build_game(extended))
    committee = select_committee(collective_ranking(after), k, "lex")
    witnesses = []
    if o not in committee:
        witnesses.append(Witness((o,), before[o], after[o], f"dropped after approval of {alts.format(group)}"))
    return _report("monotonicity", witnesses, f"score of {o}: {before[o]} -> {after[o]}")


def check_inclusive(scores: ScoreVector) -> AxiomReport:
    """committee(k) is contained in committee(k+1) for every k under ``lex``."""
    ranking = collective_ranking(scores)
    m = scores.alternatives.m
    witnesses = []
    previous = frozenset()
    for k in range(1, m + 1):
        current = select_committee(ranking, k, "lex").member_set
        if not previous <= current:
            witnesses.append(Witness(tuple(sorted(previous - current)), f"kept at k={k}", "dropped"))
        previous = current
    return _report("inclusive", witnesses)


# -- randomized sweeps -------------------------------------------------------

SWEEP_AXIOMS = (
    "efficiency",
    "neutral",
    "dummy",
    "symmetry",
    "consistency",
    "gain-loss",
    "monotonicity-singleton",
    "monotonicity-group",
    "inclusive",
)


def _random_profile(rng: random.Random, alts: AlternativeSet, n: int, density: float, max_group: int,
                    prefix: str = "v") -> EvaluationProfile:
    return EvaluationProfile(alts, random_ballots(rng, alts, n, density, max_group, prefix=prefix))


def _random_group_containing(rng: random.Random, m: int, i: int) -> Coalition:
    group = 1 << i
    for j in range(m):
        if j != i and rng.random() < 0.5:
            group |= 1 << j
    return group


@dataclass
class SweepResult:
    trials: int
    reports: dict[str, AxiomReport] = field(default_factory=dict)
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def violations(self) -> int:
        return sum(len(r.witnesses) for r in self.reports.values())


def random_sweep(
    seed: int,
    trials: int = 1000,
    max_alternatives: int = 10,
    max_voters: int = 50,
    max_density: float = 0.5,
) -> SweepResult:
    """Check every axiom on ``trials`` seeded random profiles.

    Each report accumulates witnesses across trials; ``checked`` counts how
    many instances actually exercised each axiom.
    """
    rng = random.Random(seed)
    found: dict[str, list[Witness]] = {name: [] for name in SWEEP_AXIOMS}
    checked = dict.fromkeys(SWEEP_AXIOMS, 0)

    def record(name: str, report: AxiomReport, trial: int):
        if report.status == PRECONDITION_UNMET:
            return
        checked[name] += 1
        for w in report.witnesses:
            found[name].append(Witness(w.subject, w.expected, w.actual, f"trial {trial}: {w.context}"))

    for trial in range(trials):
        m = rng.randint(1, max_alternatives)
        alts = default_alternatives(m)
        n = rng.randint(0, max_voters)
        density = rng.uniform(0.0, max_density)
        max_group = rng.randint(1, m)
        profile = _random_profile(rng, alts, n, density, max_group)
        game = build_game(profile)
        scores = shapley_sparse(game)

        record("efficiency", check_efficiency(game, scores), trial)
        record("neutral", check_null_player(game, scores), trial)
        record("dummy", check_dummy(game, scores), trial)
        record("symmetry", check_symmetry(game, scores), trial)
        record("inclusive", check_inclusive(scores), trial)

        split = rng.randint(0, n)
        first = EvaluationProfile(alts, profile.ballots[:split])
        second = EvaluationProfile(alts, profile.ballots[split:])
        record("consistency", check_consistency_join(first, second, rng.randint(1, m)), trial)

        other = build_game(_random_profile(rng, alts, rng.randint(0, max_voters), density, max_group, "u"))
        shift = game.grand_worth - other.grand_worth
        other = other + shift * identity_game(alts.grand, alts)
        record("gain-loss", check_gain_loss(game, other), trial)

        k = rng.randint(1, m)
        committee = select_committee(collective_ranking(scores), k, "lex")
        o = rng.choice(committee.members)
        i = alts.index(o)
        record("monotonicity-singleton", check_monotonicity(profile, k, o, 1 << i), trial)
        record("monotonicity-group", check_monotonicity(profile, k, o, _random_group_containing(rng, m, i)), trial)

    reports = {name: _report(name, found[name], f"{checked[name]} instances checked") for name in SWEEP_AXIOMS}
    return SweepResult(trials, reports, checked)
