"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line; the lines are printed in the
terminal summary (see conftest.py) and by running this file directly.
"""

import random
import time
from fractions import Fraction as F

from conftest import (
    EXAMPLE1_SCORES,
    EXAMPLE2_SCORES,
    EXAMPLE3_SECOND_SCORES,
    TABLE4_SCORES,
    load,
)
from shapley_committee.axioms import random_sweep
from shapley_committee.generate import default_alternatives, random_profile
from shapley_committee.io import parse_profile, serialize_profile
from shapley_committee.model import TUGame, build_game
from shapley_committee.rules import (
    collective_ranking,
    group_score_rule,
    k_approval,
    select_committee,
    sv_committee,
)
from shapley_committee.shapley import (
    shapley_dense,
    shapley_permutation_oracle,
    shapley_sparse,
)

RESULTS: list[str] = []


def verdict(number, title, failures, elapsed, limit=None):
    """Record one line for the criterion, then fail the test if anything went wrong."""
    if limit is not None and elapsed >= limit:
        failures.append(f"runtime {elapsed:.2f}s exceeds {limit}s")
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} {status}: {title} ({elapsed:.2f}s)"
    if failures:
        line += " | " + "; ".join(failures[:5])
        if len(failures) > 5:
            line += f"; ... {len(failures)} problems in total"
    RESULTS.append(line)
    print(line)
    assert not failures, line


def expect(failures, condition, message):
    if not condition:
        failures.append(message)


def within(scores, targets, tol=0.005):
    rendered = [float(v) for v in scores.rendered(2).values()]
    return all(abs(r - t) <= tol for r, t in zip(rendered, targets))


def test_criterion_1_example1():
    start = time.perf_counter()
    failures = []
    profile = load("table2.csv")
    game = build_game(profile)
    expect(failures, game.describe() == {
        "{a}": 4, "{b}": 2, "{c}": 4, "{a,b}": 2, "{a,c}": 1, "{b,c}": 4, "{a,b,c}": 4,
    }, f"worths {game.describe()}")
    scores = shapley_sparse(game)
    expect(failures, within(scores, (0.83, 1.33, 1.83)), f"rendered {scores.rendered(2)}")
    expect(failures, scores.scores == EXAMPLE1_SCORES == shapley_permutation_oracle(game).scores,
           f"exact {scores.scores}")
    ranking = collective_ranking(scores)
    expect(failures, ranking.tiers == (("c",), ("b",), ("a",)), f"ranking {ranking}")
    committee = select_committee(ranking, 2, "error")
    expect(failures, committee.member_set == {"c", "b"}, f"committee {committee.members}")
    verdict(1, "fixture table2 scores, ranking and committee", failures, time.perf_counter() - start, limit=1.0)


def test_criterion_2_example2():
    start = time.perf_counter()
    failures = []
    profile = load("table3.csv")
    alts = profile.alternatives
    scores = shapley_sparse(build_game(profile))
    expect(failures, scores.scores == EXAMPLE2_SCORES == (F(3, 2), 1, F(3, 2)), f"scores {scores.scores}")
    ranking = collective_ranking(scores)
    expect(failures, ranking.tiers == (("w", "s"), ("o",)), f"ranking {ranking}")
    expect(failures, select_committee(ranking, 2, "error").member_set == {"w", "s"}, "shapley committee")
    _, _, approval = k_approval(profile, 2)
    expect(failures, approval.member_set == {"w", "o"}, f"k-approval {approval.members}")
    _, winners = group_score_rule(profile, 2)
    expect(failures, winners == {alts.coalition("ws"), alts.coalition("os")},
           f"group score {[alts.format(c) for c in winners]}")
    verdict(2, "fixture table3 scores and baseline rules", failures, time.perf_counter() - start, limit=1.0)


def test_criterion_3_example3():
    start = time.perf_counter()
    failures = []
    profile = load("table4.json")
    alts = profile.alternatives
    game = build_game(profile)
    expect(failures, game.describe() == {"{a}": 4, "{b}": 1, "{c}": 3, "{e}": 3, "{a,c}": 4, "{a,c,e}": 1},
           f"worths {game.describe()}")
    scores = shapley_sparse(game)
    expect(failures, within(scores, (0.68, -0.48, 0.43, -0.73, 0.1)), f"rendered {scores.rendered(2)}")
    expect(failures, scores.scores == TABLE4_SCORES, f"exact {scores.scores}")
    expect(failures, sv_committee(profile, 3, "error").member_set == {"a", "c", "e"}, "k=3 committee")

    second = load("example3_second.json")
    assert dict(build_game(second).worth) == {alts.coalition("acd"): 1, alts.coalition("bcd"): 1}
    s2 = shapley_sparse(build_game(second))
    ranking = collective_ranking(s2)
    expect(failures, ranking.tiers == (("c", "d"), ("a", "b"), ("e",)), f"second ranking {ranking}")
    expect(failures, s2["e"] == F(-1, 10), f"phi_e = {s2['e']}")
    expect(failures, s2["a"] == s2["b"] == F(-1, 60), f"phi_a = {s2['a']}, phi_b = {s2['b']}")
    expect(failures, s2.scores == EXAMPLE3_SECOND_SCORES, f"second exact {s2.scores}")
    extended = second.with_ballot([alts.coalition("cdb")])
    expect(failures, sv_committee(extended, 3, "error").member_set == {"c", "d", "b"}, "extra ballot committee")
    verdict(3, "fixture table4 scores, tie case and extra ballot", failures, time.perf_counter() - start, limit=1.0)


def random_game(rng, m):
    support = rng.randint(0, min(2**m - 1, 40))
    worth = {rng.randint(1, 2**m - 1): rng.randint(-5, 5) for _ in range(support)}
    return TUGame(default_alternatives(m), worth)


def test_criterion_4_evaluator_equivalence():
    start = time.perf_counter()
    failures = []
    rng = random.Random(404)
    for trial in range(500):
        game = random_game(rng, rng.randint(1, 8))
        sparse, dense, oracle = shapley_sparse(game), shapley_dense(game), shapley_permutation_oracle(game)
        if not sparse.scores == dense.scores == oracle.scores:
            failures.append(f"small game {trial} disagrees: {game.describe()}")
    for trial in range(200):
        game = random_game(rng, rng.randint(9, 14))
        if shapley_sparse(game).scores != shapley_dense(game).scores:
            failures.append(f"large game {trial} disagrees: {game.describe()}")
    verdict(4, "three evaluators agree on 500 games, sparse = dense on 200 more",
            failures, time.perf_counter() - start, limit=60.0)


def test_criterion_5_axiom_sweep():
    start = time.perf_counter()
    result = random_sweep(seed=2024, trials=1000, max_alternatives=10, max_voters=50, max_density=0.5)
    failures = []
    for name, report in result.reports.items():
        if report.witnesses:
            failures.append(f"{name}: {len(report.witnesses)} violations, first {report.witnesses[0]}")
        if result.checked[name] == 0:
            failures.append(f"{name}: never exercised")
    exercised = min(result.checked.values())
    verdict(5, f"axiom sweep over 1000 random profiles, each axiom exercised at least {exercised} times",
            failures, time.perf_counter() - start, limit=120.0)


def test_criterion_6_singleton_and_group_profiles():
    start = time.perf_counter()
    failures = []
    rng = random.Random(606)
    for trial in range(300):
        m = rng.randint(1, 8)
        profile = random_profile(m, rng.randint(0, 40), rng.uniform(0, 0.5), rng.getrandbits(64), sizes=[1])
        _, approval_ranking, _ = k_approval(profile, 1)
        shapley_ranking = collective_ranking(shapley_sparse(build_game(profile)))
        if shapley_ranking.tiers != approval_ranking.tiers:
            failures.append(f"singleton profile {trial}: {shapley_ranking} vs {approval_ranking}")

    tested = mismatched = 0
    first_mismatch = None
    while tested < 300:
        m = rng.randint(2, 8)
        k = rng.randint(1, m)
        profile = random_profile(m, rng.randint(1, 40), rng.uniform(0.02, 0.5), rng.getrandbits(64), sizes=[k])
        _, winners = group_score_rule(profile, k)
        if len(winners) != 1:
            continue
        tested += 1
        [winner] = winners
        # Under a boundary tie any top-k choice counts, so the argmax only has to be one of them.
        scores = shapley_sparse(build_game(profile))
        names = profile.alternatives.names
        inside = [scores[o] for o in profile.alternatives.names_of(winner)]
        outside = [scores[o] for o in names if o not in profile.alternatives.names_of(winner)]
        if outside and min(inside) < max(outside):
            committee = sv_committee(profile, k, "lex")
            mismatched += 1
            if first_mismatch is None:
                first_mismatch = (f"m={m} k={k} argmax {profile.alternatives.format(winner)} "
                                  f"vs committee {{{','.join(committee.members)}}}")
    if mismatched:
        failures.append(f"size-k profiles: committee differs from the unique argmax "
                        f"in {mismatched}/{tested}, e.g. {first_mismatch}")
    verdict(6, f"singleton-only rankings (300 profiles) and size-k-only committees "
               f"({tested} unique-argmax profiles)", failures, time.perf_counter() - start)


def test_criterion_7_io_round_trip():
    start = time.perf_counter()
    failures = []
    rng = random.Random(707)
    for trial in range(100):
        m = rng.randint(1, 8)
        profile = random_profile(m, rng.randint(0, 30), rng.uniform(0, 0.5), rng.getrandbits(64), max_group=m)
        for fmt in ("dense", "sparse"):
            if parse_profile(serialize_profile(profile, fmt), fmt) != profile:
                failures.append(f"profile {trial} lost in {fmt} round trip")
    for stem in ("table2", "table3", "table4"):
        if load(f"{stem}.csv") != load(f"{stem}.json"):
            failures.append(f"{stem} dense and sparse fixtures differ")
    verdict(7, "round trip of 100 random profiles in both formats", failures, time.perf_counter() - start)


if __name__ == "__main__":
    for name, test in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                test()
            except AssertionError:
                pass
