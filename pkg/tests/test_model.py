import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shapley_committee.generate import default_alternatives, random_profile
from shapley_committee.model import (
    AlternativeSet,
    Ballot,
    EvaluationProfile,
    ModelError,
    TUGame,
    build_game,
    game_add,
    identity_game,
    members,
    null_game,
    permute_coalition,
    relabel_game,
    relabel_profile,
)

ABC = AlternativeSet(("a", "b", "c"))


def test_alternative_set_validation():
    with pytest.raises(ModelError):
        AlternativeSet(())
    with pytest.raises(ModelError):
        AlternativeSet(("a", "a"))
    with pytest.raises(ModelError):
        AlternativeSet(("a", ""))
    with pytest.raises(ModelError):
        AlternativeSet(tuple(f"x{i}" for i in range(21)))
    assert AlternativeSet(tuple(f"x{i}" for i in range(20))).m == 20


def test_coalition_helpers():
    ac = ABC.coalition(["c", "a"])
    assert ac == 0b101
    assert list(members(ac)) == [0, 2]
    assert ABC.names_of(ac) == ("a", "c")
    assert ABC.format(ac) == "{a,c}"
    assert ABC.is_valid(0) and ABC.is_valid(7) and not ABC.is_valid(8)
    assert ABC.all_coalitions() == [1, 2, 4, 3, 5, 6, 7]
    with pytest.raises(ModelError):
        ABC.coalition(["z"])


def test_ballot_rejects_empty_coalition():
    with pytest.raises(ModelError):
        Ballot("v1", frozenset({0, 1}))


def test_profile_invariants():
    with pytest.raises(ModelError):
        EvaluationProfile(ABC, (Ballot("v1", frozenset({1})), Ballot("v1", frozenset({2}))))
    with pytest.raises(ModelError):
        EvaluationProfile(ABC, (Ballot("v1", frozenset({8})),))
    assert EvaluationProfile(ABC).n == 0


def test_build_game_table2(example1):
    game = build_game(example1)
    assert game.describe() == {
        "{a}": 4, "{b}": 2, "{c}": 4, "{a,b}": 2, "{a,c}": 1, "{b,c}": 4, "{a,b,c}": 4,
    }


def test_build_game_table4(table4):
    game = build_game(table4)
    assert game.describe() == {"{a}": 4, "{b}": 1, "{c}": 3, "{e}": 3, "{a,c}": 4, "{a,c,e}": 1}


def test_build_game_empty_profile_is_null_game():
    assert build_game(EvaluationProfile(ABC)) == null_game(ABC)
    assert dict(null_game(ABC).worth) == {}


def test_build_game_single_voter():
    profile = EvaluationProfile(ABC, (Ballot("v1", frozenset({0b101})),))
    game = build_game(profile)
    assert dict(game.worth) == {0b101: 1}
    assert all(game(c) == 0 for c in range(8) if c != 0b101)


def test_tugame_canonical():
    game = TUGame(ABC, {1: 0, 2: 3})
    assert dict(game.worth) == {2: 3}
    assert game(0) == 0
    with pytest.raises(ModelError):
        TUGame(ABC, {0: 1})
    with pytest.raises(ModelError):
        TUGame(ABC, {1: 1.5})


def test_game_add():
    g = TUGame(ABC, {5: 1})
    assert g + null_game(ABC) == g
    assert dict(game_add(g, TUGame(ABC, {5: -1})).worth) == {}
    with pytest.raises(ModelError):
        game_add(g, null_game(AlternativeSet(("x", "y", "z"))))


def test_identity_game():
    e = identity_game(0b001, ABC)
    assert dict(e.worth) == {1: 1}
    assert all(e(t) == 0 for t in range(8) if t != 1)
    with pytest.raises(ModelError):
        identity_game(0, ABC)


def test_identity_decomposition(example1):
    game = build_game(example1)
    rebuilt = null_game(ABC)
    for coalition, worth in game.worth.items():
        rebuilt = rebuilt + worth * identity_game(coalition, ABC)
    assert rebuilt == game


profiles = st.builds(
    lambda m, n, d, seed: random_profile(m, n, d, seed, max_group=m),
    st.integers(1, 6), st.integers(0, 12), st.floats(0, 0.6), st.integers(0, 2**32),
)


@settings(max_examples=100, deadline=None)
@given(profiles, st.randoms(use_true_random=False))
def test_build_game_additive_over_voter_union(profile, rng):
    split = rng.randint(0, profile.n)
    first = EvaluationProfile(profile.alternatives, profile.ballots[:split])
    second = EvaluationProfile(profile.alternatives, profile.ballots[split:])
    assert build_game(first.join(second)) == game_add(build_game(first), build_game(second))
    assert first.join(second) == profile


@settings(max_examples=100, deadline=None)
@given(profiles)
def test_worths_bounded_by_voters(profile):
    assert all(0 <= w <= profile.n for w in build_game(profile).worth.values())


@settings(max_examples=100, deadline=None)
@given(profiles, st.randoms(use_true_random=False))
def test_anonymity_at_game_level(profile, rng):
    shuffled = list(profile.ballots)
    rng.shuffle(shuffled)
    assert build_game(EvaluationProfile(profile.alternatives, shuffled)) == build_game(profile)


@settings(max_examples=100, deadline=None)
@given(profiles, st.randoms(use_true_random=False))
def test_neutrality_at_game_level(profile, rng):
    perm = list(range(profile.alternatives.m))
    rng.shuffle(perm)
    assert build_game(relabel_profile(profile, perm)) == relabel_game(build_game(profile), perm)


def test_permute_coalition():
    assert permute_coalition(0b011, [2, 0, 1]) == 0b101


def test_join_rejects_overlap(example1):
    with pytest.raises(ModelError):
        example1.join(example1)


def test_with_ballot_fresh_id(example1):
    extended = example1.with_ballot([1])
    assert extended.n == 5
    assert extended.ballots[-1].voter_id == "v5"


def test_default_alternatives():
    assert default_alternatives(3).names == ("a", "b", "c")
    with pytest.raises(ModelError):
        default_alternatives(0)
