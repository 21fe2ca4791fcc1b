"""Core domain types: alternatives, coalitions, ballots, profiles and TU games.

Coalitions are plain ``int`` bitmasks: bit ``i`` is set iff the alternative
with index ``i`` is a member. The empty coalition is ``0``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

Coalition = int

MAX_EXACT_ALTERNATIVES = 20


class ModelError(ValueError):
    """Raised when a domain object would violate its invariants."""


def members(coalition: Coalition) -> Iterator[int]:
    """Yield the member indices of ``coalition`` in increasing order."""
    while coalition:
        low = coalition & -coalition
        yield low.bit_length() - 1
        coalition ^= low


def size(coalition: Coalition) -> int:
    return coalition.bit_count()


@dataclass(frozen=True)
class AlternativeSet:
    """Ordered set of named alternatives; index positions are stable."""

    names: tuple[str, ...]
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ModelError("alternative set must not be empty")
        if len(names) > MAX_EXACT_ALTERNATIVES:
            raise ModelError(
                f"at most {MAX_EXACT_ALTERNATIVES} alternatives supported, got {len(names)}"
            )
        for name in names:
            if not isinstance(name, str) or not name.strip():
                raise ModelError(f"invalid alternative name {name!r}")
        if len(set(names)) != len(names):
            raise ModelError("alternative names must be unique")
        object.__setattr__(self, "_index", MappingProxyType({n: i for i, n in enumerate(names)}))

    @property
    def m(self) -> int:
        return len(self.names)

    @property
    def grand(self) -> Coalition:
        return (1 << self.m) - 1

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ModelError(f"unknown alternative {name!r}") from None

    def coalition(self, names: Iterable[str]) -> Coalition:
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return mask

    def names_of(self, coalition: Coalition) -> tuple[str, ...]:
        return tuple(self.names[i] for i in members(coalition))

    def is_valid(self, coalition: Coalition) -> bool:
        return isinstance(coalition, int) and 0 <= coalition <= self.grand

    def format(self, coalition: Coalition) -> str:
        """Render a coalition literal such as ``{a,b}``."""
        return "{" + ",".join(self.names_of(coalition)) + "}"

    def all_coalitions(self, max_size: int | None = None) -> list[Coalition]:
        """Non-empty coalitions ordered by size, then lexicographically by index."""
        top = self.m if max_size is None else min(max_size, self.m)
        out = []
        for s in range(1, top + 1):
            for combo in itertools.combinations(range(self.m), s):
                out.append(sum(1 << i for i in combo))
        return out


@dataclass(frozen=True)
class Ballot:
    voter_id: str
    approved: frozenset[Coalition]

    def __post_init__(self):
        object.__setattr__(self, "approved", frozenset(self.approved))
        if not isinstance(self.voter_id, str) or not self.voter_id:
            raise ModelError(f"invalid voter id {self.voter_id!r}")
        if 0 in self.approved:
            raise ModelError(f"ballot {self.voter_id!r} approves the empty coalition")


@dataclass(frozen=True)
class EvaluationProfile:
    """The voters' approvals over groups of alternatives."""

    alternatives: AlternativeSet
    ballots: tuple[Ballot, ...] = ()

    def __post_init__(self):
        ballots = tuple(self.ballots)
        object.__setattr__(self, "ballots", ballots)
        seen = set()
        for ballot in ballots:
            if ballot.voter_id in seen:
                raise ModelError(f"duplicate voter id {ballot.voter_id!r}")
            seen.add(ballot.voter_id)
            for coalition in ballot.approved:
                if not self.alternatives.is_valid(coalition):
                    raise ModelError(
                        f"ballot {ballot.voter_id!r} references coalition {coalition:#x} "
                        f"outside {self.alternatives.m} alternatives"
                    )

    @property
    def n(self) -> int:
        return len(self.ballots)

    @property
    def voter_ids(self) -> tuple[str, ...]:
        return tuple(b.voter_id for b in self.ballots)

    def join(self, other: EvaluationProfile) -> EvaluationProfile:
        """Union of two profiles over disjoint voters."""
        if other.alternatives != self.alternatives:
            raise ModelError("profiles are over different alternative sets")
        overlap = set(self.voter_ids) & set(other.voter_ids)
        if overlap:
            raise ModelError(f"voter ids overlap: {sorted(overlap)}")
        return EvaluationProfile(self.alternatives, self.ballots + other.ballots)

    def with_ballot(self, approved: Iterable[Coalition], voter_id: str | None = None) -> EvaluationProfile:
        """Return a copy with one extra ballot appended."""
        if voter_id is None:
            taken = set(self.voter_ids)
            i = self.n + 1
            while f"v{i}" in taken:
                i += 1
            voter_id = f"v{i}"
        return EvaluationProfile(self.alternatives, self.ballots + (Ballot(voter_id, frozenset(approved)),))


@dataclass(frozen=True)
class TUGame:
    """A sparse transferable-utility game.

    ``worth`` maps non-empty coalitions to nonzero integer worths; absent
    coalitions are worth 0. Zero entries are dropped on construction.
    """

    alternatives: AlternativeSet
    worth: Mapping[Coalition, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for coalition, value in self.worth.items():
            if not self.alternatives.is_valid(coalition):
                raise ModelError(f"coalition {coalition:#x} outside {self.alternatives.m} alternatives")
            if value != int(value):
                raise ModelError(f"worths must be integers, got {value!r}")
            value = int(value)
            if value == 0:
                continue
            if coalition == 0:
                raise ModelError("the empty coalition must have worth 0")
            clean[coalition] = value
        object.__setattr__(self, "worth", MappingProxyType(dict(sorted(clean.items()))))

    @property
    def m(self) -> int:
        return self.alternatives.m

    def __call__(self, coalition: Coalition) -> int:
        return self.worth.get(coalition, 0)

    def __eq__(self, other):
        if not isinstance(other, TUGame):
            return NotImplemented
        return self.alternatives == other.alternatives and dict(self.worth) == dict(other.worth)

    def __hash__(self):
        return hash((self.alternatives, tuple(self.worth.items())))

    @property
    def grand_worth(self) -> int:
        return self(self.alternatives.grand)

    def __add__(self, other: TUGame) -> TUGame:
        return game_add(self, other)

    def __mul__(self, factor: int) -> TUGame:
        return TUGame(self.alternatives, {c: factor * v for c, v in self.worth.items()})

    __rmul__ = __mul__

    def __neg__(self) -> TUGame:
        return self * -1

    def __sub__(self, other: TUGame) -> TUGame:
        return game_add(self, -other)

    def describe(self) -> dict[str, int]:
        return {self.alternatives.format(c): v for c, v in self.worth.items()}


def null_game(alternatives: AlternativeSet) -> TUGame:
    return TUGame(alternatives, {})


def build_game(profile: EvaluationProfile) -> TUGame:
    """Count, for every coalition, how many ballots approve it."""
    counts: dict[Coalition, int] = {}
    for ballot in profile.ballots:
        for coalition in ballot.approved:
            counts[coalition] = counts.get(coalition, 0) + 1
    return TUGame(profile.alternatives, counts)


def game_add(g1: TUGame, g2: TUGame) -> TUGame:
    if g1.alternatives != g2.alternatives:
        raise ModelError("cannot add games over different alternative sets")
    total = dict(g1.worth)
    for coalition, value in g2.worth.items():
        total[coalition] = total.get(coalition, 0) + value
    return TUGame(g1.alternatives, total)


def identity_game(coalition: Coalition, alternatives: AlternativeSet) -> TUGame:
    if coalition == 0:
        raise ModelError("identity game needs a non-empty coalition")
    return TUGame(alternatives, {coalition: 1})


def permute_coalition(coalition: Coalition, perm: Sequence[int]) -> Coalition:
    """Map member ``i`` to ``perm[i]``."""
    out = 0
    for i in members(coalition):
        out |= 1 << perm[i]
    return out


def relabel_game(game: TUGame, perm: Sequence[int], alternatives: AlternativeSet | None = None) -> TUGame:
    """Image of ``game`` under the index permutation ``perm``."""
    alts = alternatives if alternatives is not None else game.alternatives
    return TUGame(alts, {permute_coalition(c, perm): v for c, v in game.worth.items()})


def relabel_profile(profile: EvaluationProfile, perm: Sequence[int]) -> EvaluationProfile:
    ballots = tuple(
        Ballot(b.voter_id, frozenset(permute_coalition(c, perm) for c in b.approved))
        for b in profile.ballots
    )
    return EvaluationProfile(profile.alternatives, ballots)
