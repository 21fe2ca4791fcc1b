"""Seeded random evaluation profiles."""

from __future__ import annotations

import random
import string
from typing import Iterable

from .model import AlternativeSet, Ballot, EvaluationProfile, ModelError, size

MAX_SEED = 2**64 - 1


def default_alternatives(m: int) -> AlternativeSet:
    if not 1 <= m <= len(string.ascii_lowercase):
        raise ModelError(f"number of alternatives must be between 1 and 26, got {m}")
    return AlternativeSet(tuple(string.ascii_lowercase[:m]))


def random_ballots(
    rng: random.Random,
    alternatives: AlternativeSet,
    n: int,
    density: float,
    max_group: int | None = 3,
    sizes: Iterable[int] | None = None,
    prefix: str = "v",
) -> tuple[Ballot, ...]:
    """Each voter approves each eligible coalition independently with probability ``density``.

    Eligible coalitions are those of size at most ``max_group``, or exactly
    the sizes in ``sizes`` when given.
    """
    if not 0.0 <= density <= 1.0:
        raise ModelError(f"density must lie in [0, 1], got {density}")
    if n < 0:
        raise ModelError(f"number of voters must be non-negative, got {n}")
    if sizes is not None:
        allowed = set(sizes)
        pool = [c for c in alternatives.all_coalitions() if size(c) in allowed]
    else:
        if max_group is not None and max_group < 1:
            raise ModelError(f"max group size must be at least 1, got {max_group}")
        pool = alternatives.all_coalitions(max_group)
    return tuple(
        Ballot(f"{prefix}{v + 1}", frozenset(c for c in pool if rng.random() < density))
        for v in range(n)
    )


def random_profile(
    alternatives: int | AlternativeSet,
    voters: int,
    density: float,
    seed: int,
    max_group: int | None = 3,
    sizes: Iterable[int] | None = None,
) -> EvaluationProfile:
    if not 0 <= seed <= MAX_SEED:
        raise ModelError(f"seed must be an unsigned 64-bit integer, got {seed}")
    alts = default_alternatives(alternatives) if isinstance(alternatives, int) else alternatives
    rng = random.Random(seed)
    return EvaluationProfile(alts, random_ballots(rng, alts, voters, density, max_group, sizes))
