"""Exact Shapley values of TU games.

Three evaluators that must agree exactly:

* :func:`shapley_sparse` -- production path, linear in the game's support.
  Each stored coalition ``T`` with worth ``v`` is an identity game scaled by
  ``v``; it gives ``w(|T|-1) * v`` to every member and ``-w(|T|) * v`` to
  every non-member, where ``w(s) = s! (m-s-1)! / m!``.
* :func:`shapley_dense` -- the textbook sum over every ``S`` not containing
  ``i`` of ``w(|S|) * (v(S+i) - v(S))``.
* :func:`shapley_permutation_oracle` -- average marginal contribution over
  all ``m!`` join orders. Only for tiny games.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator

import numpy as np

from .model import MAX_EXACT_ALTERNATIVES, AlternativeSet, ModelError, TUGame, members

MAX_DENSE_ALTERNATIVES = MAX_EXACT_ALTERNATIVES
MAX_PERMUTATION_ALTERNATIVES = 8


@dataclass(frozen=True)
class ScoreVector:
    """One exact rational score per alternative, in alternative order."""

    alternatives: AlternativeSet
    scores: tuple[Fraction, ...]

    def __post_init__(self):
        scores = tuple(Fraction(s) for s in self.scores)
        if len(scores) != self.alternatives.m:
            raise ModelError(f"expected {self.alternatives.m} scores, got {len(scores)}")
        object.__setattr__(self, "scores", scores)

    def __getitem__(self, name: str) -> Fraction:
        return self.scores[self.alternatives.index(name)]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.scores)

    def __len__(self):
        return len(self.scores)

    def __add__(self, other: ScoreVector) -> ScoreVector:
        if other.alternatives != self.alternatives:
            raise ModelError("score vectors over different alternatives")
        return ScoreVector(self.alternatives, tuple(a + b for a, b in zip(self.scores, other.scores)))

    def __mul__(self, factor) -> ScoreVector:
        return ScoreVector(self.alternatives, tuple(factor * s for s in self.scores))

    __rmul__ = __mul__

    def total(self) -> Fraction:
        return sum(self.scores, Fraction(0))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.alternatives.names, self.scores))

    def rendered(self, places: int = 4) -> dict[str, str]:
        return {name: render_decimal(s, places) for name, s in self.as_dict().items()}


def render_decimal(value: Fraction, places: int = 4) -> str:
    """Round half-to-even at ``places`` decimals and format without exponent."""
    if places < 0:
        raise ValueError("places must be non-negative")
    rounded = round(Fraction(value), places)
    with localcontext() as ctx:
        ctx.prec = max(50, len(str(rounded.numerator)) + places + 5)
        text = Decimal(rounded.numerator) / Decimal(rounded.denominator)
        text = text.quantize(Decimal(1).scaleb(-places))
    out = f"{text:f}"
    if out.startswith("-") and Fraction(out) == 0:
        out = out[1:]
    return out


@lru_cache(maxsize=None)
def shapley_weights(m: int) -> tuple[Fraction, ...]:
    """``w(s) = s! (m-s-1)! / m!`` for ``s = 0 .. m-1``."""
    return tuple(Fraction(n, factorial(m)) for n in _weight_numerators(m)[:m])


@lru_cache(maxsize=None)
def _weight_numerators(m: int) -> tuple[int, ...]:
    # s! (m-s-1)! for s < m, plus a trailing 0 so that w(m) contributes nothing.
    return tuple(factorial(s) * factorial(m - s - 1) for s in range(m)) + (0,)


def _check_nonempty(game: TUGame):
    if game.m < 1:
        raise ModelError("game has no alternatives")


def shapley_sparse(game: TUGame) -> ScoreVector:
    _check_nonempty(game)
    m = game.m
    num = _weight_numerators(m)
    # Everyone first pays -w(|T|) * v; members are then credited w(|T|-1) + w(|T|).
    common = 0
    acc = [0] * m
    for coalition, value in game.worth.items():
        t = coalition.bit_count()
        common -= num[t] * value
        credit = (num[t - 1] + num[t]) * value
        for i in members(coalition):
            acc[i] += credit
    denom = factorial(m)
    return ScoreVector(game.alternatives, tuple(Fraction(a + common, denom) for a in acc))


def dense_worths(game: TUGame) -> np.ndarray:
    """Worth of every coalition ``0 .. 2^m - 1`` as a flat array."""
    m = game.m
    if m > MAX_DENSE_ALTERNATIVES:
        raise ModelError(f"dense enumeration limited to {MAX_DENSE_ALTERNATIVES} alternatives")
    biggest = max((abs(v) for v in game.worth.values()), default=0)
    dtype = np.int64 if biggest < 2**40 else object
    table = np.zeros(1 << m, dtype=dtype)
    for coalition, value in game.worth.items():
        table[coalition] = value
    return table


@lru_cache(maxsize=None)
def _popcounts(m: int) -> np.ndarray:
    counts = np.zeros(1 << m, dtype=np.int64)
    for bit in range(m):
        counts += (np.arange(1 << m) >> bit) & 1
    counts.setflags(write=False)
    return counts


def _without_bit(m: int, i: int) -> np.ndarray:
    everything = np.arange(1 << m, dtype=np.int64)
    return everything[(everything >> i) & 1 == 0]


def shapley_dense(game: TUGame) -> ScoreVector:
    _check_nonempty(game)
    m = game.m
    table = dense_worths(game)
    pop = _popcounts(m)
    weights = shapley_weights(m)
    scores = []
    for i in range(m):
        rest = _without_bit(m, i)
        marginal = table[rest | (1 << i)] - table[rest]
        by_size = np.zeros(m, dtype=table.dtype)
        np.add.at(by_size, pop[rest], marginal)
        scores.append(sum((weights[s] * int(by_size[s]) for s in range(m)), Fraction(0)))
    return ScoreVector(game.alternatives, tuple(scores))


def shapley_permutation_oracle(game: TUGame) -> ScoreVector:
    _check_nonempty(game)
    m = game.m
    if m > MAX_PERMUTATION_ALTERNATIVES:
        raise ModelError(
            f"permutation oracle limited to {MAX_PERMUTATION_ALTERNATIVES} alternatives, got {m}"
        )
    totals = [0] * m
    for order in itertools.permutations(range(m)):
        before = 0
        for i in order:
            after = before | (1 << i)
            totals[i] += game(after) - game(before)
            before = after
    denom = factorial(m)
    return ScoreVector(game.alternatives, tuple(Fraction(t, denom) for t in totals))


shapley = shapley_sparse
