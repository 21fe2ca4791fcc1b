"""Reading and writing profiles and result documents.

Two profile formats are supported:

``dense``
    CSV. The first header cell is ``voter``; every other header is a
    coalition literal such as ``{a}`` or ``{a,b}``. Cells are ``0``/``1``.
    Alternatives are taken in order of first appearance in the header.

``sparse``
    JSON ``{"alternatives": [...], "voters": [{"id": ..., "approves": [[...], ...]}]}``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import re
from fractions import Fraction
from typing import Any, Iterable

from .model import AlternativeSet, Ballot, Coalition, EvaluationProfile, ModelError, TUGame
from .rules import CollectiveRanking, Committee, RuleComparison
from .shapley import ScoreVector, render_decimal

log = logging.getLogger(__name__)

FORMATS = ("dense", "sparse")
MAX_DENSE_ALTERNATIVES = 16

_LITERAL = re.compile(r"^\{([^{}]*)\}$")


class ProfileError(ValueError):
    """Malformed or invalid profile input."""


def _text(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise ProfileError(f"input is not valid UTF-8: {exc}") from None
    elif data.startswith("﻿"):
        data = data[1:]
    return data.replace("\r\n", "\n").replace("\r", "\n")


def parse_coalition_literal(literal: str) -> tuple[str, ...]:
    match = _LITERAL.match(literal.strip())
    if not match:
        raise ProfileError(f"malformed coalition header {literal!r}")
    names = tuple(part.strip() for part in match.group(1).split(","))
    if not names or any(not name for name in names):
        raise ProfileError(f"malformed coalition header {literal!r}")
    if len(set(names)) != len(names):
        raise ProfileError(f"repeated alternative in coalition header {literal!r}")
    return names


def parse_profile(data: bytes | str, format: str) -> EvaluationProfile:
    if format == "dense":
        return _parse_dense(_text(data))
    if format == "sparse":
        return _parse_sparse(_text(data))
    raise ProfileError(f"unknown profile format {format!r}")


def _build(alternatives: Iterable[str], ballots: list[tuple[str, list[tuple[str, ...]]]]) -> EvaluationProfile:
    try:
        alts = AlternativeSet(tuple(alternatives))
    except ModelError as exc:
        raise ProfileError(str(exc)) from None
    out = []
    seen_ids = set()
    for voter_id, groups in ballots:
        if voter_id in seen_ids:
            raise ProfileError(f"duplicate voter id {voter_id!r}")
        seen_ids.add(voter_id)
        approved: set[Coalition] = set()
        for group in groups:
            if not group:
                raise ProfileError(f"voter {voter_id!r} approves an empty group")
            for name in group:
                if name not in alts:
                    raise ProfileError(f"voter {voter_id!r} approves unknown alternative {name!r}")
            if len(set(group)) != len(group):
                raise ProfileError(f"voter {voter_id!r} repeats an alternative inside {list(group)}")
            coalition = alts.coalition(group)
            if coalition in approved:
                log.warning("voter %s approves %s more than once; counted once", voter_id, alts.format(coalition))
            approved.add(coalition)
        try:
            out.append(Ballot(voter_id, frozenset(approved)))
        except ModelError as exc:
            raise ProfileError(str(exc)) from None
    return EvaluationProfile(alts, tuple(out))


def _parse_dense(text: str) -> EvaluationProfile:
    rows = [row for row in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in row)]
    if not rows:
        raise ProfileError("dense profile has no header")
    header = [cell.strip() for cell in rows[0]]
    if not header or header[0].lower() != "voter":
        raise ProfileError("dense header must start with a 'voter' column")
    columns = [parse_coalition_literal(cell) for cell in header[1:]]
    alternatives: list[str] = []
    for names in columns:
        for name in names:
            if name not in alternatives:
                alternatives.append(name)
    keys = [frozenset(names) for names in columns]
    if len(set(keys)) != len(keys):
        raise ProfileError("dense header repeats a coalition column")
    ballots = []
    for lineno, row in enumerate(rows[1:], start=2):
        cells = [cell.strip() for cell in row]
        if len(cells) != len(header):
            raise ProfileError(f"line {lineno}: expected {len(header)} cells, got {len(cells)}")
        voter_id = cells[0]
        if not voter_id:
            raise ProfileError(f"line {lineno}: empty voter id")
        groups = []
        for names, cell in zip(columns, cells[1:]):
            if cell not in ("0", "1"):
                raise ProfileError(f"line {lineno}: cell {cell!r} is not 0 or 1")
            if cell == "1":
                groups.append(names)
        ballots.append((voter_id, groups))
    return _build(alternatives, ballots)


def _parse_sparse(text: str) -> EvaluationProfile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "alternatives" not in doc:
        raise ProfileError("sparse profile needs an 'alternatives' array")
    alternatives = doc["alternatives"]
    voters = doc.get("voters", [])
    if not isinstance(alternatives, list) or not all(isinstance(a, str) for a in alternatives):
        raise ProfileError("'alternatives' must be an array of strings")
    if not isinstance(voters, list):
        raise ProfileError("'voters' must be an array")
    ballots = []
    for entry in voters:
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str):
            raise ProfileError(f"voter entry needs a string 'id': {entry!r}")
        groups = entry.get("approves", [])
        if not isinstance(groups, list) or not all(
            isinstance(g, list) and all(isinstance(x, str) for x in g) for g in groups
        ):
            raise ProfileError(f"voter {entry['id']!r}: 'approves' must be an array of name arrays")
        ballots.append((entry["id"], [tuple(g) for g in groups]))
    return _build(alternatives, ballots)


def _ordered(alts: AlternativeSet, approved: Iterable[Coalition]) -> list[Coalition]:
    return sorted(approved, key=lambda c: (c.bit_count(), [i for i in range(alts.m) if c >> i & 1]))


def serialize_profile(profile: EvaluationProfile, format: str) -> str:
    alts = profile.alternatives
    if format == "sparse":
        doc = {
            "alternatives": list(alts.names),
            "voters": [
                {"id": b.voter_id, "approves": [list(alts.names_of(c)) for c in _ordered(alts, b.approved)]}
                for b in profile.ballots
            ],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if format == "dense":
        if alts.m > MAX_DENSE_ALTERNATIVES:
            raise ProfileError(f"dense format limited to {MAX_DENSE_ALTERNATIVES} alternatives")
        columns = alts.all_coalitions()
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["voter"] + [alts.format(c) for c in columns])
        for b in profile.ballots:
            writer.writerow([b.voter_id] + ["1" if c in b.approved else "0" for c in columns])
        return buf.getvalue()
    raise ProfileError(f"unknown profile format {format!r}")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    num, sep, den = text.partition("/")
    if not sep:
        raise ValueError(f"expected 'num/den', got {text!r}")
    return Fraction(int(num), int(den))


def scores_document(scores: ScoreVector, places: int = 4) -> dict[str, Any]:
    return {
        "exact": {name: format_rational(s) for name, s in scores.as_dict().items()},
        "decimal": scores.rendered(places),
    }


def ranking_document(ranking: CollectiveRanking) -> list[list[str]]:
    return [list(tier) for tier in ranking.tiers]


def committee_document(committee: Committee) -> dict[str, Any]:
    return {
        "k": committee.k,
        "members": list(committee.members),
        "tie_broken": committee.tie_broken,
        "boundary_ties": sorted(committee.boundary_ties),
    }


def game_document(game: TUGame) -> dict[str, int]:
    return game.describe()


def report_document(report) -> dict[str, Any]:
    return {
        "axiom": report.axiom,
        "status": report.status,
        "detail": report.detail,
        "witnesses": [
            {
                "subject": list(w.subject),
                "expected": _jsonable(w.expected),
                "actual": _jsonable(w.actual),
                "context": w.context,
            }
            for w in report.witnesses
        ],
    }


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)


def serialize_results(
    scores: ScoreVector,
    ranking: CollectiveRanking | None = None,
    committee: Committee | None = None,
    reports: Iterable = (),
    places: int = 4,
) -> dict[str, Any]:
    """Result document with exact ``num/den`` scores and rendered decimals."""
    alts = scores.alternatives
    if ranking is not None and ranking.alternatives != alts:
        raise ModelError("ranking and scores are over different alternatives")
    doc: dict[str, Any] = {"alternatives": list(alts.names), "scores": scores_document(scores, places)}
    if ranking is not None:
        doc["ranking"] = ranking_document(ranking)
    if committee is not None:
        doc["committee"] = committee_document(committee)
    reports = list(reports)
    if reports:
        doc["axioms"] = [report_document(r) for r in reports]
    return doc


def comparison_document(cmp: RuleComparison, places: int = 4) -> dict[str, Any]:
    alts = cmp.alternatives
    return {
        "alternatives": list(alts.names),
        "k": cmp.k,
        "rules": {
            "shapley": {
                "scores": scores_document(cmp.shapley, places),
                "ranking": ranking_document(cmp.shapley_ranking),
                "committee": committee_document(cmp.shapley_committee),
            },
            "k-approval": {
                "scores": cmp.approvals.as_dict(),
                "ranking": ranking_document(cmp.approval_ranking),
                "committee": committee_document(cmp.approval_committee),
            },
            "group-score": {
                "scores": {alts.format(c): s for c, s in cmp.group_scores.items()},
                "winners": [list(alts.names_of(c)) for c in sorted(cmp.group_winners)],
            },
        },
        "agreement": {
            "shapley_vs_approval_committee": cmp.same_committee_as_approval,
            "shapley_vs_approval_ranking": cmp.same_ranking_as_approval,
            "shapley_is_group_winner": cmp.shapley_is_group_winner,
            "shapley_refines_group_tie": cmp.refines_group_tie,
        },
    }


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
