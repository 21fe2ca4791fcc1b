"""Command-line entry point.

Exit codes: 0 success, 2 bad input or arguments, 3 boundary tie under
``--tie-break error``, 4 an axiom check was violated.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import axioms as ax
from .generate import MAX_SEED, random_profile
from .io import (
    FORMATS,
    ProfileError,
    comparison_document,
    dumps,
    parse_profile,
    report_document,
    serialize_profile,
    serialize_results,
)
from .model import EvaluationProfile, ModelError, build_game, relabel_game
from .rules import TIE_POLICIES, TieError, collective_ranking, compare_rules, select_committee
from .shapley import shapley_sparse

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_TIE = 3
EXIT_VIOLATED = 4

RULES = ("shapley", "k-approval", "group-score")
CHECKS = (
    "efficiency",
    "one-person-one-vote",
    "neutral",
    "dummy",
    "symmetry",
    "consistency",
    "gain-loss",
    "monotonicity",
    "inclusive",
)

class UsageError(Exception):
    pass


def _csv_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _density(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("density must lie in [0, 1]")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shapley-committee",
        description="Shapley-value committee selection from generalized approval ballots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p, need_k=True):
        p.add_argument("--input", required=True, help="profile file, or '-' for standard input")
        p.add_argument("--format", choices=FORMATS,
                       help="profile format (default: dense for .csv files, sparse otherwise)")
        p.add_argument("-k", type=_positive, required=need_k, default=None if need_k else 1,
                       help="committee size")
        p.add_argument("--decimals", type=_nonnegative, default=4, help="decimal places for rendered scores")

    elect = sub.add_parser("elect", help="Shapley scores, collective ranking and committee")
    with_input(elect)
    elect.add_argument("--tie-break", choices=TIE_POLICIES, default="lex")

    rank = sub.add_parser("rank", help="Shapley scores and collective ranking only")
    with_input(rank, need_k=False)

    compare = sub.add_parser("compare", help="compare the Shapley rule with k-approval and group score")
    with_input(compare)
    compare.add_argument("--tie-break", choices=TIE_POLICIES, default="lex")
    compare.add_argument("--rules", type=_csv_list, default=list(RULES),
                         help=f"comma-separated subset of {','.join(RULES)}")

    check = sub.add_parser("axioms", help="run axiom checks on the profile")
    with_input(check, need_k=False)
    check.add_argument("--check", type=_csv_list, default=list(CHECKS),
                       help=f"comma-separated subset of {','.join(CHECKS)}")

    gen = sub.add_parser("gen", help="emit a seeded random profile")
    gen.add_argument("--alternatives", type=_positive, required=True)
    gen.add_argument("--voters", type=_nonnegative, required=True)
    gen.add_argument("--density", type=_density, default=0.2)
    gen.add_argument("--max-group", type=_positive, default=3)
    gen.add_argument("--seed", type=_seed, required=True)
    gen.add_argument("--format", choices=FORMATS, default="sparse")
    return parser


def _load(args) -> EvaluationProfile:
    fmt = args.format
    if args.input == "-":
        data = sys.stdin.buffer.read()
        fmt = fmt or "sparse"
    else:
        path = Path(args.input)
        try:
            data = path.read_bytes()
        except OSError as exc:
            raise ProfileError(f"cannot read {path}: {exc.strerror}") from None
        fmt = fmt or ("dense" if path.suffix.lower() == ".csv" else "sparse")
    profile = parse_profile(data, fmt)
    if args.k is not None and not 1 <= args.k <= profile.alternatives.m:
        raise UsageError(f"-k must be between 1 and {profile.alternatives.m}, got {args.k}")
    return profile


def _warn_tie(committee, ranking):
    if committee.tie_broken:
        tier = ranking.tiers[ranking.tier_of(committee.members[-1])]
        print(f"warning: boundary tie at k={committee.k} among {', '.join(tier)}; broken by name order",
              file=sys.stderr)


def cmd_elect(args) -> int:
    profile = _load(args)
    scores = shapley_sparse(build_game(profile))
    ranking = collective_ranking(scores)
    committee = select_committee(ranking, args.k, args.tie_break)
    if args.tie_break == "lex":
        _warn_tie(committee, ranking)
    sys.stdout.write(dumps(serialize_results(scores, ranking, committee, places=args.decimals)))
    return EXIT_OK


def cmd_rank(args) -> int:
    profile = _load(args)
    scores = shapley_sparse(build_game(profile))
    sys.stdout.write(dumps(serialize_results(scores, collective_ranking(scores), places=args.decimals)))
    return EXIT_OK


def cmd_compare(args) -> int:
    unknown = sorted(set(args.rules) - set(RULES))
    if unknown:
        raise UsageError(f"unknown rule(s): {', '.join(unknown)}")
    profile = _load(args)
    cmp = compare_rules(profile, args.k, args.tie_break)
    if args.tie_break == "lex":
        _warn_tie(cmp.shapley_committee, cmp.shapley_ranking)
    doc = comparison_document(cmp, args.decimals)
    doc["rules"] = {name: body for name, body in doc["rules"].items() if name in args.rules}
    sys.stdout.write(dumps(doc))
    return EXIT_OK


def run_checks(profile: EvaluationProfile, names, k: int) -> list[ax.AxiomReport]:
    """Run the named axiom checks against one profile."""
    game = build_game(profile)
    scores = shapley_sparse(game)
    alts = profile.alternatives
    reports = []
    for name in names:
        if name == "efficiency":
            reports.append(ax.check_efficiency(game, scores))
        elif name == "one-person-one-vote":
            reports.append(ax.check_one_person_one_vote(profile, scores))
        elif name == "neutral":
            reports.append(ax.check_null_player(game, scores))
        elif name == "dummy":
            reports.append(ax.check_dummy(game, scores))
        elif name == "symmetry":
            reports.append(ax.check_symmetry(game, scores))
        elif name == "consistency":
            half = profile.n // 2
            first = EvaluationProfile(alts, profile.ballots[:half])
            second = EvaluationProfile(alts, profile.ballots[half:])
            reports.append(ax.check_consistency_join(first, second, k))
        elif name == "gain-loss":
            mirrored = relabel_game(game, list(reversed(range(alts.m))))
            reports.append(ax.check_gain_loss(game, mirrored))
        elif name == "monotonicity":
            committee = select_committee(collective_ranking(scores), k, "lex")
            witnesses = []
            for o in committee.members:
                for group in (1 << alts.index(o), alts.grand):
                    witnesses.extend(ax.check_monotonicity(profile, k, o, group).witnesses)
            reports.append(ax.AxiomReport("monotonicity", ax.VIOLATED if witnesses else ax.HOLDS,
                                          tuple(witnesses), "singleton and grand-coalition approvals"))
        elif name == "inclusive":
            reports.append(ax.check_inclusive(scores))
        else:
            raise UsageError(f"unknown axiom {name!r}")
    return reports


def cmd_axioms(args) -> int:
    unknown = sorted(set(args.check) - set(CHECKS))
    if unknown:
        raise UsageError(f"unknown axiom(s): {', '.join(unknown)}")
    profile = _load(args)
    reports = run_checks(profile, args.check, args.k)
    doc = {
        "alternatives": list(profile.alternatives.names),
        "voters": profile.n,
        "k": args.k,
        "axioms": [report_document(r) for r in reports],
    }
    sys.stdout.write(dumps(doc))
    return EXIT_VIOLATED if any(r.violated for r in reports) else EXIT_OK


def cmd_gen(args) -> int:
    profile = random_profile(args.alternatives, args.voters, args.density, args.seed, args.max_group)
    sys.stdout.write(serialize_profile(profile, args.format))
    return EXIT_OK


COMMANDS = {
    "elect": cmd_elect,
    "rank": cmd_rank,
    "compare": cmd_compare,
    "axioms": cmd_axioms,
    "gen": cmd_gen,
}


def main(argv=None) -> int:
    logging.basicConfig(format="%(levelname)s: %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except TieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TIE
    except (ProfileError, ModelError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
