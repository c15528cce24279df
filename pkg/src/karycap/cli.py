"""Command-line front end.

Verbs: info, importance, interaction, choquet, verify, integral-check,
convert.  Every command is deterministic given its flags (seeds
included).  Exit codes: 0 success / all checks passed, 1 validation or
check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import math
import sys
from typing import Sequence

from .choquet import choquet_kary, integral_check
from .game import MultichoiceGame, is_kary_capacity
from .indices import METHODS, interaction, interaction_all_upto
from .io import GameFormatError, load_game, save_game
from .verify import AXIOMS, verify_axiom
from . import indices, verify as _verify_mod


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GameFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="karycap",
        description="Importance/interaction indices for multilevel games "
        "and their Choquet-integral extension.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_game: bool = True) -> None:
        if with_game:
            p.add_argument("path", help="game file (canonical JSON)")
            p.add_argument(
                "--normalize",
                action="store_true",
                help="shift all values so the zero profile maps to 0",
            )
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--tol", type=float, default=1e-9, help="numeric tolerance")
        p.add_argument(
            "--limit",
            type=int,
            default=None,
            metavar="BITS",
            help="override the exponential-size guards (bits)",
        )

    p = sub.add_parser("info", help="summarize a game file")
    common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("importance", help="importance index of every attribute")
    common(p)
    p.set_defaults(func=cmd_importance)

    p = sub.add_parser("interaction", help="interaction indices")
    common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--order", type=int, help="all coalitions up to this size")
    group.add_argument("--set", dest="set_", metavar="SET", help='one coalition, e.g. "1,3"')
    p.add_argument("--method", choices=METHODS, default="closed_form")
    p.set_defaults(func=cmd_interaction)

    p = sub.add_parser("choquet", help="evaluate the extension at a real point")
    common(p)
    p.add_argument("--point", required=True, help='coordinates, e.g. "0.5,0.3"')
    p.set_defaults(func=cmd_choquet)

    p = sub.add_parser("verify", help="run the axiom suite")
    p.add_argument("path", nargs="?", help="optional game file used as the base game")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--axioms", default="all", help='"all" or letters like "L,N,E"')
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--n", type=int, default=3, help="attributes for random games")
    p.add_argument("--k", type=int, default=2, help="levels for random games")
    common(p, with_game=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("integral-check", help="Monte-Carlo check of one interaction")
    common(p)
    p.add_argument("--set", dest="set_", metavar="SET", required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_integral_check)

    p = sub.add_parser("convert", help="rewrite a game file in canonical uniform form")
    common(p)
    p.set_defaults(func=cmd_convert)

    return parser


def _load(args) -> MultichoiceGame:
    return load_game(args.path, normalize=args.normalize, limit_bits=args.limit)


def _parse_set(text: str) -> tuple[int, ...]:
    try:
        members = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f'cannot parse coalition "{text}"; expected e.g. "1,3"')
    if not members:
        raise UsageError("coalition must be nonempty")
    return members


def _coalition_key(T) -> str:
    return "+".join(str(i) for i in sorted(T))


def cmd_info(args) -> int:
    game = _load(args)
    doc = {
        "n": game.n,
        "k": game.k,
        "table_size": int(game.values.size),
        "v_zero": float(game.meta.get("v0_offset", 0.0)),
        "v_top": float(game.values[-1]),
        "is_kary_capacity": is_kary_capacity(game, args.tol),
    }
    if "k_list" in game.meta:
        doc["k_list"] = list(game.meta["k_list"])
    _emit(doc, args)
    return 0


def cmd_importance(args) -> int:
    game = _load(args)
    phis = [indices.importance(game, i, args.limit) for i in range(1, game.n + 1)]
    rhs = _verify_mod.efficiency_rhs(game)
    doc = {
        "importance": phis,
        "efficiency_rhs": rhs,
        "efficiency_gap": abs(math.fsum(phis) - rhs),
    }
    _emit(doc, args)
    return 0


def cmd_interaction(args) -> int:
    game = _load(args)
    if args.set_ is not None:
        T = _parse_set(args.set_)
        value = _method_value(game, T, args.method, args.limit)
        doc = {"method": args.method, "interactions": {_coalition_key(T): value}}
    else:
        if not 1 <= args.order <= game.n:
            raise ValueError(f"--order must be in 1..{game.n}")
        report = interaction_all_upto(game, args.order, args.method, args.limit)
        doc = {
            "method": args.method,
            "max_order": args.order,
            "interactions": {
                _coalition_key(T): val for T, val in report.interactions.items()
            },
        }
    _emit(doc, args)
    return 0


def _method_value(game, T, method, limit_bits):
    if method == "derivative_sum":
        return indices.interaction_via_derivatives(game, T, limit_bits)
    if method == "recursive":
        return indices.interaction_recursive(game, T)
    if method == "cellsum":
        from .choquet import interaction_cellsum

        return interaction_cellsum(game, T, limit_bits)
    return interaction(game, T, limit_bits)


def cmd_choquet(args) -> int:
    game = _load(args)
    try:
        z = [float(part) for part in args.point.split(",")]
    except ValueError:
        raise UsageError(f'cannot parse point "{args.point}"')
    value = choquet_kary(game, z)
    text = f"{value:.12g}"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fp:
            fp.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_verify(args) -> int:
    game = None
    if args.path:
        game = load_game(args.path, normalize=args.normalize, limit_bits=args.limit)
    if args.axioms == "all":
        axioms = list(AXIOMS)
    else:
        axioms = [a.strip().upper() for a in args.axioms.split(",") if a.strip()]
        unknown = [a for a in axioms if a not in AXIOMS]
        if unknown:
            raise UsageError(f"unknown axiom name(s): {', '.join(unknown)}")
    reports = [
        verify_axiom(a, args.trials, args.seed, args.n, args.k, args.tol, game)
        for a in axioms
    ]
    doc = {
        "reports": [r.as_dict() for r in reports],
        "passed": all(r.passed for r in reports),
    }
    _emit(doc, args)
    return 0 if doc["passed"] else 1


def cmd_integral_check(args) -> int:
    game = _load(args)
    T = _parse_set(args.set_)
    est = integral_check(game, T, args.samples, args.seed)
    closed = interaction(game, T, args.limit)
    gap = est.estimate - closed
    if est.std_error > 0.0:
        z = gap / est.std_error
    else:
        z = 0.0 if abs(gap) <= args.tol else math.inf
    doc = {
        "estimate": est.estimate,
        "std_error": est.std_error,
        "closed_form": closed,
        "z_score": z,
    }
    _emit(doc, args)
    return 0 if abs(z) <= 3.0 else 1


def cmd_convert(args) -> int:
    game = _load(args)
    if args.out:
        save_game(game, args.out)
    else:
        save_game(game, sys.stdout)
    return 0


def _emit(doc: dict, args) -> None:
    if args.format == "csv":
        text = _to_csv(doc)
    else:
        text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)


def _csv_num(x) -> str:
    return f"{x:.17g}" if isinstance(x, float) else str(x)


def _to_csv(doc: dict) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf)
    if "interactions" in doc:
        writer.writerow(["coalition", "value"])
        for key, val in doc["interactions"].items():
            writer.writerow([key, _csv_num(val)])
    elif "importance" in doc:
        writer.writerow(["attribute", "value"])
        for i, val in enumerate(doc["importance"], start=1):
            writer.writerow([i, _csv_num(val)])
        writer.writerow(["efficiency_rhs", _csv_num(doc["efficiency_rhs"])])
        writer.writerow(["efficiency_gap", _csv_num(doc["efficiency_gap"])])
    elif "reports" in doc:
        writer.writerow(["axiom", "trials", "max_gap", "passed", "failures"])
        for rep in doc["reports"]:
            writer.writerow(
                [
                    rep["axiom"],
                    rep["trials"],
                    _csv_num(rep["max_gap"]),
                    rep["passed"],
                    len(rep["failures"]),
                ]
            )
    else:
        writer.writerow(["key", "value"])
        for key, val in doc.items():
            writer.writerow([key, _csv_num(val)])
    return buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
