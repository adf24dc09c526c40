"""Command-line interface: ``cegames {solve,allocate,compare,gen,validate}``."""

from __future__ import annotations

import argparse
import sys
import warnings
from fractions import Fraction
from typing import Optional, Sequence

from . import allocation as al
from .coalition import brute_force_coalition
from .game import CEGame, build_game, check_monotone, check_superadditive
from .generate import PROFILES, random_situation
from .instance import InstanceError, dump_instance, load_instance
from .model import NonSMEError, OverSupplyPenaltyWarning, mask_of, members
from .nucleolus import nucleolus
from .report import (
    ALLOCATION_HEADER,
    COALITION_HEADER,
    allocation_rows,
    coalition_rows,
    comparison_rows,
    fmt,
    label,
    render,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_INVARIANT = 4

RULES = ("nea", "delta", "egal", "prop", "nucleolus")


class DomainError(Exception):
    pass


class _Ctx:
    def __init__(self, args):
        self.digits = args.digits
        self.form = args.format
        self.quiet = args.quiet

    def out(self, text: str) -> None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")

    def note(self, text: str) -> None:
        """Secondary information: stdout for tables, stderr for csv."""
        if self.quiet:
            return
        stream = sys.stderr if self.form == "csv" else sys.stdout
        print(text, file=stream)

    def warn(self, text: str) -> None:
        if not self.quiet:
            print(f"warning: {text}", file=sys.stderr)


def _game(path: str) -> tuple[CEGame, Optional[dict]]:
    inst = load_instance(path)
    return build_game(inst.situation), inst.weights


def _parse_coalition(text: str, n: int) -> int:
    try:
        ids = [int(t) for t in text.replace(" ", "").strip("{}").split(",") if t]
    except ValueError:
        raise InstanceError(f"bad coalition {text!r}") from None
    if any(not 1 <= i <= n for i in ids):
        raise InstanceError(f"coalition {text!r} names players outside 1..{n}")
    return mask_of(i - 1 for i in ids)


def cmd_solve(args, ctx: _Ctx) -> int:
    game, _ = _game(args.instance)
    if args.coalition:
        masks = [_parse_coalition(c, game.n) for c in args.coalition]
    else:
        masks = sorted(range(1, 1 << game.n), key=lambda m: (bin(m).count("1"), [i for i in range(game.n) if m >> i & 1]))
    ctx.out(render(COALITION_HEADER, coalition_rows(game, masks, ctx.digits), ctx.form))
    return EXIT_OK


def _rate_allocation(game: CEGame, rule: str, rho_text: str, weights, ctx: _Ctx) -> al.Allocation:
    if not game.complementary_exporters:
        raise DomainError("no complementary exporters in the grand coalition; rate rules do not apply")
    if rule == "egal":
        bound = al.egalitarian_bound(game)
        rho = al.rho_egalitarian(game) if rho_text == "auto" else Fraction(rho_text)
        ctx.note(f"rho = {fmt(rho, ctx.digits)} (stability bound {fmt(bound, ctx.digits)})")
        if rho > bound:
            ctx.warn("rho exceeds the stability bound; core membership is not guaranteed")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", al.NegativePayoffWarning)
            alloc = al.egalitarian_rate(game, rho, weights)
        for w in caught:
            ctx.warn(str(w.message))
        return alloc
    bound = al.proportional_bound(game)
    rho = al.rho_proportional(game) if rho_text == "auto" else Fraction(rho_text)
    ctx.note(f"rho = {fmt(rho, ctx.digits)} (stability bound {fmt(bound, ctx.digits)})")
    if rho > bound:
        ctx.warn("rho exceeds the stability bound; core membership is not guaranteed")
    if not 0 <= rho <= 1:
        raise DomainError("proportional rate needs 0 <= rho <= 1")
    return al.proportional_rate(game, rho, weights)


def _allocate(game: CEGame, rule: str, rho_text: str, weights, ctx: _Ctx) -> al.Allocation:
    if rule == "nea":
        return al.nea(game)
    if rule == "delta":
        return al.delta_proportional(game)
    if rule == "nucleolus":
        return nucleolus(game)
    return _rate_allocation(game, rule, rho_text, weights, ctx)


def _verdict(game: CEGame, alloc: al.Allocation) -> str:
    check = al.in_core(game, alloc)
    if check.in_core:
        return "yes"
    if not check.efficient:
        return "no (not efficient)"
    return f"no, worst {label(check.worst)}"


def cmd_allocate(args, ctx: _Ctx) -> int:
    game, weights = _game(args.instance)
    if args.rho != "auto":
        try:
            Fraction(args.rho)
        except ValueError:
            raise InstanceError(f"bad rho {args.rho!r}") from None
    alloc = _allocate(game, args.rule, args.rho, weights, ctx)
    ctx.out(render(ALLOCATION_HEADER, allocation_rows(args.rule, alloc.payoffs, ctx.digits), ctx.form))
    check = al.in_core(game, alloc)
    ctx.note(f"sum = {fmt(alloc.total(), ctx.digits)}, v(N) = {fmt(game.values[game.grand], ctx.digits)}")
    worst = f"{label(check.worst)} (excess {fmt(check.worst_excess, ctx.digits)})" if check.worst is not None else "-"
    ctx.note(f"in-core: {'yes' if check.in_core else 'no'}; worst coalition {worst}")
    return EXIT_OK


def cmd_compare(args, ctx: _Ctx) -> int:
    game, weights = _game(args.instance)
    columns = [("nea", al.nea(game)), ("delta", al.delta_proportional(game))]
    notes = []
    if game.complementary_exporters:
        rho_e = al.rho_egalitarian(game)
        rho_p = al.rho_proportional(game)
        columns.append(("egal", al.egalitarian_rate(game, rho_e, weights)))
        columns.append(("prop", al.proportional_rate(game, rho_p, weights)))
        notes.append(f"rho_E = {fmt(rho_e, ctx.digits)}")
        notes.append(f"rho_P = {fmt(rho_p, ctx.digits)}")
    else:
        notes.append("rate rules omitted: no complementary exporters in the grand coalition")
    columns.append(("nucleolus", nucleolus(game)))
    if ctx.form == "csv":
        rows = []
        for name, alloc in columns:
            rows.extend(allocation_rows(name, alloc.payoffs, ctx.digits))
        ctx.out(render(ALLOCATION_HEADER, rows, "csv"))
        for name, alloc in columns:
            ctx.note(f"{name}: in-core {_verdict(game, alloc)}")
    else:
        header, rows = comparison_rows(
            [(n, a.payoffs) for n, a in columns],
            [_verdict(game, a) for _, a in columns],
            ctx.digits,
        )
        ctx.out(render(header, rows))
    for line in notes:
        ctx.note(line)
    return EXIT_OK


def cmd_gen(args, ctx: _Ctx) -> int:
    if args.n < 1:
        raise InstanceError("--n must be at least 1")
    situation = random_situation(args.n, args.seed, args.profile)
    text = dump_instance(situation)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args, ctx: _Ctx) -> int:
    inst = load_instance(args.instance)
    sit = inst.situation
    if sit.over_penalty < sit.price:
        ctx.note("note: over_penalty < price; over-supply is outside the model")
    game = build_game(sit)
    results = []
    results.append(("superadditive", bool(check_superadditive(game))))
    results.append(("monotone", bool(check_monotone(game))))
    v = game.values
    results.append(("no value without essentials", all(
        v[T] == 0 for T in range(1 << game.n) if not T & game.essential
    )))
    results.append(("non-potential players add nothing", all(
        v[S & sit.potential_mask] == v[S] for S in range(1 << game.n)
    )))
    results.append(("NEA in core", bool(al.in_core(game, al.nea(game)))))
    if len(members(sit.potential_mask)) <= 8:
        agree = all(
            brute_force_coalition(sit, S) == game.solutions[S] for S in range(1 << game.n)
        )
        results.append(("solver matches brute force", agree))
    failed = False
    for name, ok in results:
        ctx.out(f"{'ok  ' if ok else 'FAIL'}  {name}")
        failed |= not ok
    return EXIT_INVARIANT if failed else EXIT_OK


def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda d: argparse.SUPPRESS) if suppress else (lambda d: d)
    parser.add_argument("--digits", type=int, default=default(4), help="decimal places shown (default 4)")
    parser.add_argument("--format", choices=("table", "csv"), default=default("table"))
    parser.add_argument("--quiet", action="store_true", default=default(False), help="suppress notes and warnings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cegames", description=__doc__)
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="optimal exporters and value of every coalition")
    _common(p, suppress=True)
    p.add_argument("instance")
    p.add_argument("--coalition", action="append", help="1-based ids, e.g. 3,4 (repeatable)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("allocate", help="one allocation rule with its core verdict")
    _common(p, suppress=True)
    p.add_argument("instance")
    p.add_argument("--rule", choices=RULES, required=True)
    p.add_argument("--rho", default="auto", help="rate for egal/prop: a number or 'auto'")
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("compare", help="all rules side by side")
    _common(p, suppress=True)
    p.add_argument("instance")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen", help="write a random SME instance")
    _common(p, suppress=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--profile", choices=PROFILES, default="mixed")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="structural checks on an instance's game")
    _common(p, suppress=True)
    p.add_argument("instance")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    ctx = _Ctx(args)
    warnings.simplefilter("ignore", OverSupplyPenaltyWarning)
    try:
        return args.func(args, ctx)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NonSMEError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
