"""Text and CSV rendering of coalition tables and allocation comparisons."""

from __future__ import annotations

import csv
import io
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from typing import Optional, Sequence

from .model import members


def fmt(x: Fraction, digits: int = 4) -> str:
    """Round half-even to ``digits`` places and drop trailing zeros."""
    q = Decimal(x.numerator) / Decimal(x.denominator)
    rounded = q.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN) if digits > 0 else q.quantize(Decimal(1))
    text = format(rounded, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    if text in ("-0", ""):
        text = "0"
    return text


def label(mask: int) -> str:
    """1-based set notation, ``{}`` for the empty coalition."""
    return "{" + ",".join(str(i + 1) for i in members(mask)) + "}"


def render(header: Sequence[str], rows: Sequence[Sequence[str]], form: str = "table") -> str:
    if form == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def coalition_rows(game, masks: Sequence[int], digits: int) -> list[list[str]]:
    rows = []
    for S in masks:
        sol = game.solutions[S]
        rows.append([
            label(S),
            label(sol.exporters),
            label(S & ~sol.exporters),
            fmt(sol.commitment, digits),
            fmt(sol.value, digits),
        ])
    return rows


COALITION_HEADER = ["coalition", "exporters", "non_exporters", "commitment", "value"]


def allocation_rows(rule: str, payoffs: Sequence[Fraction], digits: int) -> list[list[str]]:
    return [[str(i + 1), rule, fmt(x, digits)] for i, x in enumerate(payoffs)]


ALLOCATION_HEADER = ["player", "rule", "payoff"]


def comparison_rows(
    columns: Sequence[tuple[str, Sequence[Fraction]]],
    verdicts: Optional[Sequence[str]],
    digits: int,
) -> tuple[list[str], list[list[str]]]:
    header = ["player"] + [name for name, _ in columns]
    n = len(columns[0][1])
    rows = [[str(i + 1)] + [fmt(col[i], digits) for _, col in columns] for i in range(n)]
    if verdicts is not None:
        rows.append(["in_core"] + list(verdicts))
    return header, rows
