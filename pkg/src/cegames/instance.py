"""Instance files: a small YAML document read with every scalar kept as text.

    price: 5.5
    mqc: 11
    under_penalty: 6
    over_penalty: 0        # optional
    players:
      - {id: "1", capacity: 5, fixed_cost: 20}
      - {id: "2", capacity: 5, fixed_cost: 20}
    weights: {"3": 34}     # optional, alpha per complementary exporter

Numbers may be integers, decimals, ``a/b`` strings or ``[a, b]`` pairs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

import yaml

from .model import CESituation, InvalidSituation, OverSupplyPenaltyWarning, to_fraction


class InstanceError(ValueError):
    """Malformed or schema-violating instance document."""


@dataclass(frozen=True)
class Instance:
    situation: CESituation
    weights: Optional[dict[int, Fraction]] = None


REQUIRED = ("players", "price", "mqc", "under_penalty")
OPTIONAL = ("over_penalty", "weights", "name")


def _number(node, where: str) -> Fraction:
    if isinstance(node, list):
        try:
            node = [int(part) for part in node]
        except (TypeError, ValueError):
            raise InstanceError(f"{where}: pair entries must be integers") from None
    try:
        return to_fraction(node)
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"{where}: {exc}") from None


def parse_instance(text: str) -> Instance:
    try:
        doc = yaml.load(text, Loader=yaml.BaseLoader)
    except yaml.YAMLError as exc:
        raise InstanceError(f"not a valid document: {exc}") from None
    if not isinstance(doc, dict):
        raise InstanceError("instance must be a mapping")
    missing = [k for k in REQUIRED if k not in doc]
    if missing:
        raise InstanceError(f"missing keys: {', '.join(missing)}")
    unknown = sorted(set(doc) - set(REQUIRED) - set(OPTIONAL))
    if unknown:
        raise InstanceError(f"unknown keys: {', '.join(unknown)}")
    players = doc["players"]
    if not isinstance(players, list) or not players:
        raise InstanceError("players must be a non-empty list")

    ids, caps, costs = [], [], []
    for k, entry in enumerate(players):
        if not isinstance(entry, dict):
            raise InstanceError(f"players[{k}] must be a mapping")
        extra = set(entry) - {"id", "capacity", "fixed_cost"}
        if extra:
            raise InstanceError(f"players[{k}]: unknown keys {sorted(extra)}")
        for key in ("capacity", "fixed_cost"):
            if key not in entry:
                raise InstanceError(f"players[{k}] lacks {key}")
        ids.append(str(entry.get("id", k + 1)))
        caps.append(_number(entry["capacity"], f"players[{k}].capacity"))
        costs.append(_number(entry["fixed_cost"], f"players[{k}].fixed_cost"))

    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", OverSupplyPenaltyWarning)
            situation = CESituation(
                players=tuple(ids),
                capacity=tuple(caps),
                fixed_cost=tuple(costs),
                price=_number(doc["price"], "price"),
                mqc=_number(doc["mqc"], "mqc"),
                under_penalty=_number(doc["under_penalty"], "under_penalty"),
                over_penalty=_number(doc.get("over_penalty", "0"), "over_penalty"),
            )
    except InvalidSituation as exc:
        raise InstanceError(str(exc)) from None

    weights = None
    if "weights" in doc:
        raw = doc["weights"]
        if not isinstance(raw, dict):
            raise InstanceError("weights must map player id to a number")
        index = {pid: i for i, pid in enumerate(ids)}
        weights = {}
        for pid, val in raw.items():
            if pid not in index:
                raise InstanceError(f"weights: unknown player {pid!r}")
            w = _number(val, f"weights[{pid}]")
            if w < 0:
                raise InstanceError(f"weights[{pid}] must be non-negative")
            weights[index[pid]] = w
    return Instance(situation, weights)


def load_instance(path: Union[str, Path]) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from None
    return parse_instance(text)


def format_number(x: Fraction) -> str:
    """Exact text form: integer, terminating decimal, or ``a/b``."""
    if x.denominator == 1:
        return str(x.numerator)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    places = max(twos, fives)
    scaled = abs(x.numerator) * 10**places // x.denominator
    digits = str(scaled).rjust(places + 1, "0")
    sign = "-" if x < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def dump_instance(situation: CESituation, weights: Optional[dict[int, Fraction]] = None) -> str:
    lines = [
        f"price: {format_number(situation.price)}",
        f"mqc: {format_number(situation.mqc)}",
        f"under_penalty: {format_number(situation.under_penalty)}",
        f"over_penalty: {format_number(situation.over_penalty)}",
        "players:",
    ]
    for pid, q, c in zip(situation.players, situation.capacity, situation.fixed_cost):
        lines.append(
            f'  - {{id: "{pid}", capacity: {format_number(q)}, fixed_cost: {format_number(c)}}}'
        )
    if weights:
        lines.append("weights:")
        for i in sorted(weights):
            lines.append(f'  "{situation.players[i]}": {format_number(weights[i])}')
    return "\n".join(lines) + "\n"
