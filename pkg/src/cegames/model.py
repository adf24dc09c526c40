"""CE-situation data, player margins and individual export strategies."""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

Number = Union[int, str, Fraction, Decimal, float, Sequence[int]]


class InvalidSituation(ValueError):
    """Raised when situation data break a structural invariant."""


class NonSMEError(InvalidSituation):
    """Raised when cooperative analysis meets a player with Q_i >= mqc."""


class OverSupplyPenaltyWarning(UserWarning):
    pass


def to_fraction(value: Number) -> Fraction:
    """Parse a number exactly.

    Accepts ints, Fractions, Decimals, strings such as ``"58.125"``,
    ``"137/2"`` or ``"-3"``, and ``[numerator, denominator]`` pairs.
    Floats go through their shortest repr, so ``68.5`` becomes ``137/2``.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty number")
        try:
            return Fraction(text)
        except ValueError:
            raise ValueError(f"not an exact number: {value!r}") from None
    if isinstance(value, (list, tuple)) and len(value) == 2:
        num, den = value
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (num, den)):
            raise TypeError(f"numerator/denominator must be integers: {value!r}")
        if den == 0:
            raise ValueError("zero denominator")
        return Fraction(num, den)
    raise TypeError(f"cannot read {value!r} as an exact number")


def members(mask: int) -> list[int]:
    """Player indices contained in a coalition bitmask, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


class PlayerClass(enum.Enum):
    ESSENTIAL = "essential"
    COMPLEMENTARY = "complementary"
    NON_POTENTIAL = "non-potential"
    # players with Q_i >= mqc, classified individually
    ALPHA_EXPORTER = "alpha-exporter"
    DOMESTIC = "domestic"


@dataclass(frozen=True)
class PlayerProfile:
    delta: Fraction
    delta_u: Fraction
    cls: PlayerClass

    @property
    def potential(self) -> bool:
        return self.cls in (PlayerClass.ESSENTIAL, PlayerClass.COMPLEMENTARY)


@dataclass(frozen=True)
class CESituation:
    """A cooperative export situation.

    All numeric fields are exact rationals. ``over_penalty`` is stored but
    never used by the solvers: over-supply is never optimal.
    """

    players: tuple[str, ...]
    capacity: tuple[Fraction, ...]
    fixed_cost: tuple[Fraction, ...]
    price: Fraction
    mqc: Fraction
    under_penalty: Fraction
    over_penalty: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        n = len(self.players)
        if n < 1:
            raise InvalidSituation("a situation needs at least one player")
        if len(set(self.players)) != n:
            raise InvalidSituation("player identifiers must be unique")
        if len(self.capacity) != n or len(self.fixed_cost) != n:
            raise InvalidSituation("capacity and fixed_cost must have one entry per player")
        for name, q in zip(self.players, self.capacity):
            if q <= 0:
                raise InvalidSituation(f"capacity of player {name} must be positive")
        for name, c in zip(self.players, self.fixed_cost):
            if c < 0:
                raise InvalidSituation(f"fixed cost of player {name} must be non-negative")
        for field in ("price", "mqc", "under_penalty", "over_penalty"):
            if getattr(self, field) < 0:
                raise InvalidSituation(f"{field} must be non-negative")
        if self.over_penalty < self.price:
            warnings.warn(
                "over_penalty < price: over-supply is not modelled by the solvers",
                OverSupplyPenaltyWarning,
                stacklevel=3,
            )

    @classmethod
    def create(
        cls,
        capacity: Sequence[Number],
        fixed_cost: Sequence[Number],
        price: Number,
        mqc: Number,
        under_penalty: Number,
        over_penalty: Number = 0,
        players: Sequence[str] | None = None,
    ) -> "CESituation":
        """Build a situation from loosely typed numbers (ints, decimal strings, ...)."""
        if players is None:
            players = [str(i + 1) for i in range(len(capacity))]
        return cls(
            players=tuple(str(p) for p in players),
            capacity=tuple(to_fraction(q) for q in capacity),
            fixed_cost=tuple(to_fraction(c) for c in fixed_cost),
            price=to_fraction(price),
            mqc=to_fraction(mqc),
            under_penalty=to_fraction(under_penalty),
            over_penalty=to_fraction(over_penalty),
        )

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def deltas(self) -> tuple[Fraction, ...]:
        """Full capacity margins Q_i * p - c_i."""
        return tuple(q * self.price - c for q, c in zip(self.capacity, self.fixed_cost))

    @cached_property
    def deltas_u(self) -> tuple[Fraction, ...]:
        """Under-supply adjusted margins Q_i * (p + r_u) - c_i."""
        rate = self.price + self.under_penalty
        return tuple(q * rate - c for q, c in zip(self.capacity, self.fixed_cost))

    def is_sme(self, i: int) -> bool:
        return self.capacity[i] < self.mqc

    @cached_property
    def all_sme(self) -> bool:
        return all(self.is_sme(i) for i in range(self.n))

    @cached_property
    def essential_mask(self) -> int:
        return mask_of(i for i in range(self.n) if self.is_sme(i) and self.deltas[i] >= 0)

    @cached_property
    def potential_mask(self) -> int:
        return mask_of(i for i in range(self.n) if self.is_sme(i) and self.deltas_u[i] >= 0)

    @property
    def complementary_mask(self) -> int:
        return self.potential_mask & ~self.essential_mask

    def essential(self, mask: int) -> int:
        """S^E as a bitmask."""
        return mask & self.essential_mask

    def potential(self, mask: int) -> int:
        return mask & self.potential_mask

    def complementary(self, mask: int) -> int:
        return mask & self.complementary_mask

    def total_capacity(self, mask: int) -> Fraction:
        return sum((self.capacity[i] for i in members(mask)), Fraction(0))

    def total_delta(self, mask: int) -> Fraction:
        return sum((self.deltas[i] for i in members(mask)), Fraction(0))

    def total_delta_u(self, mask: int) -> Fraction:
        return sum((self.deltas_u[i] for i in members(mask)), Fraction(0))

    def restrict(self, indices: Sequence[int]) -> "CESituation":
        """The situation formed by the given players, in the given order."""
        with warnings.catch_warnings():
            # the parent situation already warned
            warnings.simplefilter("ignore", OverSupplyPenaltyWarning)
            return self._restricted(indices)

    def _restricted(self, indices: Sequence[int]) -> "CESituation":
        return CESituation(
            players=tuple(self.players[i] for i in indices),
            capacity=tuple(self.capacity[i] for i in indices),
            fixed_cost=tuple(self.fixed_cost[i] for i in indices),
            price=self.price,
            mqc=self.mqc,
            under_penalty=self.under_penalty,
            over_penalty=self.over_penalty,
        )

    def require_sme(self) -> None:
        bad = [self.players[i] for i in range(self.n) if not self.is_sme(i)]
        if bad:
            raise NonSMEError(
                f"players {', '.join(bad)} have capacity >= mqc; cooperative games need SMEs only"
            )


def classify(situation: CESituation, i: int) -> PlayerClass:
    delta = situation.deltas[i]
    if not situation.is_sme(i):
        return PlayerClass.ALPHA_EXPORTER if delta >= 0 else PlayerClass.DOMESTIC
    if delta >= 0:
        return PlayerClass.ESSENTIAL
    if situation.deltas_u[i] >= 0:
        return PlayerClass.COMPLEMENTARY
    return PlayerClass.NON_POTENTIAL


def profiles(situation: CESituation) -> list[PlayerProfile]:
    return [
        PlayerProfile(situation.deltas[i], situation.deltas_u[i], classify(situation, i))
        for i in range(situation.n)
    ]


def individual_strategy_no_mqc(situation: CESituation, i: int) -> tuple[Fraction, Fraction, Fraction]:
    """Optimal (quantity, commitment, profit) of player ``i`` when no MQC applies."""
    delta = situation.deltas[i]
    if delta >= 0:
        q = situation.capacity[i]
        return q, q, delta
    zero = Fraction(0)
    return zero, zero, zero


def individual_strategy_mqc(situation: CESituation, i: int) -> tuple[Fraction, Fraction, Fraction]:
    """Optimal (quantity, commitment, profit) of player ``i`` acting alone under the MQC.

    With ``mqc == 0`` this reduces to :func:`individual_strategy_no_mqc`.
    """
    q = situation.capacity[i]
    mqc = situation.mqc
    if q >= mqc:
        # type alpha exporter, or everyone when mqc == 0
        return individual_strategy_no_mqc(situation, i)
    profit = situation.deltas_u[i] - mqc * situation.under_penalty
    if profit >= 0:
        return q, mqc, profit
    zero = Fraction(0)
    return zero, zero, zero
