"""Characteristic-function games over bitmask-indexed coalitions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .coalition import CoalitionSolution, solve_coalition
from .model import CESituation, mask_of, members, to_fraction

MAX_PLAYERS = 24


class GameTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class TUGame:
    """A transferable-utility game given by its full value table."""

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != 1 << self.n:
            raise ValueError("value table must have 2**n entries")
        if self.values[0] != 0:
            raise ValueError("v(empty) must be 0")

    @classmethod
    def from_values(cls, n: int, values: dict | Sequence) -> "TUGame":
        """Build from a sequence indexed by mask or a dict {coalition: value}.

        Dict keys may be masks or iterables of 0-based player indices;
        missing coalitions are worth 0.
        """
        if isinstance(values, dict):
            table = [Fraction(0)] * (1 << n)
            for key, val in values.items():
                mask = key if isinstance(key, int) else mask_of(key)
                table[mask] = to_fraction(val)
        else:
            table = [to_fraction(v) for v in values]
        return cls(n, tuple(table))

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    def v(self, mask: int) -> Fraction:
        return self.values[mask]


@dataclass(frozen=True)
class CEGame(TUGame):
    situation: Optional[CESituation] = None
    solutions: tuple[CoalitionSolution, ...] = ()

    @property
    def grand_solution(self) -> CoalitionSolution:
        return self.solutions[self.grand]

    @property
    def essential(self) -> int:
        """N^E."""
        return self.situation.essential_mask

    @property
    def exporters(self) -> int:
        """R^N, the exporters of the grand coalition."""
        return self.grand_solution.exporters

    @property
    def complementary_exporters(self) -> int:
        """D^N."""
        return self.exporters & ~self.situation.essential_mask


def build_game(situation: CESituation, method: str = "auto") -> CEGame:
    situation.require_sme()
    if situation.n > MAX_PLAYERS:
        raise GameTooLarge(
            f"{situation.n} players exceed the {MAX_PLAYERS}-player table limit; "
            "use solve_coalition per coalition instead"
        )
    solutions = tuple(solve_coalition(situation, mask, method) for mask in range(1 << situation.n))
    return CEGame(
        n=situation.n,
        values=tuple(s.value for s in solutions),
        situation=situation,
        solutions=solutions,
    )


class Check(NamedTuple):
    ok: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def _supersets(mask: int, within: int):
    """Supersets of ``mask`` inside ``within``, ascending."""
    free = within & ~mask
    sub = 0
    out = []
    while True:
        out.append(mask | sub)
        sub = (sub - free) & free
        if sub == 0:
            break
    out.sort()
    return out


def check_superadditive(game: TUGame) -> Check:
    """Witness is ``(S, T)`` with ``v(S|T) < v(S) + v(T)``."""
    v = game.values
    for S in range(1, 1 << game.n):
        rest = game.grand & ~S
        T = rest
        while T:
            if T > S and v[S | T] < v[S] + v[T]:
                return Check(False, (S, T))
            T = (T - 1) & rest
    return Check(True)


def check_monotone(game: TUGame) -> Check:
    """Witness is ``(S, T)`` with S a subset of T and ``v(S) > v(T)``.

    Checking single-player extensions is enough.
    """
    v = game.values
    for S in range(1 << game.n):
        for i in range(game.n):
            if not S >> i & 1:
                T = S | (1 << i)
                if v[S] > v[T]:
                    return Check(False, (S, T))
    return Check(True)


def check_convex(game: TUGame) -> Check:
    """Witness is ``(i, S, T, gain_S, gain_T)`` with ``gain_S > gain_T``.

    Scans i ascending, then S, then T by mask so the reported witness is
    the first violation in that order.
    """
    v = game.values
    for i in range(game.n):
        bit = 1 << i
        others = game.grand & ~bit
        for S in range(1 << game.n):
            if S & bit:
                continue
            gain_s = v[S | bit] - v[S]
            for T in _supersets(S, others):
                gain_t = v[T | bit] - v[T]
                if gain_s > gain_t:
                    return Check(False, (i, S, T, gain_s, gain_t))
    return Check(True)


def remap(mask: int, indices: Sequence[int]) -> int:
    """Translate a mask over ``indices`` positions back to the original player indices."""
    out = 0
    for j, i in enumerate(indices):
        if mask >> j & 1:
            out |= 1 << i
    return out


def subgame(game: TUGame, T: int) -> TUGame:
    """Restriction of ``game`` to the players of ``T``, relabelled 0..|T|-1."""
    idx = members(T)
    k = len(idx)
    values = tuple(game.values[remap(m, idx)] for m in range(1 << k))
    if not isinstance(game, CEGame):
        return TUGame(k, values)
    solutions = []
    for m in range(1 << k):
        sol = game.solutions[remap(m, idx)]
        solutions.append(
            CoalitionSolution(
                members=m,
                exporters=_compress(sol.exporters, idx),
                commitment=sol.commitment,
                value=sol.value,
                under_supply=sol.under_supply,
                complementary=_compress(sol.complementary, idx),
            )
        )
    return CEGame(k, values, game.situation.restrict(idx), tuple(solutions))


def _compress(mask: int, indices: Sequence[int]) -> int:
    out = 0
    for j, i in enumerate(indices):
        if mask >> i & 1:
            out |= 1 << j
    return out
