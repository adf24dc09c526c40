"""Nucleolus by successive linear programs (Maschler's scheme) in exact arithmetic."""

from __future__ import annotations

from fractions import Fraction

from .allocation import Allocation, Rule
from .game import TUGame
from .lp import LinearProgram, lp_solve
from .model import members

ZERO = Fraction(0)


class NucleolusError(RuntimeError):
    pass


class _Span:
    """Row space of coalition incidence vectors, kept in reduced echelon form."""

    def __init__(self, n: int):
        self.n = n
        self.pivots: dict[int, list[Fraction]] = {}

    def reduce(self, vec: list[Fraction]) -> list[Fraction]:
        vec = list(vec)
        for col, row in self.pivots.items():
            f = vec[col]
            if f:
                vec = [a - f * b for a, b in zip(vec, row)]
        return vec

    def contains(self, vec: list[Fraction]) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec: list[Fraction]) -> bool:
        vec = self.reduce(vec)
        col = next((k for k, a in enumerate(vec) if a), None)
        if col is None:
            return False
        piv = vec[col]
        vec = [a / piv for a in vec]
        for c, row in self.pivots.items():
            f = row[col]
            if f:
                self.pivots[c] = [a - f * b for a, b in zip(row, vec)]
        self.pivots[col] = vec
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _incidence(mask: int, n: int) -> list[Fraction]:
    return [Fraction(mask >> i & 1) for i in range(n)]


def nucleolus(game: TUGame) -> Allocation:
    """The unique imputation whose sorted surplus vector is lexicographically largest.

    Each round maximizes the smallest surplus over the still-active
    coalitions. Coalitions with a nonzero optimal dual multiplier are
    tight in every optimal solution and get fixed at the round's optimum.
    The multipliers sum to one, so every round fixes at least one.
    """
    n = game.n
    v = game.values
    vN = v[game.grand]
    lower = [v[1 << i] for i in range(n)]
    if sum(lower, ZERO) > vN:
        raise NucleolusError("the imputation set is empty")
    if n == 1:
        return Allocation((vN,), Rule.NUCLEOLUS)

    span = _Span(n)
    span.add(_incidence(game.grand, n))
    fixed: dict[int, Fraction] = {}
    active = list(range(1, game.grand))
    x = None

    def base_lp(objective) -> LinearProgram:
        lp = LinearProgram(objective, lower=lower + [None])
        lp.add([1] * n + [0], "==", vN)
        for S, e in fixed.items():
            lp.add(_incidence(S, n) + [ZERO], "==", v[S] + e)
        return lp

    while span.rank < n:
        lp = base_lp([0] * n + [1])
        for S in active:
            lp.add(_incidence(S, n) + [-1], ">=", v[S])
        res = lp_solve(lp)
        if not res.optimal:
            raise NucleolusError(f"round LP ended {res.status.value}")
        eps = res.value
        x = res.point[:n]

        # a nonzero multiplier forces its row tight in every optimal solution
        offset = 1 + len(fixed)
        newly = [S for k, S in enumerate(active) if res.duals[offset + k] != 0]
        if not newly:
            raise NucleolusError("no coalition became tight; the scheme cannot progress")
        for S in newly:
            fixed[S] = eps
            span.add(_incidence(S, n))
        # coalitions already determined by the fixed ones carry no information
        active = [S for S in active if S not in fixed and not span.contains(_incidence(S, n))]

    if x is None:
        raise NucleolusError("no round was solved")
    return Allocation(tuple(x), Rule.NUCLEOLUS)
