"""Gain-sharing rules for CE-games and core certification."""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Optional, Sequence, Union

from .game import CEGame, TUGame
from .model import Number, members, to_fraction

ZERO = Fraction(0)


class Rule(enum.Enum):
    NEA = "nea"
    DELTA_PROPORTIONAL = "delta"
    EGALITARIAN_RATE = "egal"
    PROPORTIONAL_RATE = "prop"
    NUCLEOLUS = "nucleolus"
    CUSTOM = "custom"


class NegativePayoffWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Allocation:
    payoffs: tuple[Fraction, ...]
    rule: Rule = Rule.CUSTOM
    rho: Optional[Fraction] = None
    weights: Optional[tuple[Fraction, ...]] = None

    def __len__(self) -> int:
        return len(self.payoffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.payoffs[i]

    def total(self) -> Fraction:
        return sum(self.payoffs, ZERO)

    def as_floats(self) -> list[float]:
        return [float(x) for x in self.payoffs]


Payoffs = Union[Allocation, Sequence[Number]]


def _vector(x: Payoffs) -> tuple[Fraction, ...]:
    if isinstance(x, Allocation):
        return x.payoffs
    return tuple(to_fraction(v) for v in x)


def excess(game: TUGame, S: int, x: Payoffs) -> Fraction:
    """Coalition surplus: sum of x over S minus v(S)."""
    xs = _vector(x)
    return sum((xs[i] for i in members(S)), ZERO) - game.values[S]


def _coalition_sums(xs: Sequence[Fraction]) -> list[Fraction]:
    sums = [ZERO] * (1 << len(xs))
    for S in range(1, len(sums)):
        low = S & -S
        sums[S] = sums[S ^ low] + xs[low.bit_length() - 1]
    return sums


class CoreCheck(NamedTuple):
    in_core: bool
    efficient: bool
    worst: Optional[int]
    worst_excess: Optional[Fraction]

    def __bool__(self) -> bool:
        return self.in_core


def in_core(game: TUGame, x: Payoffs) -> CoreCheck:
    """Exact core membership.

    ``worst`` is the proper coalition with the smallest excess (smallest
    mask on ties), reported whether or not it is violated.
    """
    xs = _vector(x)
    if len(xs) != game.n:
        raise ValueError("payoff vector length does not match the game")
    sums = _coalition_sums(xs)
    efficient = sums[game.grand] == game.values[game.grand]
    worst = None
    worst_excess = None
    for S in range(1, game.grand):
        e = sums[S] - game.values[S]
        if worst_excess is None or e < worst_excess:
            worst, worst_excess = S, e
    stable = worst_excess is None or worst_excess >= 0
    return CoreCheck(efficient and stable, efficient, worst, worst_excess)


def nea(game: CEGame) -> Allocation:
    """Split v(N) among essential players in proportion to their full capacity margins."""
    sit = game.situation
    ess = members(game.essential)
    total = sum((sit.deltas[i] for i in ess), ZERO)
    vN = game.values[game.grand]
    pay = [ZERO] * game.n
    # v(N) is at most the essential margin total, so it is 0 here as well
    if total > 0:
        for i in ess:
            pay[i] = sit.deltas[i] / total * vN
    return Allocation(tuple(pay), Rule.NEA)


def delta_proportional(game: CEGame) -> Allocation:
    sit = game.situation
    exp = members(game.exporters)
    pay = [ZERO] * game.n
    total = sum((sit.deltas_u[i] for i in exp), ZERO)
    if exp and total > 0:
        vN = game.values[game.grand]
        for i in exp:
            pay[i] = sit.deltas_u[i] / total * vN
    return Allocation(tuple(pay), Rule.DELTA_PROPORTIONAL)


@dataclass(frozen=True)
class CoalitionSearchResult:
    coalition: int
    value: Fraction
    candidates: tuple[int, ...]


def _essential_count(game: CEGame, S: int) -> int:
    return bin(S & game.essential).count("1")


def _require_essential(game: CEGame) -> None:
    if not game.essential:
        raise ValueError("the game has no essential players")


def _argmin(game: CEGame, candidates, score) -> CoalitionSearchResult:
    best = None
    seen = []
    for S in candidates:
        val = score(S)
        if val is None:
            continue
        seen.append(S)
        if best is None or (val, S) < best:
            best = (val, S)
    if best is None:
        raise ValueError("no admissible coalition to search over")
    return CoalitionSearchResult(best[1], best[0], tuple(seen))


def _nea_vector(game: CEGame, phi: Optional[Payoffs]) -> tuple[Fraction, ...]:
    return nea(game).payoffs if phi is None else _vector(phi)


def _per_essential(game: CEGame, xs):
    def score(S: int):
        k = _essential_count(game, S)
        return excess(game, S, xs) / k if k else None

    return score


def _per_share(game: CEGame, xs):
    def score(S: int):
        if not _essential_count(game, S):
            return None
        share = sum((xs[i] for i in members(S)), ZERO)
        return excess(game, S, xs) / share if share != 0 else None

    return score


def per_essential_candidates(game: CEGame) -> list[int]:
    """N minus one player, plus the non-essentials with a least-margin essential."""
    _require_essential(game)
    N = game.grand
    out = {N & ~(1 << i) for i in range(game.n)}
    deltas = game.situation.deltas
    ess = members(game.essential)
    low = min(deltas[i] for i in ess)
    for i in ess:
        if deltas[i] == low:
            out.add((N & ~game.essential) | (1 << i))
    out.discard(N)
    return sorted(out)


def min_excess_per_essential(game: CEGame, phi: Optional[Payoffs] = None) -> CoalitionSearchResult:
    """Coalition S-hat minimizing e(S, phi) / |S^E| over the reduced candidate family."""
    xs = _nea_vector(game, phi)
    return _argmin(game, per_essential_candidates(game), _per_essential(game, xs))


def brute_min_excess_per_essential(game: CEGame, phi: Optional[Payoffs] = None) -> CoalitionSearchResult:
    _require_essential(game)
    xs = _nea_vector(game, phi)
    return _argmin(game, range(1, game.grand), _per_essential(game, xs))


def min_excess_ratio(game: CEGame, phi: Optional[Payoffs] = None) -> CoalitionSearchResult:
    """Coalition S-check minimizing e(S, phi) / phi(S) among N minus one essential player.

    Coalitions whose NEA share is zero are skipped.
    """
    _require_essential(game)
    xs = _nea_vector(game, phi)
    cands = [game.grand & ~(1 << i) for i in members(game.essential)]
    cands = sorted(S for S in cands if S)
    return _argmin(game, cands, _per_share(game, xs))


def brute_min_excess_ratio(game: CEGame, phi: Optional[Payoffs] = None) -> CoalitionSearchResult:
    _require_essential(game)
    xs = _nea_vector(game, phi)
    return _argmin(game, range(1, game.grand), _per_share(game, xs))


def _require_complementary_exporters(game: CEGame) -> None:
    if not game.complementary_exporters:
        raise ValueError("no complementary exporters in the grand coalition; rate rules do not apply")


def egalitarian_bound(game: CEGame) -> Fraction:
    """Largest flat rate the stability guarantee covers: e(S-hat, phi) / |S-hat^E|."""
    return min_excess_per_essential(game).value


def proportional_bound(game: CEGame) -> Fraction:
    """Largest tax fraction the stability guarantee covers: min e(S, phi) / phi(S).

    Searched over every proper coalition with an essential member. The
    one-essential-removed family of :func:`min_excess_ratio` can miss the
    minimizer (e.g. N minus a complementary exporter), which would
    overstate the bound.
    """
    return brute_min_excess_ratio(game).value


def rho_egalitarian(game: CEGame) -> Fraction:
    """Flat rate matching the delta-proportional compensation, capped by the stability bound."""
    _require_complementary_exporters(game)
    sit = game.situation
    target = (
        game.values[game.grand]
        * sit.total_delta_u(game.complementary_exporters)
        / (_essential_count(game, game.grand) * sit.total_delta_u(game.exporters))
    )
    return min(egalitarian_bound(game), target)


def rho_proportional(game: CEGame) -> Fraction:
    _require_complementary_exporters(game)
    sit = game.situation
    target = sit.total_delta_u(game.complementary_exporters) / sit.total_delta_u(game.exporters)
    return min(proportional_bound(game), target)


def _weights(game: CEGame, weights: Optional[Union[Mapping[int, Number], Sequence[Number]]]) -> tuple[Fraction, ...]:
    """Per-player weights, zero outside D^N. Defaults to delta_u on D^N (equal if those are all 0)."""
    _require_complementary_exporters(game)
    comp = members(game.complementary_exporters)
    out = [ZERO] * game.n
    if weights is None:
        for i in comp:
            out[i] = game.situation.deltas_u[i]
        if not any(out):
            # every delta_u on D^N is 0: the default rates are 0 too, so any split works
            for i in comp:
                out[i] = Fraction(1)
    else:
        given = weights.items() if isinstance(weights, Mapping) else enumerate(weights)
        for i, w in given:
            if i in comp:
                out[i] = to_fraction(w)
    if any(w < 0 for w in out):
        raise ValueError("weights must be non-negative")
    if not any(w > 0 for w in out):
        raise ValueError("at least one complementary exporter needs a positive weight")
    return tuple(out)


def _warn_negative(pay: Sequence[Fraction], rule: str) -> None:
    if any(x < 0 for x in pay):
        warnings.warn(f"{rule} allocation has a negative component", NegativePayoffWarning, stacklevel=3)


def egalitarian_rate(game: CEGame, rho: Number, weights=None) -> Allocation:
    """Charge every essential player ``rho`` and hand the pot to D^N by weight."""
    rho = to_fraction(rho)
    if rho < 0:
        raise ValueError("rho must be non-negative")
    alpha = _weights(game, weights)
    phi = nea(game).payoffs
    pot = _essential_count(game, game.grand) * rho
    total_alpha = sum(alpha, ZERO)
    pay = list(phi)
    for i in members(game.essential):
        pay[i] = phi[i] - rho
    for i in members(game.complementary_exporters):
        pay[i] = alpha[i] / total_alpha * pot
    _warn_negative(pay, "egalitarian-rate")
    return Allocation(tuple(pay), Rule.EGALITARIAN_RATE, rho, alpha)


def proportional_rate(game: CEGame, rho: Number, weights=None) -> Allocation:
    """Tax every essential share by the fraction ``rho`` and hand the pot to D^N by weight."""
    rho = to_fraction(rho)
    if not 0 <= rho <= 1:
        raise ValueError("rho must lie in [0, 1]")
    alpha = _weights(game, weights)
    phi = nea(game).payoffs
    vN = game.values[game.grand]
    total_alpha = sum(alpha, ZERO)
    pay = list(phi)
    for i in members(game.essential):
        pay[i] = (1 - rho) * phi[i]
    for i in members(game.complementary_exporters):
        pay[i] = alpha[i] / total_alpha * rho * vN
    return Allocation(tuple(pay), Rule.PROPORTIONAL_RATE, rho, alpha)
