"""Optimal export strategy of a single coalition.

The hard part is choosing which complementary players should export next to
the essential ones when the essential capacity falls short of the MQC. That
choice splits into two knapsack regimes, both solved exactly here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import CESituation, NonSMEError, members

ZERO = Fraction(0)

EXHAUSTIVE_LIMIT = 12
BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class CoalitionSolution:
    members: int
    exporters: int
    commitment: Fraction
    value: Fraction
    under_supply: Fraction
    complementary: int = 0

    @property
    def exports(self) -> bool:
        return self.exporters != 0


def _no_export(mask: int) -> CoalitionSolution:
    return CoalitionSolution(mask, 0, ZERO, ZERO, ZERO, 0)


def export_profit(situation: CESituation, exporters: int) -> Fraction:
    """Profit when exactly ``exporters`` ship full capacity under the coalition's MQC."""
    if not exporters:
        return ZERO
    shortfall = situation.mqc - situation.total_capacity(exporters)
    return situation.total_delta(exporters) - max(shortfall, ZERO) * situation.under_penalty


def _export_solution(situation: CESituation, mask: int, exporters: int, value: Fraction) -> CoalitionSolution:
    qsum = situation.total_capacity(exporters)
    return CoalitionSolution(
        members=mask,
        exporters=exporters,
        commitment=max(situation.mqc, qsum),
        value=value,
        under_supply=max(situation.mqc - qsum, ZERO),
        complementary=exporters & ~situation.essential_mask,
    )


def _shortfall(situation: CESituation, mask: int) -> Fraction:
    return situation.mqc - situation.total_capacity(situation.essential(mask))


def g_contribution(situation: CESituation, S: int, D: int) -> Fraction:
    """Profit contributed by complementary exporters ``D`` joining the essentials of ``S``."""
    if D & ~situation.complementary(S):
        raise ValueError("D must be a subset of the complementary players of S")
    gap = _shortfall(situation, S)
    if gap <= 0:
        raise ValueError("essential capacity of S already meets the MQC")
    return situation.total_delta(D) + min(gap, situation.total_capacity(D)) * situation.under_penalty


def _key(g: Fraction, qsum: Fraction, mask: int) -> tuple:
    # larger G, then larger capacity, then smaller mask
    return (g, qsum, -mask)


def _exhaustive(situation: CESituation, items: list[int], gap: Fraction) -> tuple[int, Fraction]:
    rate = situation.under_penalty
    k = len(items)
    qs = [ZERO] * (1 << k)
    ds = [ZERO] * (1 << k)
    bits = [0] * (1 << k)
    best = _key(ZERO, ZERO, 0)
    for sub in range(1, 1 << k):
        low = sub & -sub
        j = low.bit_length() - 1
        rest = sub ^ low
        i = items[j]
        qs[sub] = qs[rest] + situation.capacity[i]
        ds[sub] = ds[rest] + situation.deltas[i]
        bits[sub] = bits[rest] | (1 << i)
        key = _key(ds[sub] + min(gap, qs[sub]) * rate, qs[sub], bits[sub])
        if key > best:
            best = key
    return -best[2], best[0]


def _branch_and_bound(situation: CESituation, items: list[int], gap: Fraction) -> tuple[int, Fraction]:
    """Exact two-regime search.

    Under the cap (total capacity <= gap) G is the sum of delta_u: a 0/1
    knapsack. Over the cap G is sum(Delta) + gap * r_u with every Delta < 0:
    a min-cost covering problem. Both are pruned with their LP relaxation.
    Ties on G are still explored so the capacity/mask tie-break is exact.
    """
    rate = situation.under_penalty
    Q = situation.capacity
    best = [_key(ZERO, ZERO, 0)]

    def offer(g: Fraction, qsum: Fraction, mask: int) -> None:
        key = _key(g, qsum, mask)
        if key > best[0]:
            best[0] = key

    # regime (a): maximize sum delta_u with total capacity <= gap
    pack = sorted(
        (i for i in items if Q[i] <= gap),
        key=lambda i: (-situation.deltas_u[i] / Q[i], i),
    )

    def pack_bound(k: int, room: Fraction, value: Fraction) -> Fraction:
        for i in pack[k:]:
            if Q[i] <= room:
                room -= Q[i]
                value += situation.deltas_u[i]
            else:
                return value + situation.deltas_u[i] * room / Q[i]
        return value

    def dfs_pack(k: int, room: Fraction, value: Fraction, qsum: Fraction, mask: int) -> None:
        if k == len(pack):
            offer(value, qsum, mask)
            return
        if pack_bound(k, room, value) < best[0][0]:
            return
        i = pack[k]
        if Q[i] <= room:
            dfs_pack(k + 1, room - Q[i], value + situation.deltas_u[i], qsum + Q[i], mask | (1 << i))
        dfs_pack(k + 1, room, value, qsum, mask)

    dfs_pack(0, gap, ZERO, ZERO, 0)

    # regime (b): total capacity > gap, minimize the summed |Delta|
    cover = sorted(items, key=lambda i: (-situation.deltas[i] / Q[i], i))
    tail_q = [ZERO] * (len(cover) + 1)
    for k in range(len(cover) - 1, -1, -1):
        tail_q[k] = tail_q[k + 1] + Q[cover[k]]
    bonus = gap * rate

    def cover_bound(k: int, need: Fraction, cost: Fraction) -> Fraction:
        for i in cover[k:]:
            unit = -situation.deltas[i] / Q[i]
            if Q[i] >= need:
                return cost + unit * need
            need -= Q[i]
            cost += -situation.deltas[i]
        return cost

    def dfs_cover(k: int, qsum: Fraction, cost: Fraction, mask: int) -> None:
        if qsum > gap:
            offer(bonus - cost, qsum, mask)
            return
        if k == len(cover) or qsum + tail_q[k] <= gap:
            return
        if bonus - cover_bound(k, gap - qsum, cost) < best[0][0]:
            return
        i = cover[k]
        dfs_cover(k + 1, qsum + Q[i], cost - situation.deltas[i], mask | (1 << i))
        dfs_cover(k + 1, qsum, cost, mask)

    dfs_cover(0, ZERO, ZERO, 0)
    return -best[0][2], best[0][0]


def optimal_complementary(situation: CESituation, S: int, method: str = "auto") -> tuple[int, Fraction]:
    """Best set of complementary exporters for ``S`` and its contribution G.

    ``method`` is ``"auto"``, ``"exhaustive"`` or ``"bnb"``. Ties on G go to
    the larger total capacity, then to the smallest bitmask.
    """
    gap = _shortfall(situation, S)
    if gap <= 0:
        raise ValueError("essential capacity of S already meets the MQC")
    items = members(situation.complementary(S))
    if not items:
        return 0, ZERO
    if method == "auto":
        method = "exhaustive" if len(items) <= EXHAUSTIVE_LIMIT else "bnb"
    if method == "exhaustive":
        return _exhaustive(situation, items, gap)
    if method == "bnb":
        return _branch_and_bound(situation, items, gap)
    raise ValueError(f"unknown method {method!r}")


def solve_coalition(situation: CESituation, S: int, method: str = "auto") -> CoalitionSolution:
    bad = [situation.players[i] for i in members(S) if not situation.is_sme(i)]
    if bad:
        raise NonSMEError(f"coalition contains non-SME players: {', '.join(bad)}")
    if not S:
        return _no_export(0)
    essential = situation.essential(S)
    gap = _shortfall(situation, S)
    if gap <= 0:
        value = situation.total_delta(essential)
        if value > 0:
            return _export_solution(situation, S, essential, value)
        return _no_export(S)
    base = situation.total_delta(essential) - gap * situation.under_penalty
    extra, g = optimal_complementary(situation, S, method)
    value = base + g
    # zero profit counts as not exporting
    if value > 0:
        return _export_solution(situation, S, essential | extra, value)
    return _no_export(S)


def brute_force_coalition(situation: CESituation, S: int) -> CoalitionSolution:
    """Enumerate every exporter set among the potential players of ``S``."""
    pool = members(situation.potential(S))
    if len(pool) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_LIMIT} potential players")
    best_key = None
    best_mask = 0
    for sub in range(1, 1 << len(pool)):
        R = 0
        for j, i in enumerate(pool):
            if sub >> j & 1:
                R |= 1 << i
        profit = export_profit(situation, R)
        if profit <= 0:
            continue
        key = (profit, situation.total_capacity(R), -R)
        if best_key is None or key > best_key:
            best_key = key
            best_mask = R
    if best_key is None:
        return _no_export(S)
    return _export_solution(situation, S, best_mask, best_key[0])
