"""Seeded random SME situations for property suites and the ``gen`` command."""

from __future__ import annotations

import random
from fractions import Fraction

from .model import CESituation

PROFILES = ("mixed", "essential-heavy", "complementary-heavy")

_CLASS_ODDS = {
    # essential, complementary, non-potential
    "mixed": (0.45, 0.40, 0.15),
    "essential-heavy": (0.75, 0.20, 0.05),
    "complementary-heavy": (0.25, 0.65, 0.10),
}


def _cost_for(kind: str, q: Fraction, price: Fraction, rate: Fraction, rng: random.Random) -> Fraction:
    full = q * price
    adjusted = q * (price + rate)
    if kind == "E":
        # anywhere in [0, Q p], occasionally exactly on the boundary
        if rng.random() < 0.1:
            return full
        return Fraction(rng.randint(0, int(full * 2)), 2)
    if kind == "C":
        lo, hi = full, adjusted
        c = lo + (hi - lo) * Fraction(rng.randint(1, 8), 8)
        return c
    return adjusted + Fraction(rng.randint(1, 40), 2)


def random_situation(n: int, seed: int, profile: str = "mixed") -> CESituation:
    """Deterministic random SME situation.

    Every capacity is below the MQC. ``mixed`` guarantees an essential
    player; ``complementary-heavy`` makes at least half the players
    complementary.
    """
    if profile not in _CLASS_ODDS:
        raise ValueError(f"unknown profile {profile!r}")
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(f"{profile}:{n}:{seed}")
    price = Fraction(rng.randint(4, 40), 2)
    rate = Fraction(rng.randint(2, 40), 2)
    mqc = Fraction(rng.randint(20, 200))
    capacity = []
    for _ in range(n):
        # spread capacities so several players are usually needed to reach the MQC
        q = Fraction(rng.randint(2, int(mqc) * 2 - 2), 2) * Fraction(rng.randint(1, 4), 4)
        capacity.append(min(max(q, Fraction(1, 2)), mqc - Fraction(1, 2)))

    odds = _CLASS_ODDS[profile]
    kinds = [rng.choices("ECN", weights=odds)[0] for _ in range(n)]
    if profile == "mixed" and "E" not in kinds:
        kinds[rng.randrange(n)] = "E"
    if profile == "complementary-heavy":
        need = (n + 1) // 2
        spots = [i for i, k in enumerate(kinds) if k != "C"]
        rng.shuffle(spots)
        while kinds.count("C") < need:
            kinds[spots.pop()] = "C"
    costs = [_cost_for(k, q, price, rate, rng) for k, q in zip(kinds, capacity)]
    return CESituation(
        players=tuple(str(i + 1) for i in range(n)),
        capacity=tuple(capacity),
        fixed_cost=tuple(costs),
        price=price,
        mqc=mqc,
        under_penalty=rate,
        over_penalty=price + rate,
    )
