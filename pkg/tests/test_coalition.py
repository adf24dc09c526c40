import random
from fractions import Fraction

import pytest

from cegames.coalition import (
    brute_force_coalition,
    export_profit,
    g_contribution,
    optimal_complementary,
    solve_coalition,
)
from cegames.model import CESituation, NonSMEError, mask_of, members

from conftest import example_situation, random_games

N3 = mask_of([0, 1, 2])
N4 = mask_of([0, 1, 2, 3])


def S(*ids):
    return mask_of(i - 1 for i in ids)


def test_g_of_empty_set_is_zero():
    sit = example_situation(3)
    assert g_contribution(sit, N4, 0) == 0


def test_g_example3_grand():
    sit = example_situation(3)
    assert g_contribution(sit, N4, S(4)) == 30
    assert export_profit(sit, S(1, 2, 3)) + 30 == 169


def test_g_example4_grand():
    sit = example_situation(4)
    assert g_contribution(sit, N4, S(2)) == 47
    assert solve_coalition(sit, N4).value == 261


def test_g_example5():
    sit = example_situation(5)
    assert g_contribution(sit, S(1, 2, 3), S(3)) == 71
    assert solve_coalition(sit, S(1, 2, 3)).value == 77


def test_g_rejects_non_complementary():
    sit = example_situation(3)
    with pytest.raises(ValueError):
        g_contribution(sit, N4, S(1))


def test_optimal_complementary_cases():
    assert optimal_complementary(example_situation(1), S(1, 2)) == (0, 0)
    assert optimal_complementary(example_situation(3), N4) == (S(4), 30)
    assert optimal_complementary(example_situation(5), S(1, 2, 3)) == (S(3), 71)


@pytest.mark.parametrize(
    "k, coalition, exporters, commitment, value",
    [
        (1, (2, 3), (2, 3), 61, 1034),
        (1, (1, 2, 3), (1, 2, 3), 68, 1383),
        (2, (1, 3), (1, 3), 11, Fraction(11, 2)),
        (3, (1, 4), (), 0, 0),
        (4, (3, 4), (3, 4), 103, 104),
    ],
)
def test_solve_coalition_examples(k, coalition, exporters, commitment, value):
    sol = solve_coalition(example_situation(k), S(*coalition))
    assert sol.exporters == S(*exporters)
    assert sol.commitment == commitment
    assert sol.value == value


def test_empty_coalition():
    sit = example_situation(2)
    assert solve_coalition(sit, 0).value == 0
    assert brute_force_coalition(sit, 0).value == 0


def test_zero_profit_means_no_export():
    # one essential with Delta = 0 reaching the MQC alone is impossible for SMEs,
    # so use two zero-margin essentials that together cover it
    sit = CESituation.create([30, 30], [180, 180], 6, 50, 5, over_penalty=99)
    sol = solve_coalition(sit, 3)
    assert sol.value == 0 and sol.exporters == 0


def test_rejects_non_sme():
    sit = CESituation.create([60, 10], [1, 1], 6, 50, 5, over_penalty=99)
    with pytest.raises(NonSMEError):
        solve_coalition(sit, 3)


def test_brute_force_size_guard():
    sit = CESituation.create([1] * 21, [0] * 21, 1, 50, 1, over_penalty=9)
    with pytest.raises(ValueError):
        brute_force_coalition(sit, sit.grand)


@pytest.mark.parametrize("k", range(1, 6))
def test_oracle_on_examples(k):
    sit = example_situation(k)
    for mask in range(1 << sit.n):
        assert solve_coalition(sit, mask) == brute_force_coalition(sit, mask)


def _structure(sit, sol):
    S_ = sol.members
    if sol.exporters:
        assert sol.exporters & ~sit.potential(S_) == 0
        assert sit.essential(S_) & ~sol.exporters == 0
        qsum = sit.total_capacity(sol.exporters)
        assert sol.commitment == max(sit.mqc, qsum)
        assert sol.value == sit.total_delta(sol.exporters) - sol.under_supply * sit.under_penalty
        if qsum >= sit.mqc:
            assert sol.under_supply == 0
    else:
        assert sol.value == 0
    assert sol.value <= sit.total_delta(sit.essential(S_))


def test_optimal_exporter_structure_random():
    for _, game in random_games(60):
        for sol in game.solutions:
            _structure(game.situation, sol)


def _profit(sit, R):
    # coalition profit with exporters R, no zero-floor for R empty
    short = sit.mqc - sum((sit.capacity[i] for i in members(R)), Fraction(0))
    return sum((sit.deltas[i] for i in members(R)), Fraction(0)) - max(short, 0) * sit.under_penalty


def test_decomposition_identity():
    for _, game in random_games(40):
        sit = game.situation
        for mask in range(1, 1 << sit.n):
            ess = sit.essential(mask)
            if sit.total_capacity(ess) >= sit.mqc:
                continue
            comp = sit.complementary(mask)
            D = comp
            while True:
                assert _profit(sit, ess | D) == _profit(sit, ess) + g_contribution(sit, mask, D)
                if D == 0:
                    break
                D = (D - 1) & comp


def test_coalition_bounds_random():
    checked = 0
    for _, game in random_games(120, profiles=("mixed", "complementary-heavy")):
        sit = game.situation
        NE, NC = sit.essential_mask, sit.complementary_mask
        grand = game.grand_solution
        if not grand.exporters:
            continue
        pen_N = grand.under_supply * sit.under_penalty
        dN = sit.total_delta(grand.complementary)
        sub = NE
        while True:
            sol = game.solutions[sub | NC]
            if sol.exporters:
                checked += 1
                dS = sit.total_delta(sol.complementary)
                assert dS <= dN
                assert dS - sol.under_supply * sit.under_penalty <= dN - pen_N
            if sub == 0:
                break
            sub = (sub - 1) & NE
    assert checked > 100


def _many_complementary(seed, n_comp):
    rng = random.Random(seed)
    price, rate, mqc = 3, 7, 400
    caps, costs = [], []
    for _ in range(2):
        q = rng.randint(20, 60)
        caps.append(q)
        costs.append(rng.randint(0, q * price))
    for _ in range(n_comp):
        q = Fraction(rng.randint(10, 120), rng.choice([1, 2, 4]))
        caps.append(q)
        costs.append(q * price + Fraction(rng.randint(1, 8), 8) * q * rate)
    return CESituation.create(caps, costs, price, mqc, rate, over_penalty=99)


@pytest.mark.parametrize("seed", range(6))
def test_branch_and_bound_matches_exhaustive(seed):
    sit = _many_complementary(seed, 13 + seed % 3)
    assert len(members(sit.complementary(sit.grand))) > 12
    rng = random.Random(seed)
    masks = [sit.grand] + [rng.randrange(1, 1 << sit.n) | 1 for _ in range(4)]
    for mask in masks:
        if sit.total_capacity(sit.essential(mask)) >= sit.mqc:
            continue
        assert optimal_complementary(sit, mask, "bnb") == optimal_complementary(sit, mask, "exhaustive")


def test_ties_follow_capacity_then_mask():
    # gap 10: {2}, {3} and {4} all give G = 35; {4} ships more and wins
    sit = CESituation.create([40, 10, 10, 20], [0, 35, 35, 65], 3, 50, 4, over_penalty=99)
    for method in ("bnb", "exhaustive"):
        assert optimal_complementary(sit, sit.grand, method) == (S(4), 35)
    # without player 4 the tie between {2} and {3} goes to the smaller mask
    for method in ("bnb", "exhaustive"):
        assert optimal_complementary(sit, S(1, 2, 3), method) == (S(2), 35)
