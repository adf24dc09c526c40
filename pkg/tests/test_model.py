from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cegames.model import (
    CESituation,
    InvalidSituation,
    OverSupplyPenaltyWarning,
    PlayerClass,
    individual_strategy_mqc,
    individual_strategy_no_mqc,
    mask_of,
    members,
    profiles,
    to_fraction,
)

from conftest import example_situation


def test_example1_margins_all_essential():
    prof = profiles(example_situation(1))
    assert [p.delta for p in prof] == [279, 686, 418]
    assert all(p.cls is PlayerClass.ESSENTIAL for p in prof)


def test_example3_player4_complementary():
    p4 = profiles(example_situation(3))[3]
    assert p4.delta == -20
    assert p4.delta_u == 130
    assert p4.cls is PlayerClass.COMPLEMENTARY


def test_zero_margin_counts_as_essential():
    sit = CESituation.create([10], [60], 6, 50, 5, over_penalty=100)
    assert sit.deltas[0] == 0
    assert profiles(sit)[0].cls is PlayerClass.ESSENTIAL


def test_non_sme_classification():
    sit = CESituation.create([60, 70], [10, 1000], 6, 50, 5, over_penalty=100)
    assert [p.cls for p in profiles(sit)] == [PlayerClass.ALPHA_EXPORTER, PlayerClass.DOMESTIC]


def test_no_mqc_strategy():
    sit = example_situation(1)
    assert individual_strategy_no_mqc(sit, 1) == (33, 33, 686)
    neg = CESituation.create([10], [100], 6, 50, 5, over_penalty=100)
    assert individual_strategy_no_mqc(neg, 0) == (0, 0, 0)
    zero = CESituation.create([10], [60], 6, 50, 5, over_penalty=100)
    assert individual_strategy_no_mqc(zero, 0) == (10, 10, 0)


def test_mqc_strategy_table1():
    sit = example_situation(1)
    assert individual_strategy_mqc(sit, 1) == (33, 61, 406)
    assert individual_strategy_mqc(sit, 0) == (0, 0, 0)


def test_mqc_strategy_example3_player3():
    sit = example_situation(3)
    assert sit.deltas_u[2] == 140
    assert individual_strategy_mqc(sit, 2) == (0, 0, 0)


def test_alpha_exporter_ignores_commitment_floor():
    sit = CESituation.create([60], [10], 6, 50, 5, over_penalty=100)
    assert individual_strategy_mqc(sit, 0) == (60, 60, 350)


@pytest.mark.parametrize(
    "text, value",
    [("58.125", Fraction(465, 8)), ("137/2", Fraction(137, 2)), ("-3", Fraction(-3)), ([137, 2], Fraction(137, 2)), (68.5, Fraction(137, 2))],
)
def test_to_fraction(text, value):
    assert to_fraction(text) == value


@pytest.mark.parametrize("bad", ["", "abc", [1, 0], True, None, {"a": 1}])
def test_to_fraction_rejects(bad):
    with pytest.raises((TypeError, ValueError)):
        to_fraction(bad)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(capacity=[0], fixed_cost=[1]),
        dict(capacity=[1], fixed_cost=[-1]),
        dict(capacity=[1, 2], fixed_cost=[1]),
    ],
)
def test_invalid_situations(kwargs):
    with pytest.raises(InvalidSituation):
        CESituation.create(price=1, mqc=5, under_penalty=1, over_penalty=9, **kwargs)


def test_duplicate_ids_and_negative_price():
    with pytest.raises(InvalidSituation):
        CESituation.create([1, 2], [0, 0], 1, 5, 1, 9, players=["a", "a"])
    with pytest.raises(InvalidSituation):
        CESituation.create([1], [0], -1, 5, 1, 9)


def test_over_penalty_warning():
    with pytest.warns(OverSupplyPenaltyWarning):
        CESituation.create([1], [0], 5, 5, 1, over_penalty=1)


def test_masks_roundtrip():
    assert members(mask_of([0, 3, 5])) == [0, 3, 5]
    assert members(0) == []


margins = st.fractions(min_value=0, max_value=100, max_denominator=8)


@given(
    q=st.fractions(min_value=Fraction(1, 8), max_value=100, max_denominator=8),
    c=margins,
    p=margins,
    r=margins,
    m=st.fractions(min_value=0, max_value=150, max_denominator=4),
)
def test_individual_invariants(q, c, p, r, m):
    sit = CESituation(("1",), (q,), (c,), p, m, r, p + 1)
    prof = profiles(sit)[0]
    assert prof.delta_u - prof.delta == q * r
    assert prof.delta_u >= prof.delta
    qq, mm, profit = individual_strategy_mqc(sit, 0)
    assert profit >= 0
    if q < m:
        assert profit == max(Fraction(0), prof.delta_u - m * r)
        assert prof.cls in (PlayerClass.ESSENTIAL, PlayerClass.COMPLEMENTARY, PlayerClass.NON_POTENTIAL)
    if m == 0:
        assert (qq, mm, profit) == individual_strategy_no_mqc(sit, 0)
