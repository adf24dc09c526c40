from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import cegames
from cegames.generate import PROFILES, random_situation
from cegames.instance import InstanceError, dump_instance, format_number, load_instance, parse_instance

BASE = """
price: 5.5
mqc: 11
under_penalty: 6
players:
  - {id: a, capacity: 5, fixed_cost: 20}
  - {id: b, capacity: "11/2", fixed_cost: [41, 2]}
"""


def test_parse_exact_numbers():
    inst = parse_instance(BASE)
    sit = inst.situation
    assert sit.players == ("a", "b")
    assert sit.price == Fraction(11, 2)
    assert sit.capacity == (5, Fraction(11, 2))
    assert sit.fixed_cost == (20, Fraction(41, 2))
    assert sit.over_penalty == 0
    assert inst.weights is None


def test_decimal_stays_exact():
    text = BASE.replace("price: 5.5", "price: 0.1")
    assert parse_instance(text).situation.price == Fraction(1, 10)


def test_ids_default_to_position():
    text = BASE.replace("id: a, ", "").replace("id: b, ", "")
    assert parse_instance(text).situation.players == ("1", "2")


def test_weights_map_to_indices():
    inst = parse_instance(BASE + 'weights: {b: "3/2"}\n')
    assert inst.weights == {1: Fraction(3, 2)}


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("- 1\n- 2\n", "mapping"),
        ("price: [\n", "valid document"),
        (BASE.replace("mqc: 11\n", ""), "missing keys: mqc"),
        (BASE + "colour: red\n", "unknown keys"),
        ("price: 1\nmqc: 1\nunder_penalty: 1\nplayers: []\n", "non-empty"),
        (BASE.replace("capacity: 5,", "capacity: five,"), "players[0].capacity"),
        (BASE.replace("capacity: 5,", "capacity: -5,"), "positive"),
        (BASE.replace("fixed_cost: 20", "fixed_cost: -1"), "non-negative"),
        (BASE.replace("fixed_cost: 20", "cost: 20"), "unknown keys"),
        (BASE.replace("id: b", "id: a"), "unique"),
        (BASE.replace('[41, 2]', '[41, x]'), "integers"),
        (BASE.replace('[41, 2]', '[41, 0]'), "denominator"),
        (BASE + "weights: {z: 1}\n", "unknown player"),
        (BASE + "weights: {a: -1}\n", "non-negative"),
        (BASE + "weights: [1, 2]\n", "weights must map"),
    ],
)
def test_errors(text, fragment):
    with pytest.raises(InstanceError) as info:
        parse_instance(text)
    assert fragment in str(info.value)


def test_missing_file(tmp_path):
    with pytest.raises(InstanceError):
        load_instance(tmp_path / "nope.yaml")


def test_fixtures_load():
    for k in range(1, 6):
        assert load_instance(cegames.example_path(k)).situation.all_sme


@pytest.mark.parametrize("value, text", [
    (Fraction(3), "3"),
    (Fraction(-7, 4), "-1.75"),
    (Fraction(137, 2), "68.5"),
    (Fraction(1, 3), "1/3"),
    (Fraction(-1, 20), "-0.05"),
    (Fraction(0), "0"),
])
def test_format_number(value, text):
    assert format_number(value) == text
    assert Fraction(text) == value


@given(st.fractions(min_value=-10**6, max_value=10**6, max_denominator=1000))
def test_format_number_round_trip(x):
    assert Fraction(format_number(x)) == x


@pytest.mark.parametrize("profile", PROFILES)
def test_dump_round_trip(profile):
    sit = random_situation(6, 3, profile)
    again = parse_instance(dump_instance(sit, {0: Fraction(1, 3)}))
    assert again.situation == sit
    assert again.weights == {0: Fraction(1, 3)}
