"""Test utility functions."""

from fractions import Fraction

import pytest

from swallowtail.utils.functions import (
    component_index,
    parse_rational,
    str_in_nested_list,
)


def test_str_in_nested_list():
    """Test str_in_nested_list function."""
    names = [["data0", "test1"], "data1"]

    assert str_in_nested_list(names, "test1")
    assert str_in_nested_list(names, "data1")
    assert not str_in_nested_list(names, "data2")


@pytest.mark.parametrize(
    "value, expected",
    [
        ("3/50", Fraction(3, 50)),
        (" 3/4 ", Fraction(3, 4)),
        ("0.1", Fraction(1, 10)),
        (0.75, Fraction(3, 4)),
        (2, Fraction(2)),
        (Fraction(5, 3), Fraction(5, 3)),
    ],
)
def test_parse_rational(value, expected):
    """Test exact rationals are read from strings, floats and ints."""
    assert parse_rational(value) == expected


@pytest.mark.parametrize("value", [True, None, "a/b", [1, 2]])
def test_parse_rational_invalid(value):
    """Test values that are not rationals are rejected."""
    with pytest.raises(ValueError):
        parse_rational(value)


@pytest.mark.parametrize(
    "name, expected", [("p", None), ("q", None), ("b0", 0), ("b12", 12)]
)
def test_component_index(name, expected):
    """Test component names map to their b index."""
    assert component_index(name) == expected


@pytest.mark.parametrize("name", ["b", "b01", "c1", "P", "b-1"])
def test_component_index_invalid(name):
    """Test unknown component names are rejected."""
    with pytest.raises(ValueError, match="unknown component"):
        component_index(name)
