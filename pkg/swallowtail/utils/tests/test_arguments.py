"""Tests for arguments parsing."""

from fractions import Fraction

import pytest

from swallowtail.testing.testing_utils import suppress_output
from swallowtail.utils.arguments import parse_args, parse_datum_list
from swallowtail.utils.exceptions import ConfigError


def test_iterate_args():
    """Test parsing of the iterate command and its defaults."""
    args = parse_args(["iterate", "--config", "run.json"])

    assert args.command == "iterate"
    assert args.config == "run.json"
    assert args.output_dir == "results"
    assert args.initial_data is None
    assert args.iterations is None
    assert args.overwrite is False
    assert args.verbose is False


def test_iterate_kw_args():
    """Test parsing of the iterate keyword arguments."""
    args = parse_args(
        ["iterate", "-o", "out/", "-id", "data1", "-i", "3", "-ow", "--verbose"]
    )

    assert args.config is None
    assert args.output_dir == "out/"
    assert args.initial_data == "data1"
    assert args.iterations == 3
    assert args.overwrite is True
    assert args.verbose is True


def test_burgers_args():
    """Test parsing of the burgers command."""
    args = parse_args(["burgers", "--a0", "x/2", "-m", "5"])

    assert args.a0 == "x/2"
    assert args.order == 5
    assert args.precision == 30
    assert (args.x0, args.x1) == ("1/4", "1")


def test_other_commands():
    """Test parsing of the ideals, datum, plot and compare commands."""
    assert parse_args(["ideals"]).command == "ideals"

    args = parse_args(["datum", "--c", "1,3/4,3/50"])
    assert args.c == "1,3/4,3/50"
    assert args.order == 4

    args = parse_args(["plot", "--in", "report.csv", "--out", "plot.svg"])
    assert (args.in_file, args.out_file) == ("report.csv", "plot.svg")
    assert args.components is None

    args = parse_args(["compare", "a/final.json", "b/final.json"])
    assert (args.final_a, args.final_b) == ("a/final.json", "b/final.json")


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["run"],
        ["iterate", "-i", "two"],
        ["plot", "--in", "report.csv"],
        ["compare", "a/final.json"],
        ["burgers", "-m"],
    ],
)
@suppress_output()
def test_wrong_args(args):
    """Test parsing of incorrect arguments."""
    with pytest.raises(SystemExit):
        parse_args(args)


def test_parse_datum_list():
    """Test parsing of comma separated datum coefficients."""
    assert parse_datum_list("1, 3/4, 3/50") == (
        Fraction(1),
        Fraction(3, 4),
        Fraction(3, 50),
    )
    assert parse_datum_list("0.5,") == (Fraction(1, 2),)

    with pytest.raises(ConfigError, match="invalid datum list"):
        parse_datum_list("1,a")
    with pytest.raises(ConfigError, match="invalid datum list"):
        parse_datum_list("1/0")
