"""Tests for run configurations."""

import json
import os
from fractions import Fraction

import pytest

from swallowtail.testing.testing_utils import _TEST_DATA_PATH, _TEST_OUTPUT_PATH
from swallowtail.utils import config as config_module
from swallowtail.utils.config import (
    RunConfig,
    build_datum,
    build_fixed_point_config,
    build_initial_state,
    config_from_dict,
    config_to_dict,
    load_config,
    save_config,
)
from swallowtail.utils.exceptions import (
    ConfigError,
    DegenerateMatrixError,
    ExpressionError,
)


def test_default_config():
    """Test an empty document gives the default configuration."""
    config = config_from_dict({})

    assert config == RunConfig()
    assert config.precision_digits == 30
    assert (config.order, config.data_length, config.iterations) == (25, 80, 25)
    assert config.x0 == 0.1j
    assert config.segment == (0.0, 0.1)
    assert config.samples == 1001
    assert config.initial_data == {"p": "t / 2", "q": "t + x"}
    assert config.datum_c == (Fraction(1), Fraction(3, 4))


def test_config_round_trip():
    """Test the JSON form is normalised and stable."""
    raw = {
        "order": 6,
        "data_length": 11,
        "iterations": 2,
        "precision_digits": 15,
        "x0": 0.2,
        "initial_data": {"b1": "1 - (t^2)/10", "b0": "1+t"},
        "datum": [1, 0.75],
    }
    normalised = config_to_dict(config_from_dict(raw))

    assert normalised["x0"] == [0.2, 0.0]
    assert list(normalised["initial_data"]) == ["p", "q", "b0", "b1"]
    assert normalised["initial_data"]["b1"] == "1 - t^2 / 10"
    assert normalised["initial_data"]["b0"] == "1 + t"
    assert normalised["datum"] == {"c": ["1", "3/4"], "overrides": {}}
    assert config_to_dict(config_from_dict(normalised)) == normalised
    json.dumps(normalised)


def test_complex_datum_coefficient():
    """Test complex datum coefficients are written as [re, im] pairs."""
    config = config_from_dict({"datum": {"c": ["1", [0.5, 0.25]]}})

    assert config.datum_c[1] == complex(0.5, 0.25)
    assert config.datum_dict()["c"] == ["1", [0.5, 0.25]]
    assert config_from_dict({"datum": {"c": ["1", [0.75, 0]]}}).datum_c[1] == Fraction(
        3, 4
    )


@pytest.mark.parametrize(
    "d, message",
    [
        ([], "must be a JSON object"),
        ({"foo": 1}, "unknown configuration fields"),
        ({"order": 1}, "order must be at least 2"),
        ({"order": 2.5}, "order must be an integer"),
        ({"precision_digits": 10}, "precision_digits must be at least 15"),
        ({"iterations": 30}, "too short"),
        ({"iterations": -1}, "iterations must be non-negative"),
        ({"mode": "exact"}, "mode must be one of"),
        ({"root_choice": 0}, "root_choice must be 1 or -1"),
        ({"segment": [0.1, 0.0]}, "segment requires a < b"),
        ({"segment": [0.1]}, "segment must be a pair"),
        ({"samples": 1}, "samples must be at least 2"),
        ({"x0": "a"}, "x0 must be a"),
        ({"initial_data": {"c": "1"}}, "unknown component"),
        ({"initial_data": ["p"]}, "must be a map"),
        ({"initial_data": {"b80": "0"}}, "beyond the data length"),
        ({"datum": {"c": ["1"]}}, "at least c_1 and c_2"),
        ({"datum": {"c": ["1", "a"]}}, "invalid datum coefficient"),
        ({"datum": {"c": ["1", "1"], "extra": 1}}, "unknown datum fields"),
        ({"datum": {"overrides": {}}}, "datum must be an object"),
        ({"datum": {"c": [1, 1], "overrides": {"p": "x"}}}, "apply to b_k only"),
    ],
)
def test_config_validation(d, message):
    """Test invalid configurations are rejected."""
    with pytest.raises(ConfigError, match=message):
        config_from_dict(d)


def test_config_expression_error():
    """Test a malformed expression is rejected with its position."""
    with pytest.raises(ExpressionError, match="unexpected end") as e:
        config_from_dict({"initial_data": {"p": "t +"}})
    assert e.value.position == 3


def test_save_and_load_config():
    """Test a saved configuration loads back to the same value."""
    path = _TEST_OUTPUT_PATH + "/config/run.json"
    config = config_from_dict({"order": 5, "datum": {"c": ["1", "3/4", "3/50"]}})

    save_config(config, path)
    assert load_config(path) == config

    os.remove(path)


def test_load_config_errors():
    """Test missing and malformed configuration files."""
    with pytest.raises(ConfigError, match="does not exist"):
        load_config(_TEST_OUTPUT_PATH + "/config/missing.json")

    path = _TEST_OUTPUT_PATH + "/config/broken.json"
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write('{"order": 5,')

    with pytest.raises(ConfigError, match="not valid JSON"):
        load_config(path)

    os.remove(path)


def test_precision_override(monkeypatch):
    """Test the precision environment override replaces precision_digits."""
    monkeypatch.setattr(config_module, "PRECISION_OVERRIDE", 15)

    with pytest.warns(UserWarning, match="SWALLOWTAIL_PRECISION overrides"):
        config = load_config(_TEST_DATA_PATH + "test1.json")
    assert config.precision_digits == 15


@pytest.mark.parametrize(
    "name", ["test1", "test1_data1", "test2", "test3", "test3_data6"]
)
def test_dataset_configs(name):
    """Test every shipped configuration loads with the default parameters."""
    config = load_config(_TEST_DATA_PATH + f"{name}.json")

    assert config.order == (10 if name == "test2" else 25)
    assert config.iterations == 25
    assert config.data_length == 80


def test_build_fixed_point_config():
    """Test the solver parameters follow the configuration."""
    config = config_from_dict(
        {"mode": "corrected", "segment": [0.0, 0.2], "samples": 5}
    )
    cfg = build_fixed_point_config(config)

    assert cfg.mode == "corrected"
    assert cfg.precision == 30
    assert (cfg.segment.a, cfg.segment.b, cfg.segment.samples) == (0.0, 0.2, 5)


def test_build_datum():
    """Test datum overrides are lowered and a vanishing c_2 names the matrix M."""
    config = config_from_dict(
        {
            "precision_digits": 15,
            "order": 4,
            "datum": {"c": [1, "3/4"], "overrides": {"b2": "x/10"}},
        }
    )
    datum = build_datum(config)

    assert datum.c == (Fraction(1), Fraction(3, 4))
    assert abs(datum.overrides[2].coefficient(0, 1) - 0.1) < 1e-15

    with pytest.raises(DegenerateMatrixError, match="matrix M"):
        build_datum(config_from_dict({"datum": {"c": ["1", "0"]}}))
    with pytest.raises(ConfigError, match="c_1 must be nonzero"):
        build_datum(config_from_dict({"datum": {"c": ["0", "1"]}}))
    with pytest.raises(ConfigError, match="must not depend on t"):
        build_datum(
            config_from_dict({"datum": {"c": [1, 1], "overrides": {"b2": "t"}}})
        )


def test_build_initial_state():
    """Test the initial state fills b_k from the datum."""
    config = config_from_dict(
        {
            "precision_digits": 15,
            "order": 4,
            "data_length": 8,
            "iterations": 1,
            "initial_data": {"b1": "1 - t^2/10"},
        }
    )
    state = build_initial_state(config)

    assert len(state.b) == 8
    assert abs(state.b[0].coefficient(0, 0) - 1) < 1e-15
    assert abs(state.b[1].coefficient(2, 0) + 0.1) < 1e-15
    assert state.b[2].is_zero()
    assert abs(state.p.coefficient(1, 0) - 0.5) < 1e-15


@pytest.mark.parametrize(
    "initial_data, message",
    [
        ({"b0": "2 + t"}, "b0\\(0, x\\) does not match"),
        ({"p": "t/2 + x"}, "p\\(0, x\\) must vanish"),
        ({"q": "t"}, "q\\(0, x\\) must equal x"),
        ({"b1": "1/t"}, "division is only allowed by a constant"),
    ],
)
def test_build_initial_state_mismatch(initial_data, message):
    """Test initial data that disagrees with the datum is rejected."""
    config = config_from_dict(
        {"precision_digits": 15, "order": 4, "initial_data": initial_data}
    )

    with pytest.raises(ConfigError, match=message):
        build_initial_state(config)
