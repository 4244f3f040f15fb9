"""Tests for the fixed point iteration experiments."""

import json
import os

import pytest

from swallowtail.experiments import (
    load_and_run_iterate_experiment,
    run_iterate_experiment,
)
from swallowtail.experiments.tests import _ITERATE_RESULTS_PATH
from swallowtail.testing.testing_utils import _TEST_DATA_PATH
from swallowtail.utils.config import RunConfig, build_initial_state
from swallowtail.utils.results_validation import (
    validate_final_file,
    validate_report_file,
)
from swallowtail.utils.results_writing import REPORT_HEADER, state_from_final

_SMALL = dict(precision_digits=15, order=4, data_length=11, samples=11)


def _remove_results(path):
    for name in ("report.csv", "final.json"):
        if os.path.exists(path + name):
            os.remove(path + name)


def test_run_iterate_experiment():
    """Test a short run writes valid results files."""
    path = _ITERATE_RESULTS_PATH + "run/"
    config = RunConfig(iterations=2, **_SMALL)
    calls = []

    data, report = run_iterate_experiment(
        config, path, overwrite=True, callback=lambda i, d, diffs: calls.append(i)
    )

    assert calls == [1, 2]
    assert len(report) == 2
    assert data.data_length == 11 - 6
    assert validate_report_file(path + "report.csv")
    assert validate_final_file(path + "final.json")

    with open(path + "final.json", encoding="utf-8") as f:
        document = json.load(f)
    assert document["iterations_completed"] == 2
    assert len(document["runtimes_ms"]) == 2
    assert document["config"]["order"] == 4
    assert document["config"]["initial_data"]["p"] == "t / 2"
    assert document["memory_usage"] >= 0
    assert document["residual_norm"] == pytest.approx(report.residual_norms[-1])
    assert state_from_final(path + "final.json") == data

    with pytest.warns(UserWarning, match="not overwriting, skipping"):
        assert run_iterate_experiment(config, path) == (None, None)

    _remove_results(path)


def test_run_iterate_experiment_no_iterations():
    """Test a run without iterations writes the initial state."""
    path = _ITERATE_RESULTS_PATH + "zero/"
    config = RunConfig(iterations=0, **_SMALL)

    data, report = run_iterate_experiment(
        config, path, overwrite=True, record_memory=False
    )

    assert len(report) == 0
    assert data == build_initial_state(config)
    with open(path + "report.csv", encoding="utf-8") as f:
        assert f.read() == REPORT_HEADER + "\n"
    with open(path + "final.json", encoding="utf-8") as f:
        document = json.load(f)
    assert document["iterations_completed"] == 0
    assert document["runtimes_ms"] == []
    assert document["memory_usage"] == 0

    _remove_results(path)


def test_load_and_run_iterate_experiment():
    """Test running a dataset configuration with named initial data."""
    path = _ITERATE_RESULTS_PATH + "load/"

    data, report = load_and_run_iterate_experiment(
        _TEST_DATA_PATH + "/test1.json",
        path,
        initial_data_name="data1",
        iterations=0,
        overwrite=True,
        record_memory=False,
    )

    assert len(report) == 0
    assert data.b[0].coefficient(1, 0) == 1
    with open(path + "final.json", encoding="utf-8") as f:
        config = json.load(f)["config"]
    assert config["iterations"] == 0
    assert config["initial_data"]["b0"] == "1 + t"

    _remove_results(path)


@pytest.mark.slow
def test_load_and_run_default_config():
    """Test the default configuration is used without a configuration file."""
    path = _ITERATE_RESULTS_PATH + "default/"

    data, report = load_and_run_iterate_experiment(
        None, path, iterations=0, overwrite=True, record_memory=False
    )

    assert len(report) == 0
    assert data.order == 25
    assert data.precision == 30

    _remove_results(path)
