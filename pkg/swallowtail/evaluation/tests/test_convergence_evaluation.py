"""Tests for the convergence plots and initialisation comparisons."""

import os

import pytest

from swallowtail.evaluation.convergence_evaluation import (
    compare_initialisations,
    plot_convergence,
    save_convergence_plot,
)
from swallowtail.evaluation.storage import IterationResults
from swallowtail.testing.testing_utils import _TEST_OUTPUT_PATH, _TEST_RESULTS_PATH


def test_plot_convergence():
    """Test a convergence plot draws one line per component with changes."""
    fig, ax = plot_convergence(_TEST_RESULTS_PATH + "/data0/report.csv")

    labels = [line.get_label() for line in ax.get_lines()]
    assert labels == ["p", "q", "b0", "b1", "b2"]
    assert ax.get_title() == "data0"
    assert ax.get_yscale() == "log"

    fig, ax = plot_convergence(
        _TEST_RESULTS_PATH + "/data0/report.csv", components=["b1"], title="b1 only"
    )
    assert [line.get_label() for line in ax.get_lines()] == ["b1"]
    assert ax.get_title() == "b1 only"


def test_plot_convergence_unknown_component():
    """Test plotting a missing component raises an error."""
    with pytest.raises(ValueError, match="component 'b7' is not in the results"):
        plot_convergence(_TEST_RESULTS_PATH + "/data0/report.csv", components=["b7"])


def test_plot_convergence_empty():
    """Test an empty report draws an empty plot with a warning."""
    with pytest.warns(UserWarning, match="no iterations"):
        _, ax = plot_convergence(IterationResults(run_name="empty"))

    assert ax.get_lines() == []


def test_save_convergence_plot():
    """Test the SVG output is byte-stable and PDF output is written."""
    results = IterationResults().load_from_file(
        _TEST_RESULTS_PATH + "/data0/report.csv"
    )
    svg_path = _TEST_OUTPUT_PATH + "/convergence/plot.svg"
    pdf_path = _TEST_OUTPUT_PATH + "/convergence/plot.pdf"

    save_convergence_plot(results, svg_path)
    with open(svg_path, "rb") as f:
        first = f.read()
    save_convergence_plot(results, svg_path)
    with open(svg_path, "rb") as f:
        second = f.read()
    save_convergence_plot(results, pdf_path)

    assert first == second
    assert first.lstrip().startswith(b"<?xml")
    with open(pdf_path, "rb") as f:
        assert f.read(4) == b"%PDF"

    os.remove(svg_path)
    os.remove(pdf_path)


def test_compare_initialisations():
    """Test the comparison of final states from two initialisations."""
    diffs = compare_initialisations(
        _TEST_RESULTS_PATH + "/data0/final.json",
        _TEST_RESULTS_PATH + "/data1/final.json",
    )

    assert list(diffs) == ["p", "q", "b0", "b1"]
    assert diffs["b0"] == pytest.approx(1e-7, rel=1e-6)
    assert diffs["p"] == pytest.approx(1e-11, rel=1e-3)
    assert diffs["q"] == pytest.approx(1e-11, rel=1e-3)
    assert diffs["b1"] == 0
    assert max(diffs.values()) == diffs["b0"]


def test_compare_initialisations_settings():
    """Test final states with different settings cannot be compared."""
    path = _TEST_OUTPUT_PATH + "/convergence/final.json"
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(_TEST_RESULTS_PATH + "/data1/final.json", encoding="utf-8") as f:
        text = f.read()
    with open(path, "w", encoding="utf-8") as f:
        f.write(text.replace('"samples": 11', '"samples": 21'))

    with pytest.raises(ValueError, match="different orders, precisions or norms"):
        compare_initialisations(_TEST_RESULTS_PATH + "/data0/final.json", path)

    os.remove(path)
