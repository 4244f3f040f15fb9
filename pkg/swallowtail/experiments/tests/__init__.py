"""Experiments tests."""

__all__ = [
    "_ITERATE_RESULTS_PATH",
]

from swallowtail.testing.testing_utils import _TEST_OUTPUT_PATH

_ITERATE_RESULTS_PATH = _TEST_OUTPUT_PATH + "/iterate/"
