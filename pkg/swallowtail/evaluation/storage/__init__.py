"""Results storage classes."""

__all__ = [
    "IterationResults",
    "load_iteration_results",
]

from swallowtail.evaluation.storage.iteration_results import (
    IterationResults,
    load_iteration_results,
)
