"""Evaluation tools for fixed point iteration results."""

__all__ = [
    "plot_convergence",
    "save_convergence_plot",
    "compare_initialisations",
]

from swallowtail.evaluation.convergence_evaluation import (
    compare_initialisations,
    plot_convergence,
    save_convergence_plot,
)
