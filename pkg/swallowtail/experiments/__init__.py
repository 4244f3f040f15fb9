"""Experiment functions."""

__all__ = [
    "get_initial_data_by_name",
    "get_initial_state_by_name",
    "run_iterate_experiment",
    "load_and_run_iterate_experiment",
]

from swallowtail.experiments._get_initial_data import (
    get_initial_data_by_name,
    get_initial_state_by_name,
)
from swallowtail.experiments.experiments import (
    load_and_run_iterate_experiment,
    run_iterate_experiment,
)
