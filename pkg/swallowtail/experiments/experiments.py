"""Functions to perform fixed point iteration experiments.

Results are saved as a ``report.csv`` of per iteration component changes and a
``final.json`` holding the last iterate.
"""

__all__ = [
    "run_iterate_experiment",
    "load_and_run_iterate_experiment",
]

import os
import time
import warnings

from swallowtail.experiments._get_initial_data import get_initial_data_by_name
from swallowtail.solvers.fixed_point import iterate, residual
from swallowtail.utils.config import (
    RunConfig,
    build_fixed_point_config,
    build_initial_state,
    config_from_dict,
    config_to_dict,
    load_config,
)
from swallowtail.utils.results_writing import (
    write_final_results,
    write_iteration_report,
)

MEMRECORD_ENV = os.getenv("MEMRECORD_INTERVAL")
if isinstance(MEMRECORD_ENV, str):  # pragma: no cover
    MEMRECORD_INTERVAL = float(MEMRECORD_ENV)
else:
    MEMRECORD_INTERVAL = 5.0


def _results_present(results_path):
    return os.path.exists(f"{results_path}/report.csv") and os.path.exists(
        f"{results_path}/final.json"
    )


def run_iterate_experiment(
    config,
    results_path,
    overwrite=False,
    verbose=False,
    record_memory=True,
    callback=None,
):
    """Run the fixed point iteration for a configuration and write the results.

    Parameters
    ----------
    config : RunConfig
        The run configuration.
    results_path : str
        Directory ``report.csv`` and ``final.json`` are written to. Any required
        directories will be created.
    overwrite : bool, default=False
        If set to False, the run is skipped when both results files are already
        present. If True, it will overwrite anything already there.
    verbose : bool, default=False
        Print one line per iteration.
    record_memory : bool, default=True
        Record the peak memory of every iteration using ``MEMRECORD_INTERVAL``.
    callback : callable or None, default=None
        Passed on to ``iterate``.

    Returns
    -------
    data : SolutionData or None
        The final iterate, None if the run was skipped.
    report : IterationReport or None
        The per iteration report, None if the run was skipped.

    Raises
    ------
    ConfigError
        If the initial data cannot be built from the configuration.
    NumericAbort
        If an iteration fails.
    """
    if not overwrite and _results_present(results_path):
        warnings.warn(
            f"Results exist in {results_path} and not overwriting, skipping.",
            stacklevel=2,
        )
        return None, None

    cfg = build_fixed_point_config(config)
    d0 = build_initial_state(config)

    start = int(round(time.time() * 1000))
    data, report = iterate(
        d0,
        cfg,
        callback=callback,
        verbose=verbose,
        memory_interval=MEMRECORD_INTERVAL if record_memory else None,
    )
    total_runtime = int(round(time.time() * 1000)) - start

    if report.residual_norms:
        residual_norm = report.residual_norms[-1]
    else:
        residual_norm = residual(data, cfg.x0, cfg.segment, cfg.mode).norm

    write_iteration_report(report, f"{results_path}/report.csv")
    write_final_results(
        data,
        f"{results_path}/final.json",
        config=config_to_dict(config),
        iterations_completed=len(report),
        residual_norm=residual_norm,
        runtimes_ms=report.runtimes_ms,
        total_runtime_ms=total_runtime,
        memory_usage=report.memory_usage,
    )
    return data, report


def load_and_run_iterate_experiment(
    config_path,
    results_path,
    initial_data_name=None,
    iterations=None,
    overwrite=False,
    verbose=False,
    record_memory=True,
):
    """Load a run configuration and run a fixed point iteration experiment.

    Parameters
    ----------
    config_path : str or None
        Location of the JSON run configuration. The default configuration is used if
        None.
    results_path : str
        Location of where to write results. Any required directories will be created.
    initial_data_name : str or None, default=None
        Name of an initial data set replacing the initial data and datum of the
        configuration, see ``get_initial_data_by_name``.
    iterations : int or None, default=None
        Replaces the number of iterations of the configuration if given.
    overwrite : bool, default=False
        If set to False, this will only build results if there are no results files
        already present. If True, it will overwrite anything already there.
    verbose : bool, default=False
        Print one line per iteration.
    record_memory : bool, default=True
        Record the peak memory of every iteration.

    Returns
    -------
    data : SolutionData or None
        The final iterate, None if the run was skipped.
    report : IterationReport or None
        The per iteration report, None if the run was skipped.
    """
    config = load_config(config_path) if config_path is not None else RunConfig()

    if initial_data_name is not None:
        config = config_from_dict(
            {
                **config_to_dict(config),
                **get_initial_data_by_name(initial_data_name),
            }
        )
    if iterations is not None:
        config = config_from_dict({**config_to_dict(config), "iterations": iterations})

    return run_iterate_experiment(
        config,
        results_path,
        overwrite=overwrite,
        verbose=verbose,
        record_memory=record_memory,
    )
