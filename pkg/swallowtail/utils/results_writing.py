"""Utility functions for results writing."""

__all__ = [
    "REPORT_HEADER",
    "write_iteration_report",
    "write_final_results",
    "series_to_table",
    "table_to_series",
    "state_from_final",
]

import json
import os

import mpmath

from swallowtail.algebra.series import FAST_PRECISION, TruncatedSeries2, to_scalar
from swallowtail.algebra.zring import SolutionData

REPORT_HEADER = "iteration,component,norm"


def _make_parent(file_path):
    directory = os.path.dirname(file_path)
    if directory:
        os.makedirs(directory, exist_ok=True)


def write_iteration_report(rows, file_path):
    """Write the per iteration component norms to a CSV file.

    Parameters
    ----------
    rows : iterable of tuple or IterationReport
        ``(iteration, component, norm)`` triples, or a report providing them
        through ``rows()``.
    file_path : str
        Path of the CSV file, parent directories are created.
    """
    if hasattr(rows, "rows"):
        rows = rows.rows()

    _make_parent(file_path)
    with open(file_path, "w", encoding="utf-8") as f:
        f.write(REPORT_HEADER + "\n")
        for iteration, component, norm in rows:
            f.write(f"{iteration},{component},{float(norm):.16e}\n")


def _format_value(value, precision):
    if precision <= FAST_PRECISION:
        return repr(float(value))
    return mpmath.nstr(value, precision)


def series_to_table(series):
    """Coefficient table ``[[l, m, re, im], ...]`` of a series.

    Every stored term with ``l + m < M`` is listed in the order of increasing l,
    then m. Values are decimal strings with the significant digits of the series.
    """
    precision = series.precision
    table = []
    with mpmath.workdps(max(precision, FAST_PRECISION)):
        for l in range(series.order):
            for m in range(series.order - l):
                value = series.coefficient(l, m)
                table.append(
                    [
                        l,
                        m,
                        _format_value(value.real, precision),
                        _format_value(value.imag, precision),
                    ]
                )
    return table


def table_to_series(table, order, precision):
    """Rebuild a series from a coefficient table.

    Raises
    ------
    ValueError
        If an entry is malformed.
    """
    terms = {}
    with mpmath.workdps(max(precision, FAST_PRECISION)):
        for entry in table:
            if len(entry) != 4:
                raise ValueError(f"table entry {entry!r} is not [l, m, re, im]")
            l, m, re_part, im_part = entry
            terms[(int(l), int(m))] = mpmath.mpc(
                mpmath.mpf(re_part), mpmath.mpf(im_part)
            )
        terms = {k: to_scalar(v, precision) for k, v in terms.items()}
    return TruncatedSeries2.from_terms(terms, order, precision)


def write_final_results(
    state,
    file_path,
    config=None,
    iterations_completed=0,
    residual_norm=-1.0,
    runtimes_ms=None,
    total_runtime_ms=-1,
    memory_usage=-1,
):
    """Write the final solution data of a run to JSON.

    Parameters
    ----------
    state : SolutionData
        The final iterate.
    file_path : str
        Path of the JSON file, parent directories are created.
    config : dict or None, default=None
        The normalised run configuration.
    iterations_completed : int, default=0
        Number of completed iterations.
    residual_norm : float, default=-1.0
        Residual diagnostic of the final state.
    runtimes_ms : list of int or None, default=None
        Runtime of each iteration.
    total_runtime_ms : int, default=-1
        Runtime of the whole run.
    memory_usage : int, default=-1
        Peak memory growth over the run in bytes.
    """
    document = {
        "config": config if config is not None else {},
        "root_choice": state.root_choice,
        "iterations_completed": iterations_completed,
        "residual_norm": float(residual_norm),
        "runtimes_ms": list(runtimes_ms) if runtimes_ms is not None else [],
        "total_runtime_ms": total_runtime_ms,
        "memory_usage": memory_usage,
        "order": state.order,
        "precision": state.precision,
        "p": series_to_table(state.p),
        "q": series_to_table(state.q),
        "b": [series_to_table(bk) for bk in state.b],
    }

    _make_parent(file_path)
    with open(file_path, "w", encoding="utf-8") as f:
        json.dump(document, f, indent=1)
        f.write("\n")


def state_from_final(file_path):
    """Load the SolutionData stored in a ``final.json`` file."""
    with open(file_path, encoding="utf-8") as f:
        document = json.load(f)

    order, precision = document["order"], document["precision"]
    return SolutionData(
        table_to_series(document["p"], order, precision),
        table_to_series(document["q"], order, precision),
        [table_to_series(t, order, precision) for t in document["b"]],
        document["root_choice"],
    )
