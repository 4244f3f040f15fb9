"""Command line interface: fixed point runs, Burgers checks, ideals and plots.

Exit codes are 0 on success, 2 for an invalid configuration and 3 when a numerical
step aborts.
"""

__all__ = [
    "cmd_iterate",
    "cmd_burgers",
    "cmd_ideals",
    "cmd_datum",
    "cmd_plot",
    "cmd_compare",
    "main",
]

import os
import sys

from swallowtail.algebra.ideals import bracket_membership_report
from swallowtail.algebra.zring import datum_to_initial
from swallowtail.evaluation.convergence_evaluation import (
    compare_initialisations,
    save_convergence_plot,
)
from swallowtail.evaluation.storage import IterationResults
from swallowtail.experiments.experiments import load_and_run_iterate_experiment
from swallowtail.solvers.burgers import (
    branch_values,
    burgers_residual,
    characteristic_y,
    ck_solve,
    ck_system_residual,
    shock_discriminant,
    shock_times,
)
from swallowtail.utils.arguments import parse_args, parse_datum_list
from swallowtail.utils.config import RunConfig, build_datum
from swallowtail.utils.exceptions import ConfigError, NumericAbort
from swallowtail.utils.expressions import expr_to_series, series_to_expr
from swallowtail.utils.functions import parse_rational
from swallowtail.utils.results_validation import validate_report_file


def _format_norm(value):
    return f"{float(abs(value)):.3g}"


def cmd_iterate(args):
    """Run the fixed point iteration and write ``report.csv`` and ``final.json``."""
    data, report = load_and_run_iterate_experiment(
        args.config,
        args.output_dir,
        initial_data_name=args.initial_data,
        iterations=args.iterations,
        overwrite=args.overwrite,
        verbose=args.verbose,
    )
    if report is None:
        print("Ignoring, results already present")
    else:
        print(f"{len(report)} iterations written to {args.output_dir}")
    return 0


def cmd_burgers(args):
    """Solve the Burgers system from ``a(0, x) = a0`` and print the checks.

    The first line reads ``p = ..., q = ..., residual ...``, followed by the
    Cauchy-Kovalevskaya system residual, the shock times of the square root datum
    and its branch values.
    """
    a0 = expr_to_series(args.a0, args.order, args.precision)
    if not a0.is_x_only():
        raise ConfigError(f"--a0 must not depend on t, got {args.a0!r}")
    state = ck_solve(a0)

    print(
        f"p = {series_to_expr(state.p)}, q = {series_to_expr(state.q)}, "
        f"residual {_format_norm(burgers_residual(state))}"
    )
    print(f"a = {series_to_expr(state.a)}")
    print(f"system residual {_format_norm(ck_system_residual(state))}")

    try:
        x0, x1 = parse_rational(args.x0), parse_rational(args.x1)
        t0, t_star = shock_times(x0, x1)
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"invalid shock example points: {e}") from e
    y0 = characteristic_y(x0, t0)
    print(f"shock times x0 = {x0}, x1 = {x1}: t0 = {t0}, t* = {t_star}")
    print(f"discriminant at (t0, y0) = {shock_discriminant(t0, y0)}")
    print("t,r+,r-")
    for t in (0, t0 / 2, t0, (t0 + t_star) / 2, t_star):
        r_plus, r_minus = branch_values(t, x0)
        print(f"{t},{r_plus},{r_minus}")
    return 0


def cmd_ideals(args):
    """Print the Poisson bracket membership report on one line."""
    report = bracket_membership_report()
    print(", ".join(f"{name}: {str(value).lower()}" for name, value in report.items()))
    return 0


def cmd_datum(args):
    """Print the initial solution data ``p, q, b_k`` at t = 0 of a Cauchy datum."""
    c = parse_datum_list(args.c)
    config = RunConfig(
        precision_digits=args.precision,
        order=args.order,
        data_length=max(len(c), 5),
        iterations=0,
        datum_c=c,
    )
    data = datum_to_initial(build_datum(config), config.order, config.precision_digits)
    for name, series in data.components():
        print(f"{name} = {series_to_expr(series)}")
    return 0


def cmd_plot(args):
    """Draw the convergence curves of a report file to SVG or PDF."""
    if not os.path.isfile(args.in_file):
        raise ConfigError(f"report file {args.in_file} does not exist")
    if not validate_report_file(args.in_file):
        raise ConfigError(f"{args.in_file} is not a valid iteration report file")

    results = IterationResults().load_from_file(args.in_file, verify_values=False)
    save_convergence_plot(
        results, args.out_file, components=args.components, title=args.title
    )
    print(f"Plot of {len(results.components)} components written to {args.out_file}")
    return 0


def cmd_compare(args):
    """Print the segment norm of the difference of two final states per component."""
    for path in (args.final_a, args.final_b):
        if not os.path.isfile(path):
            raise ConfigError(f"results file {path} does not exist")
    try:
        diffs = compare_initialisations(args.final_a, args.final_b)
    except ValueError as e:
        raise ConfigError(str(e)) from e

    for name, norm in diffs.items():
        print(f"{name},{float(norm):.16e}")
    print(f"max,{max(diffs.values()):.16e}")
    return 0


_COMMANDS = {
    "iterate": cmd_iterate,
    "burgers": cmd_burgers,
    "ideals": cmd_ideals,
    "datum": cmd_datum,
    "plot": cmd_plot,
    "compare": cmd_compare,
}


def main(args=None):
    """Run a swallowtail command and return its exit code.

    Parameters
    ----------
    args : list or None, default=None
        Command line arguments. ``sys.argv[1:]`` if None.

    Returns
    -------
    exit_code : int
        0 on success, 2 for a configuration error, 3 for a numeric abort.
    """
    if args is None:
        args = sys.argv[1:]

    print("Input args = ", args)
    args = parse_args(args)

    try:
        return _COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return 2
    except NumericAbort as e:
        print(f"Numeric abort: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    """
    Example usage: python -m swallowtail.experiments.cli iterate -c config.json
    """
    print("Running cli.py main")
    sys.exit(main(sys.argv[1:]))
