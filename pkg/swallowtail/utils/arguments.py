"""swallowtail command line argument parser."""

__all__ = [
    "parse_args",
    "parse_datum_list",
]

import argparse

import swallowtail
from swallowtail.algebra.series import DEFAULT_PRECISION
from swallowtail.utils.exceptions import ConfigError
from swallowtail.utils.functions import parse_rational


def parse_args(args):
    """Parse the command line arguments for swallowtail.

    The following is the --help output for swallowtail:

    usage: swallowtail [-h] [--version]
                       {iterate,burgers,ideals,datum,plot,compare} ...

    positional arguments:
      {iterate,burgers,ideals,datum,plot,compare}
        iterate             run the fixed point iteration and write report.csv and
                            final.json.
        burgers             solve the Burgers Cauchy-Kovalevskaya system and print
                            residuals and shock times.
        ideals              print the Poisson bracket membership report.
        datum               print the initial solution data of a Cauchy datum.
        plot                draw the convergence curves of a report file.
        compare             compare the final states of two runs.

    options:
      -h, --help            show this help message and exit
      --version             show program's version number and exit

    The ``iterate`` options are:

      -c CONFIG, --config CONFIG
                            the JSON run configuration. If None the default
                            configuration is used (default: None).
      -o OUTPUT_DIR, --output_dir OUTPUT_DIR
                            the directory report.csv and final.json are written
                            to (default: results).
      -id INITIAL_DATA, --initial_data INITIAL_DATA
                            a named initial data set replacing the initial data
                            and datum of the configuration, see
                            get_initial_data_by_name (default: None).
      -i ITERATIONS, --iterations ITERATIONS
                            override the number of iterations (default: None).
      -ow, --overwrite      overwrite existing results files. If False, existing
                            results files will be skipped (default: False).
      -v, --verbose         print one line per iteration (default: False).

    Parameters
    ----------
    args : list
        List of command line arguments to parse.

    Returns
    -------
    args : argparse.Namespace
        The parsed command line arguments. ``command`` holds the subcommand name.
    """
    parser = argparse.ArgumentParser(prog="swallowtail")
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {swallowtail.__version__}"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    iterate = subparsers.add_parser(
        "iterate",
        help="run the fixed point iteration and write report.csv and final.json.",
    )
    iterate.add_argument(
        "-c",
        "--config",
        default=None,
        help="the JSON run configuration. If None the default configuration is used "
        "(default: %(default)s).",
    )
    iterate.add_argument(
        "-o",
        "--output_dir",
        default="results",
        help="the directory report.csv and final.json are written to "
        "(default: %(default)s).",
    )
    iterate.add_argument(
        "-id",
        "--initial_data",
        default=None,
        help="a named initial data set replacing the initial data and datum of the "
        "configuration, see get_initial_data_by_name (default: %(default)s).",
    )
    iterate.add_argument(
        "-i",
        "--iterations",
        type=int,
        default=None,
        help="override the number of iterations (default: %(default)s).",
    )
    iterate.add_argument(
        "-ow",
        "--overwrite",
        action="store_true",
        help="overwrite existing results files. If False, existing results files "
        "will be skipped (default: %(default)s).",
    )
    iterate.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="print one line per iteration (default: %(default)s).",
    )

    burgers = subparsers.add_parser(
        "burgers",
        help="solve the Burgers Cauchy-Kovalevskaya system and print residuals and "
        "shock times.",
    )
    burgers.add_argument(
        "--a0",
        default="0",
        help="the initial value a(0, x) as an expression in x "
        "(default: %(default)s).",
    )
    burgers.add_argument(
        "-m",
        "--order",
        type=int,
        default=8,
        help="the truncation order of the series (default: %(default)s).",
    )
    burgers.add_argument(
        "-p",
        "--precision",
        type=int,
        default=DEFAULT_PRECISION,
        help="the number of significant digits (default: %(default)s).",
    )
    burgers.add_argument(
        "--x0",
        default="1/4",
        help="the first starting point of the square root shock example "
        "(default: %(default)s).",
    )
    burgers.add_argument(
        "--x1",
        default="1",
        help="the second starting point of the square root shock example "
        "(default: %(default)s).",
    )

    subparsers.add_parser(
        "ideals", help="print the Poisson bracket membership report."
    )

    datum = subparsers.add_parser(
        "datum", help="print the initial solution data of a Cauchy datum."
    )
    datum.add_argument(
        "--c",
        default="1,3/4",
        help="comma separated datum coefficients c_1, c_2, ... each a number or "
        "num/den (default: %(default)s).",
    )
    datum.add_argument(
        "-m",
        "--order",
        type=int,
        default=4,
        help="the truncation order of the series (default: %(default)s).",
    )
    datum.add_argument(
        "-p",
        "--precision",
        type=int,
        default=DEFAULT_PRECISION,
        help="the number of significant digits (default: %(default)s).",
    )

    plot = subparsers.add_parser(
        "plot", help="draw the convergence curves of a report file."
    )
    plot.add_argument(
        "--in", dest="in_file", required=True, help="the report.csv file to plot."
    )
    plot.add_argument(
        "--out",
        dest="out_file",
        required=True,
        help="the SVG or PDF file to write, chosen by extension.",
    )
    plot.add_argument(
        "--components",
        nargs="+",
        default=None,
        help="the components to draw. If None all are drawn (default: %(default)s).",
    )
    plot.add_argument(
        "--title",
        default=None,
        help="the plot title. If None the run directory name is used "
        "(default: %(default)s).",
    )

    compare = subparsers.add_parser(
        "compare", help="compare the final states of two runs."
    )
    compare.add_argument("final_a", help="the first final.json file.")
    compare.add_argument("final_b", help="the second final.json file.")

    return parser.parse_args(args)


def parse_datum_list(text):
    """Parse a comma separated list of datum coefficients.

    Examples
    --------
    >>> parse_datum_list("1, 3/4")
    (Fraction(1, 1), Fraction(3, 4))
    """
    try:
        return tuple(parse_rational(c.strip()) for c in text.split(",") if c.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"invalid datum list {text!r}: {e}") from e
