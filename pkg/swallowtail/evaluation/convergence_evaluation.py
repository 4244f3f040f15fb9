"""Convergence plots and initialisation comparisons of fixed point runs."""

__all__ = [
    "plot_convergence",
    "save_convergence_plot",
    "compare_initialisations",
]

import json
import os
import warnings

import matplotlib
from matplotlib import pyplot as plt

from swallowtail.algebra.series import Segment
from swallowtail.evaluation.storage import IterationResults
from swallowtail.solvers.fixed_point import compare_states
from swallowtail.utils.results_validation import compare_final_file_settings
from swallowtail.utils.results_writing import state_from_final

_SVG_HASH_SALT = "swallowtail"


def plot_convergence(results, components=None, title=None):
    """Plot the per iteration norm of each component on a log scale.

    Parameters
    ----------
    results : IterationResults or str
        The results, or the path of a report file.
    components : list of str or None, default=None
        Components to draw, all of them if None.
    title : str or None, default=None
        Plot title, the run name if None.

    Returns
    -------
    fig : matplotlib.figure.Figure
        The figure.
    ax : matplotlib.axes.Axes
        The axes.
    """
    if isinstance(results, str):
        results = IterationResults().load_from_file(results)

    components = results.components if components is None else components
    fig, ax = plt.subplots(figsize=(6, 4))

    if results.n_iterations == 0:
        warnings.warn(
            "the report holds no iterations, the plot is empty", stacklevel=2
        )
    else:
        for component in components:
            if component not in results.norms:
                raise ValueError(f"component {component!r} is not in the results")
            iterations, norms = results.series(component)
            # zero differences cannot be drawn on a log scale
            points = [(i, n) for i, n in zip(iterations, norms) if n > 0]
            if points:
                ax.semilogy(*zip(*points), marker="o", markersize=3, label=component)
        if ax.get_legend_handles_labels()[0]:
            ax.legend(ncol=2, fontsize="small")

    ax.set_xlabel("iteration")
    ax.set_ylabel("sup norm of the change")
    ax.set_title(results.run_name if title is None else title)
    ax.grid(True, which="major", alpha=0.3)
    fig.tight_layout()
    return fig, ax


def save_convergence_plot(results, file_path, components=None, title=None):
    """Draw a convergence plot and write it to SVG or PDF.

    The format follows the file extension. SVG output is byte-stable for identical
    input.
    """
    fig, _ = plot_convergence(results, components=components, title=title)

    directory = os.path.dirname(file_path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    with matplotlib.rc_context({"svg.hashsalt": _SVG_HASH_SALT}):
        if file_path.endswith(".svg"):
            metadata = {"Date": None}
        else:
            metadata = {"CreationDate": None}
        fig.savefig(file_path, bbox_inches="tight", metadata=metadata)
    plt.close(fig)


def compare_initialisations(final_a, final_b, x0=None, segment=None):
    """Compare the final states of two runs started from different initial data.

    Parameters
    ----------
    final_a, final_b : str
        Paths of two ``final.json`` files with the same order, precision and norm
        settings.
    x0 : complex or None, default=None
        Evaluation point, taken from the first file if None.
    segment : Segment or None, default=None
        Segment, taken from the first file if None.

    Returns
    -------
    diffs : dict of str to float
        Segment norm of the difference of every component both states hold.
    """
    if not compare_final_file_settings(final_a, final_b):
        raise ValueError(
            f"{final_a} and {final_b} use different orders, precisions or norms"
        )

    with open(final_a, encoding="utf-8") as f:
        config = json.load(f)["config"]

    if x0 is None:
        x0 = complex(*config.get("x0", [0.0, 0.1]))
    if segment is None:
        a, b = config.get("segment", [0.0, 0.1])
        segment = Segment(a, b, config.get("samples", 1001))

    return compare_states(
        state_from_final(final_a), state_from_final(final_b), x0, segment
    )
