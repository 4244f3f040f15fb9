"""Class for storing and loading results from a fixed point iteration run."""

__all__ = [
    "IterationResults",
    "load_iteration_results",
]

import math
import os

from swallowtail.utils.functions import component_index
from swallowtail.utils.results_validation import validate_report_file
from swallowtail.utils.results_writing import write_iteration_report


class IterationResults:
    """
    Per iteration component norms of a fixed point run.

    Parameters
    ----------
    run_name : str, default="N/A"
        Name of the run, used as a plot title.
    norms : dict of str to dict of int to float or None, default=None
        Component name to ``{iteration: norm}``. Components may be missing from
        later iterations, every iteration loses three b-coefficients.
    runtimes_ms : list of int or None, default=None
        Runtime of each iteration.
    memory_usage : int, default=-1
        Peak memory growth over the run in bytes.

    Attributes
    ----------
    final_norm : dict of str to float or None
        Norm of each component at the last iteration it appears in.
    reduction_ratio : dict of str to float or None
        Final norm over first norm of each component.
    min_iteration : dict of str to int or None
        Iteration of the smallest norm of each component.

    Examples
    --------
    >>> from swallowtail.evaluation.storage import IterationResults
    >>> from swallowtail.testing.testing_utils import _TEST_RESULTS_PATH
    >>> ir = IterationResults().load_from_file(
    ...     _TEST_RESULTS_PATH + "/data0/report.csv"
    ... )
    >>> ir.n_iterations
    3
    """

    def __init__(
        self,
        run_name="N/A",
        norms=None,
        runtimes_ms=None,
        memory_usage=-1,
    ):
        self.run_name = run_name
        self.norms = {} if norms is None else norms
        self.runtimes_ms = runtimes_ms
        self.memory_usage = memory_usage

        self.final_norm = None
        self.reduction_ratio = None
        self.min_iteration = None

    # var_name: (display_name, higher is better, is timing)
    statistics = {
        "final_norm": ("FinalNorm", False, False),
        "reduction_ratio": ("ReductionRatio", False, False),
        "min_iteration": ("MinIteration", False, False),
    }

    @classmethod
    def from_report(cls, report, run_name="N/A"):
        """Build results from an IterationReport."""
        norms = {}
        for iteration, component, norm in report.rows():
            norms.setdefault(component, {})[iteration] = float(norm)
        return cls(
            run_name=run_name,
            norms=norms,
            runtimes_ms=list(report.runtimes_ms),
            memory_usage=report.memory_usage,
        )

    @property
    def components(self):
        """Component names ordered p, q, b0, b1, ..."""

        def key(name):
            k = component_index(name)
            return -1 if k is None else k, name

        return sorted(self.norms, key=key)

    @property
    def n_iterations(self):
        """Largest iteration index present."""
        return max((max(v) for v in self.norms.values() if v), default=0)

    def rows(self):
        """Yield ``(iteration, component, norm)`` in iteration then component order."""
        components = self.components
        for iteration in range(1, self.n_iterations + 1):
            for component in components:
                if iteration in self.norms[component]:
                    yield iteration, component, self.norms[component][iteration]

    def series(self, component):
        """Iterations and norms of one component as two lists."""
        values = self.norms[component]
        iterations = sorted(values)
        return iterations, [values[i] for i in iterations]

    def save_to_file(self, file_path):
        """
        Write the results to a report CSV file.

        Parameters
        ----------
        file_path : str
            Path of the CSV file to write.
        """
        write_iteration_report(self.rows(), file_path)

    def load_from_file(self, file_path, verify_values=True):
        """
        Load results from a report CSV file.

        Parameters
        ----------
        file_path : str
            Path of the report file.
        verify_values : bool, default=True
            If the file format should be validated first.

        Returns
        -------
        self : IterationResults
            The same IterationResults object with loaded results.
        """
        ir = load_iteration_results(file_path, verify_values=verify_values)
        self.__dict__.update(ir.__dict__)
        return self

    def calculate_statistics(self, overwrite=False):
        """
        Calculate the summary statistics of every component.

        Parameters
        ----------
        overwrite : bool, default=False
            If the function should overwrite the current values when they are not None.
        """
        if self.final_norm is None or overwrite:
            self.final_norm = {}
            for c in self.components:
                _, norms = self.series(c)
                self.final_norm[c] = norms[-1]
        if self.reduction_ratio is None or overwrite:
            self.reduction_ratio = {}
            for c in self.components:
                _, norms = self.series(c)
                self.reduction_ratio[c] = (
                    norms[-1] / norms[0] if norms[0] != 0 else math.nan
                )
        if self.min_iteration is None or overwrite:
            self.min_iteration = {}
            for c in self.components:
                iterations, norms = self.series(c)
                self.min_iteration[c] = iterations[norms.index(min(norms))]


def load_iteration_results(file_path, calculate_stats=True, verify_values=True):
    """
    Load and return iteration results from a report CSV file.

    Parameters
    ----------
    file_path : str
        The path of the report file.
    calculate_stats : bool, default=True
        Whether to calculate the summary statistics from the loaded results.
    verify_values : bool, default=True
        If the function should validate the file format.

    Returns
    -------
    ir : IterationResults
        The loaded results.
    """
    if verify_values and not validate_report_file(file_path):
        raise ValueError(f"{file_path} is not a valid iteration report file")

    norms = {}
    with open(file_path, encoding="utf-8") as file:
        lines = file.read().splitlines()

        for line in lines[1:]:
            iteration, component, norm = line.split(",")
            norms.setdefault(component, {})[int(iteration)] = float(norm)

    run_name = os.path.basename(os.path.dirname(os.path.abspath(file_path)))
    ir = IterationResults(run_name=run_name, norms=norms)
    if calculate_stats:
        ir.calculate_statistics()
    return ir
