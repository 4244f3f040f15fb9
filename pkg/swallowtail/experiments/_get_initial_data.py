"""Get initial data function."""

__all__ = [
    "get_initial_data_by_name",
    "get_initial_state_by_name",
]

from swallowtail.utils.config import (
    DEFAULT_INITIAL_DATA,
    build_initial_state,
    config_from_dict,
)
from swallowtail.utils.functions import str_in_nested_list

_TEST1_DATUM = {"c": ["1", "3/4"], "overrides": {}}
_TEST2_DATUM = {"c": ["1", "3/4"], "overrides": {"b2": "x/10", "b3": "x/10"}}
_TEST3_DATUM = {"c": ["1", "3/4", "3/50"], "overrides": {}}

test1_initial_data = [
    ["data0", "test1"],
    "data1",
]
test2_initial_data = [
    ["data2", "test2"],
    "data3",
]
test3_initial_data = [
    ["data5", "test3"],
    "data6",
]


def get_initial_data_by_name(initial_data_name):
    """Return the initial data and datum of a named data set.

    ``data0``, ``data1``, ``data2``, ``data3``, ``data5`` and ``data6`` are the
    initialisations of the three convergence tests.
    ``test1``, ``test2`` and ``test3`` are aliases for the first initialisation of
    each test.

    Parameters
    ----------
    initial_data_name : str
        String indicating which data set to return.

    Returns
    -------
    fragment : dict
        ``{"initial_data": ..., "datum": ...}`` in the JSON form of a run
        configuration.
    """
    d = initial_data_name.lower()

    if str_in_nested_list(test1_initial_data, d):
        return _set_test1_initial_data(d)
    elif str_in_nested_list(test2_initial_data, d):
        return _set_test2_initial_data(d)
    elif str_in_nested_list(test3_initial_data, d):
        return _set_test3_initial_data(d)
    else:
        raise ValueError(f"UNKNOWN INITIAL DATA: {d} in get_initial_data_by_name")


def _fragment(datum, **expressions):
    return {
        "initial_data": {**DEFAULT_INITIAL_DATA, **expressions},
        "datum": {"c": list(datum["c"]), "overrides": dict(datum["overrides"])},
    }


def _set_test1_initial_data(d):
    if d == "data0" or d == "test1":
        return _fragment(_TEST1_DATUM, b0="1", b1="1")
    elif d == "data1":
        return _fragment(_TEST1_DATUM, b0="1 + t", b1="1 - t")


def _set_test2_initial_data(d):
    if d == "data2" or d == "test2":
        return _fragment(_TEST2_DATUM, b2="x/10", b3="x/10")
    elif d == "data3":
        return _fragment(
            _TEST2_DATUM,
            b1="1 - t^2/10",
            b2="x/10 + t/100",
            b3="x/10 - t/100",
        )


def _set_test3_initial_data(d):
    if d == "data5" or d == "test3":
        return _fragment(_TEST3_DATUM, b2="1/10")
    elif d == "data6":
        return _fragment(_TEST3_DATUM, b1="1 - t/10", b2="1/10 + t^2/5")


def get_initial_state_by_name(
    initial_data_name,
    order=25,
    data_length=80,
    precision=30,
    iterations=0,
    root_choice=1,
):
    """Return the initial SolutionData of a named data set.

    Parameters
    ----------
    initial_data_name : str
        String indicating which data set to use.
    order : int, default=25
        Truncation order M.
    data_length : int, default=80
        Number N of b-coefficients.
    precision : int, default=30
        Significant digits.
    iterations : int, default=0
        Iterations the state is meant for, checked against ``data_length``.
    root_choice : {1, -1}, default=1
        Sign of the real part of ``q_t(0, 0)``.

    Returns
    -------
    state : SolutionData
        The initial state.
    """
    fragment = get_initial_data_by_name(initial_data_name)
    config = config_from_dict(
        {
            **fragment,
            "order": order,
            "data_length": data_length,
            "precision_digits": precision,
            "iterations": iterations,
            "root_choice": root_choice,
        }
    )
    return build_initial_state(config)
