"""Utilities for validating results."""

__all__ = [
    "validate_report_file",
    "validate_final_file",
    "compare_final_file_settings",
]

import json
import re

from swallowtail.utils.results_writing import REPORT_HEADER

_NORM = re.compile(r"-?\d\.\d{16}e[+-]\d{2,3}")
_COMPONENT = re.compile(r"p|q|b(0|[1-9]\d*)")
_FINAL_KEYS = (
    "config",
    "root_choice",
    "iterations_completed",
    "residual_norm",
    "runtimes_ms",
    "total_runtime_ms",
    "memory_usage",
    "p",
    "q",
    "b",
)


def validate_report_file(file_path):
    """Validate that a report file is in the correct format.

    Validates the header and that every row holds a positive iteration, a component
    name and a norm written with 17 significant digits. Iterations must not
    decrease.

    Parameters
    ----------
    file_path : str
        Path to the report file to be validated.

    Returns
    -------
    valid_file : bool
        True if the report file is valid, False otherwise.
    """
    with open(file_path, encoding="utf-8") as f:
        lines = f.read().splitlines()

    if len(lines) == 0 or not _check_header_line(lines[0]):
        return False

    last = 0
    for line in lines[1:]:
        if not _check_report_line(line):
            return False
        iteration = int(line.split(",")[0])
        if iteration < last:
            return False
        last = iteration

    return True


def _check_header_line(line):
    return line.strip() == REPORT_HEADER


def _check_report_line(line):
    line = line.split(",")
    if len(line) != 3:
        return False

    try:
        if int(line[0]) < 1:
            return False
    except ValueError:
        return False

    return (
        _COMPONENT.fullmatch(line[1]) is not None
        and _NORM.fullmatch(line[2]) is not None
    )


def validate_final_file(file_path):
    """Validate that a final results file is in the correct format.

    Parameters
    ----------
    file_path : str
        Path to the JSON file to be validated.

    Returns
    -------
    valid_file : bool
        True if every expected key is present and every coefficient table is well
        formed, False otherwise.
    """
    try:
        with open(file_path, encoding="utf-8") as f:
            document = json.load(f)
    except json.JSONDecodeError:
        return False

    if not isinstance(document, dict) or any(k not in document for k in _FINAL_KEYS):
        return False
    if document["root_choice"] not in (1, -1):
        return False
    if not isinstance(document["b"], list):
        return False
    if len(document["runtimes_ms"]) != document["iterations_completed"]:
        return False

    return all(
        _check_table(table) for table in [document["p"], document["q"]] + document["b"]
    )


def _check_table(table):
    if not isinstance(table, list):
        return False

    for entry in table:
        if not isinstance(entry, list) or len(entry) != 4:
            return False
        l, m, re_part, im_part = entry
        if not isinstance(l, int) or not isinstance(m, int) or l < 0 or m < 0:
            return False
        try:
            float(re_part)
            float(im_part)
        except (TypeError, ValueError):
            return False

    return True


def compare_final_file_settings(file_path1, file_path2):
    """Validate that two final results files can be compared.

    Files are deemed comparable if they share the truncation order, the precision,
    the evaluation point and the segment.

    Returns
    -------
    same_settings : bool
        True if the settings match, False otherwise.
    """
    with open(file_path1, encoding="utf-8") as f:
        document1 = json.load(f)

    with open(file_path2, encoding="utf-8") as f:
        document2 = json.load(f)

    if document1["order"] != document2["order"]:
        return False
    if document1["precision"] != document2["precision"]:
        return False

    config1, config2 = document1["config"], document2["config"]
    return all(
        config1.get(k) == config2.get(k) for k in ("x0", "segment", "samples")
    )
