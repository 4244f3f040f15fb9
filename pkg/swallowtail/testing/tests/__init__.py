"""Tests for testing functions and classes."""

import pkgutil

import swallowtail

ALL_SWALLOWTAIL_MODULES = [
    x[1]
    for x in pkgutil.walk_packages(swallowtail.__path__, swallowtail.__name__ + ".")
]

ALL_SWALLOWTAIL_MODULES_NO_TESTS = [
    x
    for x in ALL_SWALLOWTAIL_MODULES
    if not any(part == "tests" for part in x.split("."))
]
