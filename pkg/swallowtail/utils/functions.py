"""Miscellaneous functions for swallowtail."""

__all__ = [
    "str_in_nested_list",
    "parse_rational",
    "component_index",
]

import re
from fractions import Fraction

_COMPONENT = re.compile(r"b(0|[1-9]\d*)")


def str_in_nested_list(nested_list, item):
    """Find an item in a nested list."""
    if item in (s.casefold() for s in nested_list if isinstance(s, str)):
        return True
    else:
        return any(
            str_in_nested_list(nl, item) for nl in nested_list if isinstance(nl, list)
        )


def parse_rational(value):
    """Read an exact rational from an int, a float or a ``"num/den"`` string.

    Floats are read through their shortest decimal representation.

    Examples
    --------
    >>> parse_rational("3/50")
    Fraction(3, 50)
    >>> parse_rational(0.75)
    Fraction(3, 4)
    """
    if isinstance(value, bool):
        raise ValueError(f"{value!r} is not a number")
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"{value!r} is not a rational number")


def component_index(name):
    """Index k of a component name ``"b<k>"``, None for ``"p"`` and ``"q"``.

    Raises
    ------
    ValueError
        If the name is not p, q or b followed by an index.
    """
    if name in ("p", "q"):
        return None
    match = _COMPONENT.fullmatch(name)
    if match is None:
        raise ValueError(
            f"unknown component {name!r}, components are p, q, b0, b1, ..."
        )
    return int(match.group(1))
