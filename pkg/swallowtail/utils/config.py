"""Run configurations for fixed point experiments.

A run configuration is a JSON document. Every field is optional and defaults to the
values used for the published convergence tests::

    {
        "precision_digits": 30,
        "order": 25,
        "data_length": 80,
        "iterations": 25,
        "x0": [0.0, 0.1],
        "segment": [0.0, 0.1],
        "samples": 1001,
        "mode": "reference",
        "root_choice": 1,
        "initial_data": {"p": "t / 2", "q": "t + x", "b1": "1 - t^2 / 10"},
        "datum": {"c": ["1", "3/4"], "overrides": {"b2": "x / 10"}}
    }

The environment variable ``SWALLOWTAIL_PRECISION`` overrides ``precision_digits``
for every configuration loaded from file.
"""

__all__ = [
    "PRECISION_OVERRIDE",
    "DEFAULT_INITIAL_DATA",
    "DEFAULT_DATUM",
    "RunConfig",
    "config_from_dict",
    "config_to_dict",
    "load_config",
    "save_config",
    "build_fixed_point_config",
    "build_datum",
    "build_initial_state",
]

import json
import os
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction

from swallowtail.algebra.series import DEFAULT_PRECISION, FAST_PRECISION, Segment
from swallowtail.algebra.zring import CauchyDatum, SolutionData, datum_to_initial
from swallowtail.solvers.fixed_point import MODES, FixedPointConfig
from swallowtail.utils.exceptions import ConfigError, DegenerateMatrixError
from swallowtail.utils.expressions import expr_to_series, normalise_expr
from swallowtail.utils.functions import component_index, parse_rational

PRECISION_ENV = os.getenv("SWALLOWTAIL_PRECISION")
if isinstance(PRECISION_ENV, str):  # pragma: no cover
    PRECISION_OVERRIDE = int(PRECISION_ENV)
else:
    PRECISION_OVERRIDE = None

DEFAULT_INITIAL_DATA = {"p": "t / 2", "q": "t + x"}
DEFAULT_DATUM = {"c": ["1", "3/4"], "overrides": {}}

_FIELDS = (
    "precision_digits",
    "order",
    "data_length",
    "iterations",
    "x0",
    "segment",
    "samples",
    "mode",
    "root_choice",
    "initial_data",
    "datum",
)


@dataclass(frozen=True)
class RunConfig:
    """A validated run configuration.

    Parameters
    ----------
    precision_digits : int, default=30
        Significant digits, 15 selects the double precision backend.
    order : int, default=25
        Truncation order M.
    data_length : int, default=80
        Number N of initial b-coefficients.
    iterations : int, default=25
        Number I of fixed point iterations.
    x0 : complex, default=0.1j
        Evaluation point of the segment norms.
    segment : tuple of float, default=(0.0, 0.1)
        The t segment ``[a, b]`` of the norms.
    samples : int, default=1001
        Number of sample points on the segment.
    mode : {"reference", "corrected"}, default="reference"
        Convention of the b transport equations.
    root_choice : {1, -1}, default=1
        Sign of the real part of ``q_t(0, 0)``.
    initial_data : dict of str to str
        Normalised expressions for p, q and any explicitly given b_k.
    datum_c : tuple
        Cauchy datum coefficients c_1, c_2, ..., each a Fraction or a complex.
    datum_overrides : dict of str to str
        Normalised x-only expressions replacing datum slices ``b_k(0, x)``.
    """

    precision_digits: int = DEFAULT_PRECISION
    order: int = 25
    data_length: int = 80
    iterations: int = 25
    x0: complex = 0.1j
    segment: tuple = (0.0, 0.1)
    samples: int = 1001
    mode: str = "reference"
    root_choice: int = 1
    initial_data: dict = field(default_factory=lambda: dict(DEFAULT_INITIAL_DATA))
    datum_c: tuple = (Fraction(1), Fraction(3, 4))
    datum_overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("precision_digits", "order", "data_length", "iterations"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        if self.precision_digits < FAST_PRECISION:
            raise ConfigError(
                f"precision_digits must be at least {FAST_PRECISION}, "
                f"got {self.precision_digits}"
            )
        if self.order < 2:
            raise ConfigError(f"order must be at least 2, got {self.order}")
        if self.iterations < 0:
            raise ConfigError(
                f"iterations must be non-negative, got {self.iterations}"
            )
        if self.data_length < 3 * self.iterations + 5:
            raise ConfigError(
                f"data_length = {self.data_length} is too short for "
                f"{self.iterations} iterations, each iteration loses three "
                f"b-coefficients so at least {3 * self.iterations + 5} are needed"
            )
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.root_choice not in (1, -1):
            raise ConfigError(f"root_choice must be 1 or -1, got {self.root_choice}")
        a, b = self.segment
        if not a < b:
            raise ConfigError(f"segment requires a < b, got [{a}, {b}]")
        if self.samples < 2:
            raise ConfigError(f"samples must be at least 2, got {self.samples}")
        if len(self.datum_c) < 2:
            raise ConfigError("the datum needs at least c_1 and c_2")
        for name in list(self.initial_data) + list(self.datum_overrides):
            try:
                k = component_index(name)
            except ValueError as e:
                raise ConfigError(str(e)) from e
            if k is not None and k >= self.data_length:
                raise ConfigError(
                    f"{name} is beyond the data length N = {self.data_length}"
                )
        for name in self.datum_overrides:
            if component_index(name) is None:
                raise ConfigError(f"datum overrides apply to b_k only, got {name!r}")

    def datum_dict(self):
        """The datum in its JSON form."""
        return {
            "c": [_format_c(c) for c in self.datum_c],
            "overrides": dict(self.datum_overrides),
        }


def _format_c(c):
    if isinstance(c, Fraction):
        return str(c)
    return [float(c.real), float(c.imag)]


def _parse_c(value):
    try:
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise ValueError(f"{value!r} is not a [re, im] pair")
            re_part, im_part = (float(parse_rational(v)) for v in value)
            if im_part == 0:
                return parse_rational(value[0])
            return complex(re_part, im_part)
        return parse_rational(value)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise ConfigError(f"invalid datum coefficient {value!r}: {e}") from e


def _parse_complex(name, value):
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"{name} must be a [re, im] pair, got {value!r}") from e
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    raise ConfigError(f"{name} must be a [re, im] pair, got {value!r}")


def _sort_components(expressions):
    def key(name):
        k = component_index(name)
        return (-1 if k is None else k, name)

    return {name: expressions[name] for name in sorted(expressions, key=key)}


def _normalise_expressions(name, expressions):
    if not isinstance(expressions, dict):
        raise ConfigError(f"{name} must be a map of component name to expression")
    out = {}
    for component, source in expressions.items():
        try:
            component_index(component)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        out[component] = normalise_expr(source)
    return _sort_components(out)


def config_from_dict(d):
    """Build a validated RunConfig from its JSON form.

    Parameters
    ----------
    d : dict
        The parsed JSON document. Missing fields take their defaults.

    Returns
    -------
    config : RunConfig
        The configuration with every expression normalised.

    Raises
    ------
    ConfigError
        On an unknown field, a wrong type, a failed invariant or an invalid
        expression.
    """
    if not isinstance(d, dict):
        raise ConfigError("a run configuration must be a JSON object")
    unknown = sorted(set(d) - set(_FIELDS))
    if unknown:
        raise ConfigError(f"unknown configuration fields {unknown}")

    kwargs = {
        name: d[name]
        for name in (
            "precision_digits",
            "order",
            "data_length",
            "iterations",
            "samples",
            "mode",
            "root_choice",
        )
        if name in d
    }
    if "x0" in d:
        kwargs["x0"] = _parse_complex("x0", d["x0"])
    if "segment" in d:
        segment = d["segment"]
        if not isinstance(segment, (list, tuple)) or len(segment) != 2:
            raise ConfigError(f"segment must be a pair [a, b], got {segment!r}")
        try:
            kwargs["segment"] = (float(segment[0]), float(segment[1]))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"segment must hold two numbers, got {segment!r}") from e

    given = _normalise_expressions("initial_data", d.get("initial_data", {}))
    kwargs["initial_data"] = _sort_components({**DEFAULT_INITIAL_DATA, **given})

    datum = d.get("datum", DEFAULT_DATUM)
    if isinstance(datum, list):
        datum = {"c": datum}
    if not isinstance(datum, dict) or "c" not in datum:
        raise ConfigError("datum must be an object with a list 'c' of coefficients")
    unknown = sorted(set(datum) - {"c", "overrides"})
    if unknown:
        raise ConfigError(f"unknown datum fields {unknown}")
    kwargs["datum_c"] = tuple(_parse_c(c) for c in datum["c"])
    kwargs["datum_overrides"] = _normalise_expressions(
        "datum overrides", datum.get("overrides", {})
    )

    return RunConfig(**kwargs)


def config_to_dict(config):
    """The normalised JSON form of a RunConfig.

    ``config_to_dict(config_from_dict(d))`` is the normalised form of ``d``.
    """
    return {
        "precision_digits": config.precision_digits,
        "order": config.order,
        "data_length": config.data_length,
        "iterations": config.iterations,
        "x0": [float(config.x0.real), float(config.x0.imag)],
        "segment": [float(config.segment[0]), float(config.segment[1])],
        "samples": config.samples,
        "mode": config.mode,
        "root_choice": config.root_choice,
        "initial_data": dict(config.initial_data),
        "datum": config.datum_dict(),
    }


def load_config(path):
    """Load a run configuration from a JSON file.

    If ``SWALLOWTAIL_PRECISION`` is set it replaces ``precision_digits``.

    Raises
    ------
    ConfigError
        If the file is missing, is not valid JSON or fails validation.
    """
    try:
        with open(path, encoding="utf-8") as f:
            d = json.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"configuration file {path} does not exist") from e
    except json.JSONDecodeError as e:
        raise ConfigError(
            f"configuration file {path} is not valid JSON: {e.msg} at line "
            f"{e.lineno} column {e.colno}"
        ) from e

    config = config_from_dict(d)
    if PRECISION_OVERRIDE is not None:
        warnings.warn(
            f"SWALLOWTAIL_PRECISION overrides precision_digits "
            f"{config.precision_digits} with {PRECISION_OVERRIDE}",
            stacklevel=2,
        )
        config = replace(config, precision_digits=PRECISION_OVERRIDE)
    return config


def save_config(config, path):
    """Write the normalised JSON form of a RunConfig."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(config_to_dict(config), f, indent=4)
        f.write("\n")


def build_fixed_point_config(config):
    """The FixedPointConfig of a run."""
    return FixedPointConfig(
        order=config.order,
        data_length=config.data_length,
        iterations=config.iterations,
        precision=config.precision_digits,
        x0=config.x0,
        segment=Segment(config.segment[0], config.segment[1], config.samples),
        mode=config.mode,
    )


def build_datum(config):
    """The CauchyDatum of a run with its overrides lowered to series.

    Raises
    ------
    ConfigError
        If c_1 = 0 or an override depends on t.
    DegenerateMatrixError
        If c_2 = 0, the eikonal matrix M is then singular at the origin.
    """
    if config.datum_c[0] != 0 and config.datum_c[1] == 0:
        raise DegenerateMatrixError(
            "the eikonal matrix M is singular at the origin, its inverse requires "
            "the Cauchy datum coefficient c_2 != 0"
        )
    overrides = {
        component_index(name): expr_to_series(
            source, config.order, config.precision_digits
        )
        for name, source in config.datum_overrides.items()
    }
    try:
        return CauchyDatum(config.datum_c, overrides)
    except ValueError as e:
        raise ConfigError(f"invalid datum: {e}") from e


def build_initial_state(config):
    """The initial SolutionData of a run.

    p and q are read from ``initial_data``. Each b_k is read from ``initial_data``
    when given and is the constant-in-t datum slice otherwise.

    Raises
    ------
    ConfigError
        If p(0, x) != 0, q(0, x) != x or a given b_k disagrees with the datum at
        t = 0.
    """
    order, precision = config.order, config.precision_digits
    datum = build_datum(config)
    slices = datum_to_initial(datum, order, precision, length=config.data_length).b
    if len(slices) > config.data_length:
        raise ConfigError(
            f"the datum defines {len(slices)} coefficients, more than the data "
            f"length N = {config.data_length}"
        )

    series = {
        name: expr_to_series(source, order, precision)
        for name, source in config.initial_data.items()
    }
    b = [series.get(f"b{k}", s) for k, s in enumerate(slices)]
    state = SolutionData(series["p"], series["q"], b, config.root_choice)
    try:
        state.check_initial_conditions(slices)
    except ValueError as e:
        raise ConfigError(f"initial data disagrees with the datum: {e}") from e
    return state
