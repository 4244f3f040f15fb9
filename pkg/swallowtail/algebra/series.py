"""Bivariate power series in (t, x) truncated at a fixed total degree.

A series of order M keeps every term t^l x^m with l + m <= M - 1. Coefficients are
stored in a dense (M, M) array whose entries above the anti-diagonal are always zero.
At 15 significant digits the array is complex128, at any higher precision it is an
object array of ``mpmath.mpc`` values and all arithmetic runs under
``mpmath.workdps(precision)``.
"""

__all__ = [
    "FAST_PRECISION",
    "DEFAULT_PRECISION",
    "Coeff",
    "Segment",
    "TruncatedSeries2",
    "add",
    "mul",
    "diff",
    "integrate_t",
    "reciprocal",
    "evaluate",
    "sup_norm",
    "divide_exact",
    "cauchy_convolution",
    "random_series",
    "tolerance",
    "to_scalar",
]

import cmath
from contextlib import nullcontext
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Number

import mpmath
import numpy as np
from sklearn.utils import check_random_state

FAST_PRECISION = 15
DEFAULT_PRECISION = 30


def tolerance(precision):
    """Return the zero tolerance ``10^(-precision + 5)`` for a precision."""
    return 10.0 ** (-precision + 5)


def _precision_context(precision):
    if precision <= FAST_PRECISION:
        return nullcontext()
    return mpmath.workdps(precision)


def _is_finite(value):
    if isinstance(value, (mpmath.mpc, mpmath.mpf)):
        return bool(mpmath.isfinite(mpmath.re(value))) and bool(
            mpmath.isfinite(mpmath.im(value))
        )
    return cmath.isfinite(complex(value))


def to_scalar(value, precision):
    """Convert a number to the scalar type used at ``precision``.

    Floats are read through their shortest decimal representation when converted to
    mpmath, so ``0.1`` becomes the 30 digit decimal 0.1 rather than the binary double.

    Parameters
    ----------
    value : int, float, complex, Fraction, Coeff or mpmath number
        The value to convert.
    precision : int
        Significant decimal digits.

    Returns
    -------
    scalar : complex or mpmath.mpc
        ``complex`` at 15 digits, ``mpmath.mpc`` above.
    """
    if isinstance(value, Coeff):
        value = value.value
    if isinstance(value, np.integer):
        value = int(value)

    if precision <= FAST_PRECISION:
        if isinstance(value, (mpmath.mpf, mpmath.mpc)):
            return complex(value)
        if isinstance(value, Fraction):
            return complex(float(value))
        return complex(value)

    with mpmath.workdps(precision):
        if isinstance(value, Fraction):
            return mpmath.mpc(mpmath.mpf(value.numerator) / value.denominator)
        if isinstance(value, float):
            return mpmath.mpc(mpmath.mpf(repr(value)))
        if isinstance(value, complex):
            return mpmath.mpc(
                mpmath.mpf(repr(value.real)), mpmath.mpf(repr(value.imag))
            )
        if isinstance(value, (str, mpmath.mpf, mpmath.mpc, int, np.number)):
            return mpmath.mpc(mpmath.mpmathify(value))
        return mpmath.mpc(value)


def _zero(precision):
    return 0j if precision <= FAST_PRECISION else mpmath.mpc(0)


def _weights(order, precision):
    # 1..order-1 as floats, or as python ints for the mpmath backend
    if precision <= FAST_PRECISION:
        return np.arange(1, order, dtype=np.float64)
    return np.array(list(range(1, order)), dtype=object)


@lru_cache(maxsize=None)
def _degree_mask(order):
    idx = np.arange(order)
    mask = idx[:, None] + idx[None, :] < order
    mask.flags.writeable = False
    return mask


@lru_cache(maxsize=None)
def _lag_indices(order):
    idx = np.arange(order)
    lag = idx[:, None] - idx[None, :]
    valid = lag >= 0
    lag = np.clip(lag, 0, None)
    lag.flags.writeable = False
    valid.flags.writeable = False
    return lag, valid


@dataclass(frozen=True)
class Coeff:
    """A finite complex coefficient tagged with its working precision.

    Parameters
    ----------
    value : complex or mpmath.mpc
        The coefficient value.
    precision : int, default=30
        Significant decimal digits, at least 15.
    """

    value: complex
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.precision < FAST_PRECISION:
            raise ValueError(
                f"precision must be at least {FAST_PRECISION} digits, "
                f"got {self.precision}"
            )
        if not _is_finite(self.value):
            raise ValueError(f"Coeff value must be finite, got {self.value}")

    def __complex__(self):
        return complex(self.value)

    def __abs__(self):
        return float(abs(self.value))


@dataclass(frozen=True)
class Segment:
    """A real time segment [a, b] sampled at ``samples`` equispaced points."""

    a: float = 0.0
    b: float = 0.1
    samples: int = 1001

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"Segment requires a < b, got [{self.a}, {self.b}]")
        if self.samples < 2:
            raise ValueError(f"Segment requires samples >= 2, got {self.samples}")

    def points(self):
        """Return the sample points as a float array."""
        return np.linspace(self.a, self.b, self.samples)


class TruncatedSeries2:
    """Power series in (t, x) truncated at total degree ``order - 1``.

    Instances are immutable. Arithmetic operators accept series of the same order and
    precision, or plain numbers.

    Parameters
    ----------
    coefficients : array-like of shape (order, order)
        Entry ``[l, m]`` is the coefficient of ``t^l x^m``. Entries with
        ``l + m >= order`` are discarded.
    precision : int, default=30
        Significant decimal digits, at least 15. Exactly 15 selects the complex128
        backend.

    Examples
    --------
    >>> t = TruncatedSeries2.variable("t", 3, precision=15)
    >>> x = TruncatedSeries2.variable("x", 3, precision=15)
    >>> ((1 + t) * (1 + x)).terms
    {(0, 0): (1+0j), (0, 1): (1+0j), (1, 0): (1+0j), (1, 1): (1+0j)}
    """

    __slots__ = ("_coefficients", "order", "precision")

    def __init__(self, coefficients, precision=DEFAULT_PRECISION):
        if precision < FAST_PRECISION:
            raise ValueError(
                f"precision must be at least {FAST_PRECISION} digits, got {precision}"
            )
        arr = np.asarray(coefficients, dtype=object)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(
                f"coefficients must be a non-empty square array, got shape {arr.shape}"
            )

        order = arr.shape[0]
        mask = _degree_mask(order)
        zero = _zero(precision)
        if precision <= FAST_PRECISION:
            out = np.zeros((order, order), dtype=np.complex128)
        else:
            out = np.full((order, order), zero, dtype=object)

        for l, m in zip(*np.nonzero(mask)):
            value = arr[l, m]
            if value is None or value == 0:
                continue
            if not _is_finite(value):
                raise ValueError(f"coefficient of t^{l} x^{m} is not finite: {value}")
            out[l, m] = to_scalar(value, precision)

        self._set(out, precision)

    def _set(self, arr, precision):
        arr.flags.writeable = False
        self._coefficients = arr
        self.order = arr.shape[0]
        self.precision = precision

    @classmethod
    def _from_array(cls, arr, precision):
        # arr must already be masked and of the backend dtype
        obj = cls.__new__(cls)
        obj._set(arr, precision)
        return obj

    @classmethod
    def zeros(cls, order, precision=DEFAULT_PRECISION):
        """Return the zero series of the given order."""
        if order < 1:
            raise ValueError(f"order must be positive, got {order}")
        if precision <= FAST_PRECISION:
            arr = np.zeros((order, order), dtype=np.complex128)
        else:
            arr = np.full((order, order), mpmath.mpc(0), dtype=object)
        return cls._from_array(arr, precision)

    @classmethod
    def constant(cls, value, order, precision=DEFAULT_PRECISION):
        """Return the constant series ``value``."""
        return cls.from_terms({(0, 0): value}, order, precision)

    @classmethod
    def variable(cls, name, order, precision=DEFAULT_PRECISION):
        """Return the series ``t`` or ``x``."""
        if name == "t":
            return cls.from_terms({(1, 0): 1}, order, precision)
        elif name == "x":
            return cls.from_terms({(0, 1): 1}, order, precision)
        raise ValueError(f"Unknown variable {name}, must be 't' or 'x'")

    @classmethod
    def from_terms(cls, terms, order, precision=DEFAULT_PRECISION):
        """Build a series from a ``{(l, m): value}`` map.

        Terms of total degree ``order`` or more are dropped.
        """
        out = cls.zeros(order, precision)._coefficients.copy()
        with _precision_context(precision):
            for (l, m), value in terms.items():
                if l < 0 or m < 0:
                    raise ValueError(f"negative exponent in term ({l}, {m})")
                if l + m < order:
                    out[l, m] = out[l, m] + to_scalar(value, precision)
        return cls._from_array(out, precision)

    @property
    def coefficients(self):
        """Read-only (order, order) coefficient array."""
        return self._coefficients

    @property
    def is_fast(self):
        """Whether the series uses the complex128 backend."""
        return self.precision <= FAST_PRECISION

    @property
    def terms(self):
        """Map of exponent pairs to the nonzero coefficients."""
        convert = complex if self.is_fast else (lambda v: v)
        return {
            (int(l), int(m)): convert(self._coefficients[l, m])
            for l, m in zip(*np.nonzero(_degree_mask(self.order)))
            if self._coefficients[l, m] != 0
        }

    def coefficient(self, l, m):
        """Return the coefficient of ``t^l x^m``, zero outside the stored range."""
        if l < 0 or m < 0 or l + m >= self.order:
            return _zero(self.precision)
        return self._coefficients[l, m]

    def homogeneous(self, degree):
        """Return the degree ``degree`` part as a list indexed by the power of t."""
        if degree < 0 or degree >= self.order:
            return [_zero(self.precision)] * (max(degree, 0) + 1)
        return [self._coefficients[c, degree - c] for c in range(degree + 1)]

    def max_abs(self):
        """Largest coefficient modulus as a float."""
        if self.is_fast:
            return float(np.max(np.abs(self._coefficients)))
        with mpmath.workdps(self.precision):
            return float(max(abs(v) for v in self._coefficients.flat))

    def is_zero(self, tol=0.0):
        """Whether every coefficient modulus is at most ``tol``."""
        return self.max_abs() <= tol

    def is_x_only(self):
        """Whether the series has no t-dependence."""
        return all(
            self._coefficients[l, m] == 0
            for l in range(1, self.order)
            for m in range(self.order - l)
        )

    def restrict_t0(self):
        """Return the x-only series ``u(0, x)``."""
        out = self.zeros(self.order, self.precision)._coefficients.copy()
        out[0, :] = self._coefficients[0, :]
        return self._from_array(out, self.precision)

    def truncate(self, order):
        """Return the series truncated to a lower ``order``."""
        if order < 1 or order > self.order:
            raise ValueError(
                f"truncation order must be in [1, {self.order}], got {order}"
            )
        arr = self._coefficients[:order, :order].copy()
        arr[~_degree_mask(order)] = _zero(self.precision)
        return self._from_array(arr, self.precision)

    def allclose(self, other, tol=None):
        """Whether all coefficients agree with ``other`` to ``tol``."""
        tol = tolerance(self.precision) if tol is None else tol
        return (self - other).max_abs() <= tol

    def _like(self, arr):
        if not self.is_fast:
            arr = np.where(_degree_mask(self.order), arr, mpmath.mpc(0))
        else:
            arr = np.where(_degree_mask(self.order), arr, 0).astype(np.complex128)
        return self._from_array(arr, self.precision)

    def _check_compatible(self, other):
        if self.order != other.order:
            raise ValueError(
                f"order mismatch: {self.order} and {other.order}, series must share "
                "a truncation order"
            )
        if self.precision != other.precision:
            raise ValueError(
                f"precision mismatch: {self.precision} and {other.precision} digits"
            )

    def __add__(self, other):
        with _precision_context(self.precision):
            if isinstance(other, TruncatedSeries2):
                self._check_compatible(other)
                return self._from_array(
                    self._coefficients + other._coefficients, self.precision
                )
            if isinstance(other, (Number, Fraction, Coeff, mpmath.mpf, mpmath.mpc)):
                arr = self._coefficients.copy()
                arr[0, 0] = arr[0, 0] + to_scalar(other, self.precision)
                return self._from_array(arr, self.precision)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        with _precision_context(self.precision):
            return self._from_array(-self._coefficients, self.precision)

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries2):
            self._check_compatible(other)
            with _precision_context(self.precision):
                return self._from_array(
                    self._coefficients - other._coefficients, self.precision
                )
        return self + (-to_scalar(other, self.precision))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries2):
            self._check_compatible(other)
            return self._from_array(
                _product(self._coefficients, other._coefficients, self.precision),
                self.precision,
            )
        if isinstance(other, (Number, Fraction, Coeff, mpmath.mpf, mpmath.mpc)):
            with _precision_context(self.precision):
                return self._from_array(
                    self._coefficients * to_scalar(other, self.precision),
                    self.precision,
                )
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries2):
            raise TypeError(
                "series division is not elementwise, use reciprocal or divide_exact"
            )
        with _precision_context(self.precision):
            scalar = to_scalar(other, self.precision)
            if scalar == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self._from_array(self._coefficients / scalar, self.precision)

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"exponent must be a non-negative int, got {exponent}")
        result = self.constant(1, self.order, self.precision)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries2):
            return NotImplemented
        return (
            self.order == other.order
            and self.precision == other.precision
            and bool(np.all(self._coefficients == other._coefficients))
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"TruncatedSeries2(order={self.order}, precision={self.precision}, "
            f"terms={self.terms})"
        )


def _product(a, b, precision):
    order = a.shape[0]
    mask = _degree_mask(order)

    if precision <= FAST_PRECISION:
        lag, valid = _lag_indices(order)
        # shifted[l, L, m] = a[L - l, m], toeplitz[l, p, m] = b[l, p - m]
        shifted = np.where(valid.T[:, :, None], a[lag.T], 0)
        toeplitz = np.where(valid[None, :, :], b[:, lag], 0)
        out = np.tensordot(shifted, toeplitz, axes=([0, 2], [0, 2]))
        out[~mask] = 0
        return out

    with mpmath.workdps(precision):
        out = np.full((order, order), mpmath.mpc(0), dtype=object)
        for l, m in zip(*np.nonzero(mask)):
            c = a[l, m]
            if c == 0:
                continue
            out[l:, m:] += c * b[: order - l, : order - m]
        out[~mask] = mpmath.mpc(0)
        return out


def add(u, v):
    """Coefficient-wise sum of two series of the same order.

    Examples
    --------
    >>> t = TruncatedSeries2.variable("t", 2, precision=15)
    >>> x = TruncatedSeries2.variable("x", 2, precision=15)
    >>> add(t, x) == t + x
    True
    """
    if not isinstance(u, TruncatedSeries2) or not isinstance(v, TruncatedSeries2):
        raise TypeError("add expects two TruncatedSeries2")
    return u + v


def mul(u, v):
    """Cauchy product of two series with all terms of total degree >= M dropped.

    Examples
    --------
    >>> t = TruncatedSeries2.variable("t", 2, precision=15)
    >>> x = TruncatedSeries2.variable("x", 2, precision=15)
    >>> mul(t, x).is_zero()
    True
    """
    if not isinstance(u, TruncatedSeries2) or not isinstance(v, TruncatedSeries2):
        raise TypeError("mul expects two TruncatedSeries2")
    return u * v


def diff(u, var):
    """Formal partial derivative in ``var``, keeping the nominal order.

    Parameters
    ----------
    u : TruncatedSeries2
        The series to differentiate.
    var : {"t", "x"}
        The differentiation variable.

    Returns
    -------
    du : TruncatedSeries2
        Derivative of the same order as ``u``. Its top total degree is always zero.
    """
    arr = u.coefficients
    out = u.zeros(u.order, u.precision).coefficients.copy()
    weights = _weights(u.order, u.precision)
    with _precision_context(u.precision):
        if var == "t":
            out[:-1, :] = arr[1:, :] * weights[:, None]
        elif var == "x":
            out[:, :-1] = arr[:, 1:] * weights[None, :]
        else:
            raise ValueError(f"Unknown variable {var}, must be 't' or 'x'")
    return u._like(out)


def integrate_t(rhs, init):
    """Antiderivative in t with a prescribed value on t = 0.

    Parameters
    ----------
    rhs : TruncatedSeries2
        The t-derivative of the result.
    init : TruncatedSeries2
        The value of the result at t = 0. Must not depend on t.

    Returns
    -------
    w : TruncatedSeries2
        The series with ``diff(w, "t") == rhs`` below the top degree and
        ``w(0, x) == init``, truncated to total degree < M.
    """
    rhs._check_compatible(init)
    if not init.is_x_only():
        raise ValueError("integrate_t initial value must not depend on t")

    out = rhs.zeros(rhs.order, rhs.precision).coefficients.copy()
    weights = _weights(rhs.order, rhs.precision)
    with _precision_context(rhs.precision):
        out[1:, :] = rhs.coefficients[:-1, :] / weights[:, None]
        out[0, :] = init.coefficients[0, :]
    return rhs._like(out)


def reciprocal(u):
    """Multiplicative inverse of a series with a non-vanishing constant term.

    Raises
    ------
    ZeroDivisionError
        If ``|u(0, 0)|`` is below ``tolerance(u.precision)``.
    """
    u00 = u.coefficient(0, 0)
    if abs(u00) < tolerance(u.precision):
        raise ZeroDivisionError(
            f"series constant term {complex(u00):.3e} is below the "
            f"{tolerance(u.precision):.0e} threshold and cannot be inverted"
        )

    with _precision_context(u.precision):
        w = (u - u00) / u00
        # 1/(1 + w) = sum (-w)^k, w has no constant term so w^M vanishes
        result = u.constant(1, u.order, u.precision)
        for _ in range(u.order - 1):
            result = 1 - w * result
        return result / u00


def evaluate(u, t, x):
    """Evaluate a series at a point by Horner's scheme.

    Returns
    -------
    value : Coeff
        The value at ``(t, x)``.
    """
    with _precision_context(u.precision):
        t = to_scalar(t, u.precision)
        x = to_scalar(x, u.precision)
        arr = u.coefficients
        total = _zero(u.precision)
        for l in range(u.order - 1, -1, -1):
            row = _zero(u.precision)
            for m in range(u.order - l - 1, -1, -1):
                row = row * x + arr[l, m]
            total = total * t + row
        return Coeff(total, max(u.precision, FAST_PRECISION))


def sup_norm(u, x0, seg):
    """Maximum modulus of ``t -> u(t, x0)`` over the sampled segment.

    Parameters
    ----------
    u : TruncatedSeries2
        The series to measure.
    x0 : complex, Coeff or mpmath.mpc
        The evaluation point in x.
    seg : Segment
        Real segment in t and its sampling density.

    Returns
    -------
    norm : float
        ``max |u(t_i, x0)|`` over the ``seg.samples`` equispaced points.
    """
    if u.is_fast:
        x0 = complex(to_scalar(x0, u.precision))
        rows = u.coefficients @ (x0 ** np.arange(u.order))
        values = np.polynomial.polynomial.polyval(seg.points(), rows)
        return float(np.max(np.abs(values)))

    with mpmath.workdps(u.precision):
        x0 = to_scalar(x0, u.precision)
        arr = u.coefficients
        rows = []
        for l in range(u.order):
            row = mpmath.mpc(0)
            for m in range(u.order - l - 1, -1, -1):
                row = row * x0 + arr[l, m]
            rows.append(row)

        a = mpmath.mpf(repr(float(seg.a)))
        step = (mpmath.mpf(repr(float(seg.b))) - a) / (seg.samples - 1)
        best = mpmath.mpf(0)
        for i in range(seg.samples):
            t = a + step * i
            value = mpmath.mpc(0)
            for row in reversed(rows):
                value = value * t + row
            best = max(best, abs(value))
        return float(best)


def _homogeneous_series(values, degree, order, precision):
    terms = {(c, degree - c): v for c, v in enumerate(values) if v != 0}
    return TruncatedSeries2.from_terms(terms, order, precision)


def divide_exact(num, den):
    """Divide two series that are known to divide exactly.

    The quotient is solved degree by degree against the lowest homogeneous part of
    ``den``, by forward substitution in the power of t starting at its first nonzero
    coefficient. When ``den`` has total valuation d, the top d degrees of the quotient
    cannot be determined and are left zero.

    Parameters
    ----------
    num, den : TruncatedSeries2
        Numerator and denominator of the same order and precision.

    Returns
    -------
    quotient : TruncatedSeries2
        The series q with ``q * den`` matching ``num`` up to truncation.
    residual : float
        Largest coefficient modulus of ``num - q * den``. Nonzero when ``den`` does
        not divide ``num``.
    """
    num._check_compatible(den)
    order, precision = num.order, num.precision
    threshold = tolerance(precision) * max(1.0, den.max_abs())

    valuation = None
    for degree in range(order):
        if max(abs(v) for v in den.homogeneous(degree)) > threshold:
            valuation = degree
            break
    if valuation is None:
        raise ZeroDivisionError("divide_exact denominator is zero to tolerance")

    if valuation == 0:
        quotient = num * reciprocal(den)
        return quotient, (num - quotient * den).max_abs()

    with _precision_context(precision):
        delta = den.homogeneous(valuation)
        pivot = next(i for i, v in enumerate(delta) if abs(v) > threshold)
        remainder = num
        quotient = TruncatedSeries2.zeros(order, precision)

        for degree in range(order - valuation):
            target = remainder.homogeneous(degree + valuation)
            gamma = []
            for b in range(degree + 1):
                acc = target[b + pivot]
                for prior in range(max(0, b + pivot - valuation), b):
                    acc = acc - gamma[prior] * delta[b + pivot - prior]
                gamma.append(acc / delta[pivot])

            part = _homogeneous_series(gamma, degree, order, precision)
            quotient = quotient + part
            remainder = remainder - part * den

    return quotient, remainder.max_abs()


def cauchy_convolution(first, second, n):
    """Index convolution ``S_k = sum_{j <= k} first_j * second_{k - j}`` for k < n.

    Sequences shorter than ``n`` are padded with zero series. At 15 digits all n
    outputs are produced from one stacked contraction per k.

    Parameters
    ----------
    first, second : sequence of TruncatedSeries2
        The two families, sharing order and precision.
    n : int
        Number of outputs.

    Returns
    -------
    out : list of TruncatedSeries2
        The n convolution terms.
    """
    if n <= 0:
        return []
    reference = first[0] if len(first) > 0 else second[0]
    for s in list(first) + list(second):
        reference._check_compatible(s)
    order, precision = reference.order, reference.precision
    zero = TruncatedSeries2.zeros(order, precision)

    if precision > FAST_PRECISION:
        out = []
        with mpmath.workdps(precision):
            for k in range(n):
                total = zero
                for j in range(min(k + 1, len(first))):
                    if k - j >= len(second):
                        continue
                    a, b = first[j], second[k - j]
                    if a.is_zero() or b.is_zero():
                        continue
                    total = total + a * b
                out.append(total)
        return out

    f = np.zeros((n, order, order), dtype=np.complex128)
    g = np.zeros((n, order, order), dtype=np.complex128)
    for j, s in enumerate(first[:n]):
        f[j] = s.coefficients
    for j, s in enumerate(second[:n]):
        g[n - 1 - j] = s.coefficients

    lag, valid = _lag_indices(order)
    # shifted[j, l, m, L] = f_j[L - l, m], toeplitz[i, l, m, p] = g_i[l, p - m]
    shifted = np.where(valid.T[None, :, :, None], f[:, lag.T], 0)
    shifted = np.ascontiguousarray(shifted.transpose(0, 1, 3, 2))
    toeplitz = np.where(valid[None, None, :, :], g[:, :, lag], 0)
    toeplitz = np.ascontiguousarray(toeplitz.transpose(0, 1, 3, 2))

    mask = _degree_mask(order)
    out = []
    for k in range(n):
        left = shifted[: k + 1].reshape(-1, order)
        right = toeplitz[n - 1 - k :].reshape(-1, order)
        arr = left.T @ right
        arr[~mask] = 0
        out.append(TruncatedSeries2._from_array(arr, precision))
    return out


def random_series(
    order, precision=DEFAULT_PRECISION, random_state=None, variables="tx", degree=None
):
    """Generate a series with uniformly random complex coefficients.

    Parameters
    ----------
    order : int
        Truncation order.
    precision : int, default=30
        Significant decimal digits.
    random_state : int, RandomState instance or None, default=None
        Seed or generator passed to ``check_random_state``.
    variables : {"tx", "t", "x"}, default="tx"
        Which variables the series may depend on.
    degree : int or None, default=None
        Maximum total degree of the terms, ``order - 1`` if None.

    Returns
    -------
    series : TruncatedSeries2
        Coefficients with real and imaginary parts in [-1, 1].
    """
    rng = check_random_state(random_state)
    degree = order - 1 if degree is None else min(degree, order - 1)
    terms = {}
    for l in range(order):
        for m in range(order - l):
            if l + m > degree:
                continue
            if (l > 0 and "t" not in variables) or (m > 0 and "x" not in variables):
                continue
            re, im = rng.uniform(-1, 1, size=2)
            terms[(l, m)] = complex(re, im)
    return TruncatedSeries2.from_terms(terms, order, precision)
