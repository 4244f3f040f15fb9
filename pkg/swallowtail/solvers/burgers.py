"""The inviscid Burgers equation u_t - u u_x = 0 with a cube root singular datum.

Contains the Cauchy-Kovalevskaya series solution of the (a, p, q) system, the
contact flow of the equation and its cusp, numerical monodromy of the roots of
z^3 = p z + q around the discriminant, the explicit square root shock example and
the characteristic fields of the companion system.
"""

__all__ = [
    "DISCRIMINANT_THRESHOLD",
    "NEWTON_MAX_STEPS",
    "CKState",
    "PathInPQ",
    "CharacteristicField",
    "ck_solve",
    "ck_system_residual",
    "burgers_residual",
    "discriminant",
    "cusp_relation",
    "contact_flow",
    "contact_field",
    "contact_singular_time",
    "continue_root",
    "monodromy",
    "circle_loop",
    "concatenate",
    "reverse",
    "quintic_smoke_roots",
    "shock_times",
    "shock_discriminant",
    "characteristic_y",
    "branch_values",
    "characteristic_solution",
    "companion_matrix",
    "characteristic_fields",
]

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import mpmath
import numpy as np

from swallowtail.algebra.series import (
    DEFAULT_PRECISION,
    Coeff,
    TruncatedSeries2,
    _precision_context,
    diff,
    to_scalar,
)
from swallowtail.algebra.zring import cubic_roots
from swallowtail.utils.exceptions import RootTrackingError

DISCRIMINANT_THRESHOLD = 1e-8
NEWTON_MAX_STEPS = 8
_NEWTON_TOL = 1e-12
_MAX_BISECTIONS = 20


@dataclass(frozen=True)
class CKState:
    """Series solution (a, p, q) with ``u = a + z`` and ``z^3 = p z + q``."""

    a: TruncatedSeries2
    p: TruncatedSeries2
    q: TruncatedSeries2

    @property
    def order(self):
        """Truncation order of the three series."""
        return self.a.order


def _rows_series(arr, precision):
    return TruncatedSeries2(arr, precision)


def ck_solve(a0, order=None):
    """Solve ``a_t = p_x/3``, ``p_t = a p_x + q_x``, ``q_t = a q_x + p p_x/3``.

    The t-power coefficients of degree d + 1 are computed from the data of degree
    at most d, starting from ``a(0, x) = a0``, ``p(0, x) = 0`` and ``q(0, x) = x``.

    Parameters
    ----------
    a0 : TruncatedSeries2
        Initial value of a, without t-dependence.
    order : int or None, default=None
        Truncation order of the solution. The order of ``a0`` if None.

    Returns
    -------
    state : CKState
        The solution, satisfying each equation to total degree ``order - 2``.

    Examples
    --------
    >>> a0 = TruncatedSeries2.zeros(4, precision=15)
    >>> s = ck_solve(a0)
    >>> s.p.terms, s.q.terms
    ({(1, 0): (1+0j)}, {(0, 1): (1+0j)})
    """
    if not a0.is_x_only():
        raise ValueError("ck_solve initial value a0 must not depend on t")
    precision = a0.precision
    if order is not None and order != a0.order:
        a0 = TruncatedSeries2.from_terms(a0.terms, order, precision)
    order = a0.order

    a = np.array(a0.coefficients, dtype=object)
    p = np.array(TruncatedSeries2.zeros(order, precision).coefficients, dtype=object)
    q = np.array(
        TruncatedSeries2.variable("x", order, precision).coefficients, dtype=object
    )

    for degree in range(order - 1):
        sa, sp, sq = (_rows_series(v, precision) for v in (a, p, q))
        sp_x, sq_x = diff(sp, "x"), diff(sq, "x")
        rhs_a = sp_x / 3
        rhs_p = sa * sp_x + sq_x
        rhs_q = sa * sq_x + sp * sp_x / 3
        with _precision_context(precision):
            for arr, rhs in ((a, rhs_a), (p, rhs_p), (q, rhs_q)):
                arr[degree + 1, :] = rhs.coefficients[degree, :] / (degree + 1)

    return CKState(
        _rows_series(a, precision),
        _rows_series(p, precision),
        _rows_series(q, precision),
    )


def _truncated_max(series_list, order):
    keep = max(order - 1, 1)
    return max(s.truncate(keep).max_abs() for s in series_list)


def ck_system_residual(state):
    """Largest coefficient of the three Cauchy-Kovalevskaya equation defects."""
    a, p, q = state.a, state.p, state.q
    a_t, p_t, q_t = diff(a, "t"), diff(p, "t"), diff(q, "t")
    p_x, q_x = diff(p, "x"), diff(q, "x")
    return _truncated_max(
        [
            a_t - p_x / 3,
            p_t - a * p_x - q_x,
            q_t - a * q_x - p * p_x / 3,
        ],
        state.order,
    )


def burgers_residual(state):
    """Largest coefficient of the z^0, z^1, z^2, z^3 identities of ``u = a + z``.

    Substituting ``u = a + z`` into the Burgers equation and clearing the denominator
    ``3 z^2 - p`` gives a cubic in z whose four coefficients must vanish. The last one
    is ``3 a_x``, so the residual is positive whenever a0 is not constant.
    """
    a, p, q = state.a, state.p, state.q
    a_t, p_t, q_t = diff(a, "t"), diff(p, "t"), diff(q, "t")
    a_x, p_x, q_x = diff(a, "x"), diff(p, "x"), diff(q, "x")
    return _truncated_max(
        [
            -p * a_t + q_t + a * p * a_x - a * q_x,
            p_t + p * a_x - a * p_x - q_x,
            a_t - a * a_x - p_x / 3,
            3 * a_x,
        ],
        state.order,
    )


def _unwrap(value):
    return value.value if isinstance(value, Coeff) else value


def discriminant(p, q):
    """The cusp polynomial ``4 p^3 - 27 q^2``.

    Exact for int and Fraction arguments. A Coeff is returned when either argument is
    a Coeff.

    Examples
    --------
    >>> discriminant(3, -2)
    0
    """
    value = 4 * _unwrap(p) ** 3 - 27 * _unwrap(q) ** 2
    for arg in (p, q):
        if isinstance(arg, Coeff):
            return Coeff(value, arg.precision)
    return value


def cusp_relation(t, y):
    """The singular set ``4 t^3 - 27 y^2`` of the contact flow in (t, y)."""
    return discriminant(t, y)


def _cube_root(x, precision):
    with mpmath.workdps(precision):
        return mpmath.root(to_scalar(x, max(precision, 16)), 3)


def contact_singular_time(x, precision=DEFAULT_PRECISION):
    """The flow time ``3 x^{2/3}`` at which the contact flow from x blows up."""
    with mpmath.workdps(precision):
        return 3 * _cube_root(x, precision) ** 2


def contact_flow(x, s, precision=DEFAULT_PRECISION):
    """Point of the contact flow started on the initial 1-jet above x.

    Parameters
    ----------
    x : complex
        Initial point, nonzero. The principal cube root is used.
    s : complex
        Flow time.
    precision : int, default=30
        Significant digits of the mpmath evaluation.

    Returns
    -------
    point : tuple of mpmath.mpc
        ``(t, y, u, tau, xi) = (s, x - x^{1/3} s, x^{1/3}, x^{1/3}/(3 x^{2/3} - s),
        1/(3 x^{2/3} - s))``.
    """
    if _unwrap(x) == 0:
        raise ValueError("contact_flow requires x != 0")
    with mpmath.workdps(precision):
        x = to_scalar(x, max(precision, 16))
        s = to_scalar(s, max(precision, 16))
        u = _cube_root(x, precision)
        denominator = 3 * u**2 - s
        if abs(denominator) < 10.0 ** (-precision + 5) * max(1, abs(s)):
            raise ValueError(
                f"flow time s = {complex(s)} is the singular time 3 x^(2/3) of the "
                "contact flow"
            )
        xi = 1 / denominator
        return (s, x - u * s, u, u * xi, xi)


def contact_field(point):
    """Contact vector field ``(1, -u, 0, tau xi, xi^2)`` of ``tau - u xi = 0``."""
    _, _, u, tau, xi = point
    return (1, -u, 0, tau * xi, xi**2)


@dataclass(frozen=True)
class PathInPQ:
    """Sampled path in the (p, q) plane avoiding the discriminant.

    Parameters
    ----------
    points : sequence of (complex, complex)
        The samples ``(p(s_i), q(s_i))``.
    closed : bool, default=False
        Whether the path is a loop. The first and last samples must then agree.
    """

    points: tuple
    closed: bool = False

    def __post_init__(self):
        points = tuple((complex(p), complex(q)) for p, q in self.points)
        object.__setattr__(self, "points", points)
        if len(points) == 0:
            raise ValueError("a path needs at least one sample")
        for i, (p, q) in enumerate(points):
            if abs(4 * p**3 - 27 * q**2) < DISCRIMINANT_THRESHOLD:
                raise ValueError(
                    f"path sample {i} at (p, q) = ({p}, {q}) lies on the "
                    "discriminant 4p^3 - 27q^2 = 0"
                )
        if self.closed and abs(points[0][0] - points[-1][0]) + abs(
            points[0][1] - points[-1][1]
        ) > 1e-12:
            raise ValueError("a closed path must end at its starting point")

    @property
    def start(self):
        """First sample."""
        return self.points[0]

    @property
    def end(self):
        """Last sample."""
        return self.points[-1]


def circle_loop(p, q_center, radius, start_angle=0.0, samples=200):
    """Loop ``q = q_center + radius e^{i theta}`` at fixed p, theta from its start.

    Returns
    -------
    loop : PathInPQ
        A closed path with ``samples + 1`` points based at the angle
        ``start_angle``.
    """
    angles = start_angle + 2 * np.pi * np.arange(samples) / samples
    points = [(p, q_center + radius * cmath.exp(1j * a)) for a in angles]
    return PathInPQ(points + [points[0]], closed=True)


def concatenate(first, second):
    """The path ``first`` followed by ``second``."""
    gap = abs(first.end[0] - second.start[0]) + abs(first.end[1] - second.start[1])
    if gap > 1e-12:
        raise ValueError("paths can only be concatenated end to start")
    return PathInPQ(
        first.points + second.points[1:], closed=first.closed and second.closed
    )


def reverse(path):
    """The path traversed backwards."""
    return PathInPQ(path.points[::-1], closed=path.closed)


def _newton(coefficients, z, max_steps=NEWTON_MAX_STEPS):
    derivative = np.polyder(coefficients)
    scale = max(1.0, float(np.max(np.abs(coefficients))))
    for _ in range(max_steps):
        slope = np.polyval(derivative, z)
        if abs(slope) < 1e-14:
            return None
        step = np.polyval(coefficients, z) / slope
        z = z - step
        if abs(step) < _NEWTON_TOL * max(1.0, abs(z)):
            if abs(np.polyval(coefficients, z)) < 1e-9 * scale:
                return z
            return None
    return None


def _track(polynomial, start, end, z, depth=0):
    """Continue the root z of ``polynomial(start)`` to ``end`` with bisection."""
    source, target = polynomial(start), polynomial(end)
    # tangent predictor, the coefficients are affine in the path parameters
    slope = np.polyval(np.polyder(source), z)
    if abs(slope) > 1e-14:
        predicted = z - (np.polyval(target, z) - np.polyval(source, z)) / slope
    else:
        predicted = z
    candidate = _newton(target, predicted)
    if candidate is not None:
        roots = np.roots(target)
        nearest = roots[np.argmin(np.abs(roots - z))]
        if abs(nearest - candidate) < 1e-8 * max(1.0, abs(candidate)):
            return candidate

    if depth >= _MAX_BISECTIONS:
        raise RootTrackingError(
            "Newton continuation did not converge after "
            f"{_MAX_BISECTIONS} bisections, refine the path near {end}"
        )
    middle = tuple((a + b) / 2 for a, b in zip(start, end))
    z = _track(polynomial, start, middle, z, depth + 1)
    return _track(polynomial, middle, end, z, depth + 1)


def _cubic(point):
    p, q = point
    return np.array([1, 0, -p, -q], dtype=np.complex128)


def continue_root(path, z_start):
    """Analytic continuation of a root of ``z^3 - p z - q`` along a path.

    Each step runs at most ``NEWTON_MAX_STEPS`` Newton iterations from the previous
    root. A step that does not converge, or converges to a root other than the
    nearest one, is bisected.

    Parameters
    ----------
    path : PathInPQ
        The path, avoiding the discriminant.
    z_start : complex
        A root at the first sample.

    Returns
    -------
    z_end : complex
        The continued root at the last sample.

    Raises
    ------
    RootTrackingError
        If a step still fails after repeated bisection.
    """
    z = complex(_unwrap(z_start))
    p0, q0 = path.start
    if abs(z**3 - p0 * z - q0) > 1e-8 * max(1.0, abs(p0), abs(q0)):
        raise ValueError(f"z_start = {z} is not a root at the start of the path")

    for start, end in zip(path.points[:-1], path.points[1:]):
        if start == end:
            continue
        middle = tuple((a + b) / 2 for a, b in zip(start, end))
        if abs(4 * middle[0] ** 3 - 27 * middle[1] ** 2) < DISCRIMINANT_THRESHOLD:
            raise RootTrackingError(
                f"path segment from {start} to {end} passes through the "
                "discriminant, refine the path"
            )
        z = _track(_cubic, start, end, z)
    return z


def monodromy(loop):
    """Permutation of the three roots induced by a loop.

    Roots at the base point are labelled 0, 1, 2 in increasing (real, imaginary)
    order. Entry i of the result is the label of the root reached by continuing
    root i around the loop.

    Returns
    -------
    permutation : tuple of int
        A permutation of (0, 1, 2).
    """
    if not loop.closed:
        raise ValueError("monodromy requires a closed path")
    p0, q0 = loop.start
    roots = [complex(r) for r in cubic_roots(p0, q0)]
    labels = []
    for z in roots:
        end = continue_root(loop, z)
        labels.append(int(np.argmin([abs(end - r) for r in roots])))
    if sorted(labels) != [0, 1, 2]:
        raise RootTrackingError(
            f"continued roots {labels} do not form a permutation, refine the loop"
        )
    return tuple(labels)


def quintic_smoke_roots(x0, t_end, samples=50):
    """Track the root ``x0^{1/5}`` of ``u^5 - u t - y`` along a characteristic.

    The characteristic ``y = x0 - x0^{1/5} t`` is sampled for t in [0, t_end]. The
    tracked root should keep the constant value ``x0^{1/5}``.

    Returns
    -------
    roots : numpy.ndarray
        The tracked root at each of the ``samples + 1`` times.
    """
    root = complex(x0) ** 0.2
    times = np.linspace(0, t_end, samples + 1)
    points = [(t, x0 - root * t) for t in times]

    def quintic(point):
        t, y = point
        return np.array([1, 0, 0, 0, -t, -y], dtype=np.complex128)

    z = root
    out = [z]
    for start, end in zip(points[:-1], points[1:]):
        z = _track(quintic, start, end, z)
        out.append(z)
    return np.array(out)


def _sqrt(value):
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
        if num * num == value.numerator and den * den == value.denominator:
            return Fraction(num, den)
        return math.sqrt(value)
    if isinstance(value, complex):
        return cmath.sqrt(value)
    return math.sqrt(value)


def shock_times(x0, x1):
    """Branch switch and crossing times of two characteristics of the square root datum.

    For ``u(0, x) = x^{1/2}`` the characteristic from ``x_j`` is
    ``y = x_j - x_j^{1/2} t``. The one from x0 touches the singular locus
    ``y + t^2/4 = 0`` at ``t0 = 2 x0^{1/2}`` and meets the one from x1 at
    ``t_star = x0^{1/2} + x1^{1/2}``.

    Parameters
    ----------
    x0, x1 : int, Fraction or float
        Starting points with ``0 < x0 < x1``. Fractions that are perfect squares give
        exact results.

    Returns
    -------
    t0, t_star
        The two times.

    Examples
    --------
    >>> shock_times(Fraction(1, 4), 1)
    (Fraction(1, 1), Fraction(3, 2))
    """
    if not 0 < x0 < x1:
        raise ValueError(f"shock_times requires 0 < x0 < x1, got x0={x0}, x1={x1}")
    r0, r1 = _sqrt(x0), _sqrt(x1)
    return 2 * r0, r0 + r1


def characteristic_y(x, t):
    """The characteristic ``y = x - x^{1/2} t`` of the square root datum."""
    return x - _sqrt(x) * t


def shock_discriminant(t, y):
    """Discriminant ``delta = y + t^2/4`` of the quadratic ``u^2 - t u - y``.

    Examples
    --------
    >>> shock_discriminant(1, characteristic_y(Fraction(1, 4), 1))
    Fraction(0, 1)
    """
    if isinstance(t, (int, Fraction)):
        t = Fraction(t)
    return y + t**2 / 4


def branch_values(t, x0):
    """The two roots ``r_pm = t/2 pm sqrt((t/2 - x0^{1/2})^2)`` for real t.

    Returns
    -------
    r_plus, r_minus
        ``r_plus`` equals ``x0^{1/2}`` before the branch switch time and ``r_minus``
        after it.
    """
    half = Fraction(t) / 2 if isinstance(t, (int, Fraction)) else t / 2
    gap = half - _sqrt(x0)
    root = abs(gap) if not isinstance(gap, complex) else cmath.sqrt(gap * gap)
    return half + root, half - root


def characteristic_solution(t, x0):
    """Solution value along the characteristic from x0 and the branch carrying it.

    Returns
    -------
    value, branch : number, {"r+", "r-"}
        ``r_plus`` for ``t <= 2 x0^{1/2}`` and ``r_minus`` afterwards.
    """
    r_plus, r_minus = branch_values(t, x0)
    if t <= 2 * _sqrt(x0):
        return r_plus, "r+"
    return r_minus, "r-"


class CharacteristicField(NamedTuple):
    """Eigenvalue, eigenvector and genuine nonlinearity of one characteristic field."""

    eigenvalue: object
    eigenvector: tuple
    nonlinearity: object


def companion_matrix(m, v1, precision=DEFAULT_PRECISION):
    """The m x m matrix with ones on the superdiagonal and last row ``(v1, 0, ...)``."""
    with mpmath.workdps(precision):
        A = mpmath.zeros(m, m)
        for i in range(m - 1):
            A[i, i + 1] = 1
        A[m - 1, 0] = to_scalar(_unwrap(v1), max(precision, 16))
        return A


def characteristic_fields(m, v1, precision=DEFAULT_PRECISION):
    """Characteristic fields of the companion system with ``lambda^m = v1``.

    ``lambda_k = v1^{1/m} e^{2 pi i k/m}``, ``omega_k = (1, lambda_k, ...,
    lambda_k^{m-1})`` and the genuine nonlinearity ``lambda_k/(m v1)``, which never
    vanishes.

    Parameters
    ----------
    m : int
        Number of fields, at least 1.
    v1 : complex
        Nonzero coefficient.
    precision : int, default=30
        Significant digits.

    Returns
    -------
    fields : list of CharacteristicField
        One entry per k = 0, ..., m - 1.
    """
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    if _unwrap(v1) == 0:
        raise ValueError("v1 must be nonzero for the fields to be distinct")
    fields = []
    with mpmath.workdps(precision):
        v1 = to_scalar(_unwrap(v1), max(precision, 16))
        base = mpmath.root(v1, m)
        for k in range(m):
            lam = base * mpmath.expjpi(mpmath.mpf(2 * k) / m)
            omega = tuple(lam**j for j in range(m))
            fields.append(CharacteristicField(lam, omega, lam / (m * v1)))
    return fields
