"""Calculus on the algebra O[[z]] with the cubic relation z^3 = p z + q.

Elements are finite sums ``sum_k b_k z^k`` whose coefficients are truncated series in
(t, x). The pair (p, q) is carried by every element, and p and q are themselves
series, so ``z`` is the root of the cubic that varies with (t, x).
"""

__all__ = [
    "ZElement",
    "CauchyDatum",
    "SolutionData",
    "reduce",
    "zmul",
    "primitive_q",
    "diff_q",
    "diff_p",
    "diff_p_of_primitive",
    "datum_to_initial",
    "initial_datum_terms",
    "evaluate_element",
    "cubic_roots",
]

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from swallowtail.algebra.series import (
    DEFAULT_PRECISION,
    FAST_PRECISION,
    TruncatedSeries2,
    _precision_context,
    cauchy_convolution,
    diff,
    divide_exact,
    evaluate,
    reciprocal,
    to_scalar,
    tolerance,
)
from swallowtail.utils.exceptions import DivisibilityError


def _divisibility_tolerance(precision):
    return 10.0 ** (-precision + 8)


class ZElement:
    """Element ``sum_k coeffs[k] z^k`` of O[[z]].

    Indexing outside the stored range, including negative indices, returns the zero
    series, so ``u[k - 3]`` is always defined.

    Parameters
    ----------
    coeffs : sequence of TruncatedSeries2
        The coefficients b_0, ..., b_{N-1}.
    p, q : TruncatedSeries2
        The relation z^3 = p z + q.
    """

    __slots__ = ("coeffs", "p", "q", "_zero")

    def __init__(self, coeffs, p, q):
        p._check_compatible(q)
        coeffs = tuple(coeffs)
        for c in coeffs:
            p._check_compatible(c)
        self.coeffs = coeffs
        self.p = p
        self.q = q
        self._zero = TruncatedSeries2.zeros(p.order, p.precision)

    @property
    def order(self):
        """Truncation order shared by all coefficients."""
        return self.p.order

    @property
    def precision(self):
        """Working precision in significant digits."""
        return self.p.precision

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        if k < 0 or k >= len(self.coeffs):
            return self._zero
        return self.coeffs[k]

    def with_coeffs(self, coeffs):
        """Return an element with the same relation and new coefficients."""
        return ZElement(coeffs, self.p, self.q)

    def same_relation(self, other):
        """Whether ``other`` uses the same (p, q)."""
        return (self.p is other.p and self.q is other.q) or (
            self.p == other.p and self.q == other.q
        )

    def _check_relation(self, other):
        if not self.same_relation(other):
            raise ValueError("relation mismatch: elements use different (p, q)")

    def __add__(self, other):
        self._check_relation(other)
        n = max(len(self), len(other))
        return self.with_coeffs([self[k] + other[k] for k in range(n)])

    def __neg__(self):
        return self.with_coeffs([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ZElement):
            return zmul(self, other)
        return self.with_coeffs([c * other for c in self.coeffs])

    __rmul__ = __mul__

    def shift(self, n=1):
        """Multiply by ``z^n`` without reducing."""
        return self.with_coeffs([self._zero] * n + list(self.coeffs))

    def max_abs(self):
        """Largest coefficient modulus over all z-coefficients."""
        return max((c.max_abs() for c in self.coeffs), default=0.0)

    def is_zero(self, tol=0.0):
        """Whether every coefficient is zero to ``tol``."""
        return self.max_abs() <= tol

    def truncate(self, order):
        """Truncate the coefficients and the relation to a lower order."""
        return ZElement(
            [c.truncate(order) for c in self.coeffs],
            self.p.truncate(order),
            self.q.truncate(order),
        )

    def __repr__(self):
        return (
            f"ZElement(length={len(self)}, order={self.order}, "
            f"precision={self.precision})"
        )


def reduce(u):
    """Weierstrass reduction of ``u`` to z-degree at most 2.

    Every ``z^k`` with k >= 3 is replaced by ``p z^{k-2} + q z^{k-3}``, from the top
    degree down.

    Returns
    -------
    reduced : ZElement
        Element with exactly three coefficients.
    """
    b = list(u.coeffs) + [u._zero] * max(0, 3 - len(u))
    for k in range(len(b) - 1, 2, -1):
        if b[k].is_zero():
            continue
        b[k - 2] = b[k - 2] + u.p * b[k]
        b[k - 3] = b[k - 3] + u.q * b[k]
    return u.with_coeffs(b[:3])


def zmul(u, v):
    """Product in O[[z]]: convolution in z followed by reduction."""
    u._check_relation(v)
    if len(u) == 0 or len(v) == 0:
        return u.with_coeffs([u._zero] * 3)
    conv = cauchy_convolution(u.coeffs, v.coeffs, len(u) + len(v) - 1)
    return reduce(u.with_coeffs(conv))


def _coordinate_jacobian(p, q):
    p_t, p_x = diff(p, "t"), diff(p, "x")
    q_t, q_x = diff(q, "t"), diff(q, "x")
    det = p_t * q_x - p_x * q_t
    try:
        inv_det = reciprocal(det)
    except ZeroDivisionError as e:
        raise ValueError(
            "(p, q) are not local coordinates at the origin, the Jacobian "
            "p_t q_x - p_x q_t vanishes there"
        ) from e
    return inv_det, p_t, p_x, q_t, q_x


def _coefficient_derivatives(u, wrt):
    inv_det, p_t, p_x, q_t, q_x = _coordinate_jacobian(u.p, u.q)
    out = []
    for c in u.coeffs:
        if c.is_zero():
            out.append(c)
            continue
        c_t, c_x = diff(c, "t"), diff(c, "x")
        if wrt == "q":
            out.append((p_t * c_x - p_x * c_t) * inv_det)
        else:
            out.append((q_x * c_t - q_t * c_x) * inv_det)
    return out


def _divide_by_cubic_derivative(numerator, p, q):
    """Quotient of ``sum numerator[k] z^k`` by ``3 z^2 - p`` in O[[z]]."""
    precision = p.precision
    zero = TruncatedSeries2.zeros(p.order, precision)
    rem = list(numerator) + [zero] * max(0, 2 - len(numerator))
    quotient = [zero] * max(len(rem) - 2, 3)

    for k in range(len(rem) - 1, 1, -1):
        if rem[k].is_zero():
            continue
        c = rem[k] / 3
        quotient[k - 2] = quotient[k - 2] + c
        rem[k - 2] = rem[k - 2] + p * c

    r0, r1 = rem[0], rem[1]
    scale = max(1.0, max((c.max_abs() for c in numerator), default=0.0))
    tol = _divisibility_tolerance(precision) * scale
    if max(r0.max_abs(), r1.max_abs()) <= tol:
        return quotient

    # (3z^2 - p)(c0 + c1 z + c2 z^2) reduces to r0 + r1 z when
    # 3q c1 + (2/3) p^2 c2 = r0, 2p c1 + 3q c2 = r1, c0 = -(2/3) p c2
    discriminant = 9 * q * q - Fraction(4, 3) * p * p * p
    c1, res1 = divide_exact(3 * q * r0 - Fraction(2, 3) * p * p * r1, discriminant)
    c2, res2 = divide_exact(3 * q * r1 - 2 * p * r0, discriminant)
    residual = max(res1, res2)
    if residual > tol:
        raise DivisibilityError(
            f"element is not divisible by 3z^2 - p, residual norm {residual:.3e} "
            f"exceeds {tol:.0e}"
        )
    c0 = -Fraction(2, 3) * p * c2
    quotient[0] = quotient[0] + c0
    quotient[1] = quotient[1] + c1
    quotient[2] = quotient[2] + c2
    return quotient


def primitive_q(u):
    """The primitive in q normalised to vanish at z = 0.

    ``w_j = (1/j)(-p u_{j-1} + 3 u_{j-3})`` for j >= 1 and ``w_0 = 0``.

    Returns
    -------
    w : ZElement
        Element three longer than ``u``.
    """
    w = [u._zero]
    for j in range(1, len(u) + 3):
        w.append((-u.p * u[j - 1] + 3 * u[j - 3]) * Fraction(1, j))
    return u.with_coeffs(w)


def diff_q(u):
    """Derivative in q of a ring element.

    The coefficients are differentiated through the (t, x) Jacobian of (p, q) and the
    chain part ``sum k u_k z^{k-1}`` is divided exactly by ``3 z^2 - p``, using
    ``dz/dq = 1/(3 z^2 - p)``.

    Raises
    ------
    DivisibilityError
        If the chain part is not divisible by ``3 z^2 - p`` in the ring.
    """
    coefficient_part = u.with_coeffs(_coefficient_derivatives(u, "q"))
    chain = [u[k] * k for k in range(1, len(u))]
    return coefficient_part + u.with_coeffs(
        _divide_by_cubic_derivative(chain, u.p, u.q)
    )


def diff_p(u):
    """Derivative in p of a ring element, using ``dz/dp = z/(3 z^2 - p)``."""
    coefficient_part = u.with_coeffs(_coefficient_derivatives(u, "p"))
    chain = [u._zero] + [u[k] * k for k in range(1, len(u))]
    return coefficient_part + u.with_coeffs(
        _divide_by_cubic_derivative(chain, u.p, u.q)
    )


def diff_p_of_primitive(a):
    """Derivative in p of ``primitive_q(a)`` from the coefficients of ``a``.

    Computes
    ``sum_j (1/j)(3 a'_{j-3} - p a'_{j-1} - a_{j-1}) z^j + z sum_j a_j z^j`` where
    ``'`` is the coefficient derivative in p. No division by ``3 z^2 - p`` is needed.
    """
    derivatives = a.with_coeffs(_coefficient_derivatives(a, "p"))
    out = [a._zero]
    for j in range(1, len(a) + 3):
        term = 3 * derivatives[j - 3] - a.p * derivatives[j - 1] - a[j - 1]
        out.append(term * Fraction(1, j) + a[j - 1])
    return a.with_coeffs(out)


def evaluate_element(u, t, x, z):
    """Value of ``sum_k u_k(t, x) z^k`` at a point and a chosen root ``z``."""
    precision = u.precision
    with _precision_context(precision):
        z = to_scalar(z, precision)
        total = to_scalar(0, precision)
        for c in reversed(u.coeffs):
            total = total * z + evaluate(c, t, x).value
        return total


def cubic_roots(p0, q0, precision=FAST_PRECISION):
    """The three roots of ``z^3 - p0 z - q0`` sorted by (real, imaginary) part."""
    if precision <= FAST_PRECISION:
        roots = [complex(r) for r in np.roots([1, 0, -complex(p0), -complex(q0)])]
    else:
        with mpmath.workdps(precision):
            roots = mpmath.polyroots(
                [1, 0, -to_scalar(p0, precision), -to_scalar(q0, precision)],
                maxsteps=200,
                extraprec=2 * precision,
            )
            roots = [mpmath.mpc(r) for r in roots]
    return sorted(roots, key=lambda r: (float(r.real), float(r.imag)))


@dataclass(frozen=True)
class SolutionData:
    """The solution data (p, q, {b_k}) transformed by the fixed point map.

    Parameters
    ----------
    p, q : TruncatedSeries2
        The relation z^3 = p z + q.
    b : sequence of TruncatedSeries2
        The coefficients b_0, ..., b_{N-1}.
    root_choice : {1, -1}, default=1
        Sign of the real part of q_t(0, 0), selecting the eikonal root.
    """

    p: TruncatedSeries2
    q: TruncatedSeries2
    b: tuple
    root_choice: int = 1

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        self.p._check_compatible(self.q)
        for bk in self.b:
            self.p._check_compatible(bk)
        if self.root_choice not in (1, -1):
            raise ValueError(f"root_choice must be 1 or -1, got {self.root_choice}")

    @property
    def order(self):
        """Truncation order M."""
        return self.p.order

    @property
    def precision(self):
        """Working precision in significant digits."""
        return self.p.precision

    @property
    def data_length(self):
        """Number N of stored b-coefficients."""
        return len(self.b)

    def components(self):
        """List of ``(name, series)`` pairs: p, q, b0, b1, ..."""
        return [("p", self.p), ("q", self.q)] + [
            (f"b{k}", bk) for k, bk in enumerate(self.b)
        ]

    def as_zelement(self):
        """The element ``sum_k b_k z^k``."""
        return ZElement(self.b, self.p, self.q)

    def initial_slices(self):
        """The t = 0 restrictions ``b_k(0, x)``."""
        return [bk.restrict_t0() for bk in self.b]

    def check_initial_conditions(self, slices=None, tol=None):
        """Raise ValueError unless p(0,x) = 0, q(0,x) = x and b_k(0,x) match."""
        tol = tolerance(self.precision) if tol is None else tol
        x = TruncatedSeries2.variable("x", self.order, self.precision)
        if not self.p.restrict_t0().is_zero(tol):
            raise ValueError("p(0, x) must vanish identically")
        if not self.q.restrict_t0().allclose(x, tol):
            raise ValueError("q(0, x) must equal x")
        if slices is not None:
            zero = TruncatedSeries2.zeros(self.order, self.precision)
            for k, bk in enumerate(self.b):
                expected = slices[k] if k < len(slices) else zero
                if not bk.restrict_t0().allclose(expected, tol):
                    raise ValueError(f"b{k}(0, x) does not match the Cauchy datum")


@dataclass(frozen=True)
class CauchyDatum:
    """Cauchy datum ``u(0, x) = sum_j c_j x^{1 + (j - 1)/3}``.

    Parameters
    ----------
    c : sequence of numbers
        The coefficients c_1, c_2, ... in order. ``c[0]`` is c_1.
    overrides : dict of int to TruncatedSeries2, default={}
        Explicit x-only values of ``b_k(0, x)`` replacing the canonical constants.
    """

    c: tuple
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(self.c))
        if len(self.c) < 2:
            raise ValueError("a Cauchy datum needs at least c_1 and c_2")
        if self.c[0] == 0:
            raise ValueError("c_1 must be nonzero, the datum would be degenerate")
        if self.c[1] == 0:
            raise ValueError(
                "c_2 must be nonzero, the datum x^{4/3} term makes the singularity"
            )
        for k, s in self.overrides.items():
            if not isinstance(k, int) or k < 0:
                raise ValueError(f"override index must be a non-negative int, got {k}")
            if not s.is_x_only():
                raise ValueError(f"override for b{k} must not depend on t")

    def terms(self):
        """Map of exponent ``1 + (j - 1)/3`` to ``c_j`` for the nonzero c_j."""
        return {Fraction(j + 2, 3): cj for j, cj in enumerate(self.c, 1) if cj != 0}


def datum_to_initial(datum, order, precision=DEFAULT_PRECISION, length=None):
    """Solution data at t = 0 for a Cauchy datum.

    ``p(0, x) = 0``, ``q(0, x) = x`` and, canonically,
    ``b_{j-1}(0, x) = ((j + 2)/3) c_j``. Overrides replace single b_k.

    Parameters
    ----------
    datum : CauchyDatum
        The datum.
    order : int
        Truncation order of the series.
    precision : int, default=30
        Significant digits.
    length : int or None, default=None
        Pad the b-family with zeros to this length.

    Returns
    -------
    data : SolutionData
        The t-independent solution data.

    Examples
    --------
    >>> d = datum_to_initial(CauchyDatum((1, Fraction(3, 4))), 4, precision=15)
    >>> [complex(bk.coefficient(0, 0)) for bk in d.b]
    [(1+0j), (1+0j)]
    """
    slices = [
        TruncatedSeries2.constant(cj, order, precision) * Fraction(j + 2, 3)
        for j, cj in enumerate(datum.c, 1)
    ]
    n = max(len(slices), max(datum.overrides, default=-1) + 1, length or 0)
    zero = TruncatedSeries2.zeros(order, precision)
    slices += [zero] * (n - len(slices))
    for k, s in datum.overrides.items():
        zero._check_compatible(s)
        slices[k] = s

    return SolutionData(
        p=zero,
        q=TruncatedSeries2.variable("x", order, precision),
        b=slices,
    )


def initial_datum_terms(u, tol=None):
    """Read ``u(0, x)`` as a sum of fractional powers of x.

    With ``p(0, x) = 0`` and ``q(0, x) = x`` the root is ``z(0, x) = x^{1/3}``, so the
    term ``t^0 x^m`` of ``u_k`` contributes to the power ``m + k/3``.

    Returns
    -------
    terms : dict of Fraction to scalar
        Exponent to coefficient, zero coefficients dropped.
    """
    tol = tolerance(u.precision) if tol is None else tol
    if not u.p.restrict_t0().is_zero(tol):
        raise ValueError("initial_datum_terms requires p(0, x) = 0")
    x = TruncatedSeries2.variable("x", u.order, u.precision)
    if not u.q.restrict_t0().allclose(x, tol):
        raise ValueError("initial_datum_terms requires q(0, x) = x")

    terms = {}
    for k, c in enumerate(u.coeffs):
        for m in range(u.order):
            value = c.coefficient(0, m)
            if abs(value) <= tol:
                continue
            exponent = Fraction(3 * m + k, 3)
            terms[exponent] = terms.get(exponent, 0) + value
    return {e: v for e, v in sorted(terms.items()) if abs(v) > tol}
