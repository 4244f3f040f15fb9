"""Fixed point iteration for the ramified Cauchy problem u_tt - u_x u_xx = 0.

The solution is sought as ``u = primitive_q(sum_k b_k z^k)`` with ``z^3 = p z + q``.
One application of the map F solves the linearised eikonal system for new (p, q)
and then integrates the transport equations of the b_k in t. Each application loses
three b-coefficients.

Two conventions are available. ``"reference"`` reproduces the published iteration,
which places ``p_tt`` in the x-derivative bracket and uses the quotient family
``C_k = sum_j (p/3)^j A_{k+2+2j}`` unscaled. ``"corrected"`` uses ``p_xx`` in that
bracket and the exact quotient ``C_k/3`` of the division by ``3 z^2 - p``.
"""

__all__ = [
    "MODES",
    "SolutionData",
    "FixedPointConfig",
    "IterationReport",
    "EikonalSolution",
    "ResidualDiagnostic",
    "build_B",
    "assemble_M",
    "eikonal_step",
    "build_A",
    "build_C",
    "b_update",
    "map_F",
    "iterate",
    "reconstruct_u",
    "residual",
    "compare_states",
]

import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from swallowtail.algebra.series import (
    DEFAULT_PRECISION,
    FAST_PRECISION,
    Segment,
    TruncatedSeries2,
    cauchy_convolution,
    diff,
    integrate_t,
    reciprocal,
    sup_norm,
)
from swallowtail.algebra.zring import SolutionData, ZElement, primitive_q, reduce
from swallowtail.utils.exceptions import DegenerateMatrixError, NumericAbort
from swallowtail.utils.memory_recorder import record_max_memory

MODES = ("reference", "corrected")


def _check_mode(mode):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


@dataclass(frozen=True)
class FixedPointConfig:
    """Parameters of a fixed point run.

    Parameters
    ----------
    order : int, default=25
        Truncation order M of every series.
    data_length : int, default=80
        Initial number N of b-coefficients.
    iterations : int, default=25
        Number I of applications of the map.
    precision : int, default=30
        Significant digits. 15 selects the double precision backend.
    x0 : complex, default=0.1j
        The x evaluation point of the segment norms.
    segment : Segment, default=Segment()
        The t segment of the norms.
    mode : {"reference", "corrected"}, default="reference"
        Convention of the b transport equations.
    track_residual : bool, default=True
        Whether to compute the residual diagnostic of every iterate.
    """

    order: int = 25
    data_length: int = 80
    iterations: int = 25
    precision: int = DEFAULT_PRECISION
    x0: complex = 0.1j
    segment: Segment = field(default_factory=Segment)
    mode: str = "reference"
    track_residual: bool = True

    def __post_init__(self):
        _check_mode(self.mode)
        if self.order < 2:
            raise ValueError(f"order must be at least 2, got {self.order}")
        if self.iterations < 0:
            raise ValueError(f"iterations must be non-negative, got {self.iterations}")
        if self.precision < FAST_PRECISION:
            raise ValueError(
                f"precision must be at least {FAST_PRECISION} digits, "
                f"got {self.precision}"
            )
        if self.data_length < 3 * self.iterations + 5:
            raise ValueError(
                f"data_length N = {self.data_length} is too short for "
                f"{self.iterations} iterations, each iteration loses three "
                f"b-coefficients so N >= 3 I + 5 = {3 * self.iterations + 5} is needed"
            )


@dataclass
class IterationReport:
    """Per iteration segment norms of the component changes.

    Attributes
    ----------
    diffs : list of dict
        Entry ``i - 1`` maps component names (p, q, b0, ...) to
        ``sup |psi^(i) - psi^(i-1)|`` over the segment at x0.
    runtimes_ms : list of int
        Runtime of each application of the map.
    memory_usage : int
        Peak memory growth over the run in bytes, 0 when not recorded.
    residual_norms : list of float
        Residual diagnostic of the initial state and of every iterate.
    """

    diffs: list = field(default_factory=list)
    runtimes_ms: list = field(default_factory=list)
    memory_usage: int = 0
    residual_norms: list = field(default_factory=list)

    def __len__(self):
        return len(self.diffs)

    @property
    def components(self):
        """Component names in order of first appearance."""
        names = []
        for row in self.diffs:
            names.extend(n for n in row if n not in names)
        return names

    def norms(self, component):
        """Norms of one component for every iteration, None where it is missing."""
        return [row.get(component) for row in self.diffs]

    def max_diff(self, iteration):
        """Largest component change of an iteration, counted from 1."""
        return max(self.diffs[iteration - 1].values())

    def rows(self):
        """Yield ``(iteration, component, norm)`` triples."""
        for i, row in enumerate(self.diffs, 1):
            for name, value in row.items():
                yield i, name, value


class EikonalSolution(NamedTuple):
    """New (p, q) and the time derivatives solved from the eikonal system."""

    p: TruncatedSeries2
    q: TruncatedSeries2
    p_t: TruncatedSeries2
    q_t: TruncatedSeries2


class ResidualDiagnostic(NamedTuple):
    """Ring part, 1/(3z^2 - p) part and segment norm of ``u_tt - u_x u_xx``."""

    regular: ZElement
    singular: ZElement
    norm: float


def _inverse(k):
    return Fraction(1, k) if k else 0


class _Jets:
    """Derivatives of the solution data and the F, G, H families.

    ``F_j`` are the z-coefficients of u_x, ``G_m`` the numerator coefficients of the
    1/(3z^2 - p) part of u_xx and ``H_m`` its ring coefficients.
    """

    def __init__(self, d, mode="reference"):
        _check_mode(mode)
        self.mode = mode
        self.p, self.q, self.b = d.p, d.q, d.b
        self.n = len(d.b)
        self.zero = TruncatedSeries2.zeros(d.order, d.precision)

        self.p_t, self.p_x = diff(d.p, "t"), diff(d.p, "x")
        self.q_t, self.q_x = diff(d.q, "t"), diff(d.q, "x")
        self.p_tt, self.p_xx = diff(self.p_t, "t"), diff(self.p_x, "x")
        self.q_tt, self.q_xx = diff(self.q_t, "t"), diff(self.q_x, "x")

        self.b_t = [diff(bk, "t") for bk in d.b]
        self.b_x = [diff(bk, "x") for bk in d.b]
        self.b_tt = [diff(bk, "t") for bk in self.b_t]
        self.b_xx = [diff(bk, "x") for bk in self.b_x]

        self.second = self.p_tt if mode == "reference" else self.p_xx
        self.quotient_scale = 1 if mode == "reference" else Fraction(1, 3)

    def get(self, family, k):
        if k < 0 or k >= len(family):
            return self.zero
        return family[k]

    def _term(self, weight, left, right):
        if weight == 0 or left.is_zero() or right.is_zero():
            return self.zero
        return left * right * weight

    @cached_property
    def p_t2(self):
        return self.p_t * self.p_t

    @cached_property
    def F(self):
        out = []
        for j in range(self.n):
            value = self._term(1, self.q_x, self.b[j])
            if j >= 1:
                inv = _inverse(j)
                value = (
                    value
                    + self._term(1 - inv, self.p_x, self.b[j - 1])
                    - self._term(inv, self.p, self.b_x[j - 1])
                    + self.get(self.b_x, j - 3) * (3 * inv)
                )
            out.append(value)
        return out

    @cached_property
    def G(self):
        px2, pxqx, qx2 = self.p_x * self.p_x, self.p_x * self.q_x, self.q_x * self.q_x
        return [
            self._term(m - 1, px2, self.get(self.b, m - 1))
            + self._term(2 * m, pxqx, self.b[m])
            + self._term(m + 1, qx2, self.get(self.b, m + 1))
            for m in range(self.n)
        ]

    @cached_property
    def H(self):
        out = []
        for m in range(self.n):
            value = self._term(1, self.q_xx, self.b[m]) + self._term(
                2, self.q_x, self.b_x[m]
            )
            if m >= 1:
                inv = _inverse(m)
                value = (
                    value
                    + self._term(2 - 2 * inv, self.p_x, self.b_x[m - 1])
                    + self._term(1 - inv, self.second, self.b[m - 1])
                    - self._term(inv, self.p, self.b_xx[m - 1])
                    + self.get(self.b_xx, m - 3) * (3 * inv)
                )
            out.append(value)
        return out

    @cached_property
    def FG(self):
        return cauchy_convolution(self.F, self.G, self.n)

    @cached_property
    def FH(self):
        return cauchy_convolution(self.F, self.H, self.n)

    def E(self, p_t=None, q_t=None):
        """``E_k = (k-1) p_t^2 b_{k-1} + 2k p_t q_t b_k + (k+1) q_t q_t b_{k+1}``.

        The hatted derivatives replace one factor of the last two terms when given.
        Returns the family for k <= N - 1.
        """
        pq = (self.p_t if p_t is None else p_t) * self.q_t
        qq = (self.q_t if q_t is None else q_t) * self.q_t
        return [
            self._term(k - 1, self.p_t2, self.get(self.b, k - 1))
            + self._term(2 * k, pq, self.b[k])
            + self._term(k + 1, qq, self.get(self.b, k + 1))
            for k in range(self.n)
        ]


def _p3_sum(p, terms):
    """Horner evaluation of ``sum_k (p/3)^k terms[k]``.

    Terms beyond the series order are dropped when p has no constant term.
    """
    if len(terms) == 0:
        return TruncatedSeries2.zeros(p.order, p.precision)
    if p.coefficient(0, 0) == 0:
        terms = terms[: p.order]
    p3 = p / 3
    total = terms[-1]
    for term in reversed(terms[:-1]):
        total = term + p3 * total
    return total


def build_B(d, K=None):
    """The family ``B_k = sum_j F_j G_{k-j} - (k-1) p_t^2 b_{k-1}`` for k <= K.

    Parameters
    ----------
    d : SolutionData
        The current solution data.
    K : int or None, default=None
        Largest index, ``ceil((N - 2)/2)`` if None.

    Returns
    -------
    B : list of TruncatedSeries2
        ``B_0, ..., B_K``.
    """
    return _build_B(_Jets(d), K)


def _build_B(jets, K=None):
    K = _b_family_limit(jets.n) if K is None else K
    FG = jets.FG
    return [
        jets.get(FG, k) - jets._term(k - 1, jets.p_t2, jets.get(jets.b, k - 1))
        for k in range(K + 1)
    ]


def _b_family_limit(n):
    # ceil((N - 2)/2)
    return max(-(-(n - 2) // 2), 0)


def assemble_M(d):
    """The 2 x 2 matrix of the linearised eikonal system.

    Returns
    -------
    M : tuple of tuple of TruncatedSeries2
        ``((M11, M12), (M21, M22))`` with ``M21 = 2 M12``.
    """
    return _assemble_M(_Jets(d))


def _assemble_M(jets):
    b, n, q_t = jets.b, jets.n, jets.q_t
    m11 = _p3_sum(jets.p, [b[2 * k] * k for k in range((n + 1) // 2)]) * q_t * 4
    m12 = _p3_sum(jets.p, [b[2 * k + 1] * (2 * k + 1) for k in range(n // 2)]) * q_t
    m22 = (
        _p3_sum(jets.p, [b[2 * k + 2] * (k + 1) for k in range((n - 1) // 2)])
        * q_t
        * 2
    )
    return (m11, m12), (m12 * 2, m22)


def eikonal_step(d):
    """Solve the linearised eikonal system for the new p and q.

    ``(p_t, q_t) = M^{-1} (sum_k (p/3)^k B_{2k}, sum_k (p/3)^k B_{2k+1})`` is inverted
    through the adjugate and the series reciprocal of the determinant, then
    integrated with ``p(0, x) = 0`` and ``q(0, x) = x``.

    Returns
    -------
    eikonal : EikonalSolution
        The new p, q and their t-derivatives.

    Raises
    ------
    DegenerateMatrixError
        If the determinant of M vanishes at the origin.
    """
    return _eikonal_step(_Jets(d), d.root_choice)


def _eikonal_step(jets, root_choice=1):
    B = _build_B(jets)
    rhs1 = _p3_sum(jets.p, B[0::2])
    rhs2 = _p3_sum(jets.p, B[1::2])
    (m11, m12), (m21, m22) = _assemble_M(jets)

    det = m11 * m22 - m12 * m21
    try:
        inv_det = reciprocal(det)
    except ZeroDivisionError as e:
        raise DegenerateMatrixError(
            "the eikonal matrix M is singular at the origin, its inverse requires "
            "the Cauchy datum coefficient c_2 != 0"
        ) from e

    p_t = (m22 * rhs1 - m12 * rhs2) * inv_det
    q_t = (m11 * rhs2 - m21 * rhs1) * inv_det

    order, precision = jets.p.order, jets.p.precision
    p = integrate_t(p_t, TruncatedSeries2.zeros(order, precision))
    q = integrate_t(q_t, TruncatedSeries2.variable("x", order, precision))

    q_t00 = complex(q_t.coefficient(0, 0))
    if q_t00.real * root_choice < 0:
        warnings.warn(
            f"eikonal root changed sign, q_t(0, 0) = {q_t00:.6g} while the data "
            f"selects root_choice = {root_choice}",
            stacklevel=2,
        )
    return EikonalSolution(p, q, p_t, q_t)


def build_A(d, eikonal):
    """The family ``A_k`` for k <= N - 2 with the eikonal derivatives inserted."""
    return _build_A(_Jets(d), eikonal)


def _build_A(jets, eikonal):
    E = jets.E(p_t=eikonal.p_t, q_t=eikonal.q_t)
    return [E[k] - fg for k, fg in enumerate(jets.FG[: jets.n - 1])]


def build_C(d, A, mode="reference"):
    """The quotient family ``C_k = sum_j (p/3)^j A_{k+2+2j}`` for k <= N - 4.

    In ``"corrected"`` mode the family is divided by 3.
    """
    _check_mode(mode)
    return _build_C(d.p, A, len(d.b), 1 if mode == "reference" else Fraction(1, 3))


def _build_C(p, A, n, scale=1):
    count = n - 3
    if count <= 0:
        return []
    p3 = p / 3
    C = [None] * count
    for k in range(count - 1, -1, -1):
        C[k] = A[k + 2] if k + 2 >= count else A[k + 2] + p3 * C[k + 2]
    if scale != 1:
        C = [c * scale for c in C]
    return C


def _general_rhs(jets, k, C):
    """Right-hand side of the transport equation of b_k times ``2 q_t``."""
    get = jets.get
    total = jets.get(jets.FH, k) - C[k] - jets._term(1, jets.q_tt, jets.b[k])
    if k >= 1:
        inv = _inverse(k)
        total = (
            total
            - jets._term(2 - 2 * inv, jets.p_t, jets.b_t[k - 1])
            - jets._term(1 - inv, jets.p_tt, jets.b[k - 1])
            - get(jets.b_tt, k - 3) * (3 * inv)
            + jets._term(inv, jets.p, jets.b_tt[k - 1])
        )
    return total


def _b0_rhs(jets, C):
    b0, q_x = jets.b[0], jets.q_x
    return (
        -b0 * jets.q_tt
        - C[0]
        + b0 * q_x * (b0 * jets.q_xx + 2 * q_x * jets.b_x[0])
    )


def _b1_rhs(jets, C):
    b0, b1, p, q_x, q_xx = jets.b[0], jets.b[1], jets.p, jets.q_x, jets.q_xx
    return (
        -b1 * jets.q_tt
        + p * jets.b_tt[0]
        - C[1]
        + b0 * q_x * (b1 * q_xx + 2 * q_x * jets.b_x[1] - p * jets.b_xx[0])
        + (b1 * q_x - p * jets.b_x[0]) * (b0 * q_xx + 2 * q_x * jets.b_x[0])
    )


def b_update(d, C, mode="reference"):
    """Integrate the transport equations of ``b_0, ..., b_{N-4}`` in t.

    The hatted p and q do not enter these equations. The k = 0 and k = 1 right-hand
    sides use their expanded forms.

    Parameters
    ----------
    d : SolutionData
        The current solution data.
    C : list of TruncatedSeries2
        The quotient family from ``build_C``.
    mode : {"reference", "corrected"}, default="reference"
        Convention of the x-derivative bracket.

    Returns
    -------
    b : list of TruncatedSeries2
        The N - 3 new coefficients, with ``b_k(0, x)`` taken from ``d``.

    Raises
    ------
    DegenerateMatrixError
        If ``q_t(0, 0)`` vanishes.
    """
    return _b_update(_Jets(d, mode), C)


def _b_update(jets, C):
    try:
        inv_2qt = reciprocal(jets.q_t * 2)
    except ZeroDivisionError as e:
        raise DegenerateMatrixError(
            "q_t vanishes at the origin, the transport equations of b_k cannot be "
            "solved for the t-derivative"
        ) from e

    out = []
    for k in range(jets.n - 3):
        if k == 0:
            rhs = _b0_rhs(jets, C)
        elif k == 1:
            rhs = _b1_rhs(jets, C)
        else:
            rhs = _general_rhs(jets, k, C)
        out.append(integrate_t(rhs * inv_2qt, jets.b[k].restrict_t0()))
    return out


def map_F(d, mode="reference"):
    """One application of the fixed point map.

    Parameters
    ----------
    d : SolutionData
        Solution data with N >= 5 b-coefficients.
    mode : {"reference", "corrected"}, default="reference"
        Convention of the b transport equations.

    Returns
    -------
    new : SolutionData
        The image, with N - 3 b-coefficients and the same initial values.
    """
    if len(d.b) < 5:
        raise ValueError(
            f"map_F needs at least 5 b-coefficients, got {len(d.b)}"
        )
    jets = _Jets(d, mode)
    eikonal = _eikonal_step(jets, d.root_choice)
    A = _build_A(jets, eikonal)
    C = _build_C(jets.p, A, jets.n, jets.quotient_scale)
    b = _b_update(jets, C)
    return SolutionData(eikonal.p, eikonal.q, b, d.root_choice)


def compare_states(a, b, x0=0.1j, segment=None):
    """Segment norms of the differences of the components shared by two states.

    Returns
    -------
    diffs : dict of str to float
        ``sup |a_c - b_c|`` over the segment at x0 for p, q and the common b_k.
    """
    segment = Segment() if segment is None else segment
    other = dict(b.components())
    return {
        name: sup_norm(series - other[name], x0, segment)
        for name, series in a.components()
        if name in other
    }


def _time_ms():
    return int(round(time.time() * 1000))


def iterate(d0, cfg, callback=None, verbose=False, memory_interval=None):
    """Apply the map ``cfg.iterations`` times.

    Parameters
    ----------
    d0 : SolutionData
        Initial solution data, at the order and precision of ``cfg``.
    cfg : FixedPointConfig
        Run parameters.
    callback : callable or None, default=None
        Called as ``callback(i, data, diffs)`` after iteration i.
    verbose : bool, default=False
        Print one line per iteration.
    memory_interval : float or None, default=None
        Sampling interval in seconds of the peak memory recorder. Memory is not
        recorded if None.

    Returns
    -------
    data : SolutionData
        The last iterate.
    report : IterationReport
        Component changes, runtimes, memory and residuals.

    Raises
    ------
    NumericAbort
        If an iteration fails. The exception carries the iteration index.
    """
    if d0.order != cfg.order or d0.precision != cfg.precision:
        raise ValueError(
            f"initial data has order {d0.order} and precision {d0.precision}, the "
            f"configuration asks for {cfg.order} and {cfg.precision}"
        )
    if len(d0.b) < 3 * cfg.iterations + 5:
        raise ValueError(
            f"{len(d0.b)} b-coefficients are too few for {cfg.iterations} "
            f"iterations, at least {3 * cfg.iterations + 5} are needed"
        )

    report = IterationReport()
    if cfg.track_residual:
        report.residual_norms.append(
            residual(d0, cfg.x0, cfg.segment, cfg.mode).norm
        )

    d = d0
    for i in range(1, cfg.iterations + 1):
        try:
            if memory_interval is not None:
                memory, runtime, new = record_max_memory(
                    map_F,
                    args=[d],
                    kwargs={"mode": cfg.mode},
                    interval=memory_interval,
                    return_func_time=True,
                    return_result=True,
                )
                report.memory_usage = max(report.memory_usage, memory)
            else:
                start = _time_ms()
                new = map_F(d, mode=cfg.mode)
                runtime = _time_ms() - start
        except NumericAbort as e:
            if e.iteration is not None:
                raise
            raise type(e)(str(e), iteration=i) from e
        except ZeroDivisionError as e:
            raise NumericAbort(str(e), iteration=i) from e

        diffs = compare_states(new, d, cfg.x0, cfg.segment)
        report.diffs.append(diffs)
        report.runtimes_ms.append(runtime)
        if cfg.track_residual:
            report.residual_norms.append(
                residual(new, cfg.x0, cfg.segment, cfg.mode).norm
            )

        if verbose:
            print(  # noqa: T201
                f"Iteration {i}: {runtime} ms, largest change "
                f"{max(diffs.values()):.3e}"
            )
        if callback is not None:
            callback(i, new, diffs)
        d = new

    return d, report


def reconstruct_u(d):
    """The solution ``u = primitive_q(sum_k b_k z^k)`` as a ring element."""
    return primitive_q(d.as_zelement())


def residual(d, x0=0.1j, segment=None, mode="reference"):
    """Residual of ``u_tt - u_x u_xx`` for the solution data.

    The residual is split as ``R + S/(3 z^2 - p)`` with ring parts R and S. The norm
    combines R with the quotient of S by ``3 z^2 - p`` over the equations the map
    enforces (``k <= N - 4``), reduces it to z-degree 2, and takes the largest
    segment norm of its three coefficients and of the two remainder coefficients of
    the division. In ``"reference"`` mode the bracket and quotient follow the
    reference convention, so the norm measures the defect of the iterated equations.

    Parameters
    ----------
    d : SolutionData
        The solution data.
    x0 : complex, default=0.1j
        Evaluation point in x.
    segment : Segment or None, default=None
        Segment in t, ``Segment()`` if None.
    mode : {"reference", "corrected"}, default="reference"
        Convention.

    Returns
    -------
    diagnostic : ResidualDiagnostic
        The parts R and S (N coefficients each) and the norm.
    """
    segment = Segment() if segment is None else segment
    jets = _Jets(d, mode)
    n = jets.n
    get = jets.get

    regular = []
    for k in range(n):
        value = jets._term(1, jets.q_tt, jets.b[k]) + jets._term(
            2, jets.q_t, jets.b_t[k]
        )
        if k >= 1:
            inv = _inverse(k)
            value = (
                value
                + jets._term(2 - 2 * inv, jets.p_t, jets.b_t[k - 1])
                + jets._term(1 - inv, jets.p_tt, jets.b[k - 1])
                - jets._term(inv, jets.p, jets.b_tt[k - 1])
                + get(jets.b_tt, k - 3) * (3 * inv)
            )
        regular.append(value - get(jets.FH, k))
    singular = [e - fg for e, fg in zip(jets.E(), jets.FG)]

    remainder = [_p3_sum(jets.p, singular[0::2]), _p3_sum(jets.p, singular[1::2])]
    quotient = _build_C(jets.p, singular, n, jets.quotient_scale)
    combined = ZElement(
        [regular[k] + quotient[k] for k in range(len(quotient))], d.p, d.q
    )

    norms = [sup_norm(c, x0, segment) for c in reduce(combined).coeffs]
    norms += [sup_norm(r, x0, segment) for r in remainder]
    return ResidualDiagnostic(
        ZElement(regular, d.p, d.q), ZElement(singular, d.p, d.q), max(norms)
    )
