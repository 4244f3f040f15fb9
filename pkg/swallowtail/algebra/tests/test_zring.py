"""Tests for the cubic ring O[[z]] and the Cauchy datum map."""

from fractions import Fraction

import numpy as np
import pytest
from sklearn.utils import check_random_state

from swallowtail.algebra.series import TruncatedSeries2, random_series
from swallowtail.algebra.zring import (
    CauchyDatum,
    SolutionData,
    ZElement,
    cubic_roots,
    datum_to_initial,
    diff_p,
    diff_p_of_primitive,
    diff_q,
    evaluate_element,
    initial_datum_terms,
    primitive_q,
    reduce,
    zmul,
)
from swallowtail.utils.exceptions import DivisibilityError


def _relation(order=6, precision=15, coordinates="identity"):
    t = TruncatedSeries2.variable("t", order, precision)
    x = TruncatedSeries2.variable("x", order, precision)
    if coordinates == "identity":
        return t, x
    return 2 * t + x, x - t


def _element(coeffs, p, q):
    coeffs = [
        c
        if isinstance(c, TruncatedSeries2)
        else TruncatedSeries2.constant(c, p.order, p.precision)
        for c in coeffs
    ]
    return ZElement(coeffs, p, q)


def _assert_element_close(u, v, tol=1e-10):
    assert (u - v).max_abs() < tol


def test_zelement_indexing():
    """Test the zero convention for out of range indices."""
    p, q = _relation()
    u = _element([1, 2], p, q)

    assert u[-3].is_zero()
    assert u[-1].is_zero()
    assert u[5].is_zero()
    assert u[1] == TruncatedSeries2.constant(2, 6, 15)
    assert len(u.shift(2)) == 4
    assert u.shift(2)[3] == u[1]


def test_relation_mismatch():
    """Test that elements over different relations cannot be combined."""
    p, q = _relation()
    u = _element([1], p, q)
    v = _element([1], q, p)

    with pytest.raises(ValueError, match="relation mismatch"):
        u + v
    with pytest.raises(ValueError, match="relation mismatch"):
        zmul(u, v)


def test_reduce():
    """Test Weierstrass reduction examples."""
    p, q = _relation()
    zero = TruncatedSeries2.zeros(6, 15)

    r = reduce(_element([0, 0, 0, 1], p, q))
    assert len(r) == 3
    assert r[0] == q and r[1] == p and r[2].is_zero()

    r = reduce(_element([0, 0, 0, 0, 1], p, q))
    assert r[0].is_zero() and r[1] == q and r[2] == p

    three_quarters = TruncatedSeries2.constant(0.75, 6, 15)
    r = reduce(ZElement([zero, zero, -p / 2, zero, three_quarters], p, q))
    assert r[0].is_zero()
    assert r[1].allclose(q * 0.75)
    assert r[2].allclose(p / 4)

    assert len(reduce(_element([1], p, q))) == 3


def test_zmul():
    """Test ring multiplication examples."""
    p, q = _relation()
    z = _element([0, 1], p, q)
    z2 = _element([0, 0, 1], p, q)
    one = _element([1], p, q)

    _assert_element_close(zmul(z, z), z2)
    _assert_element_close(zmul(z, z2), ZElement([q, p], p, q))

    u = ZElement([random_series(6, 15, random_state=i) for i in range(5)], p, q)
    _assert_element_close(zmul(one, u), reduce(u))
    _assert_element_close(z * z, z2)


def test_primitive_q_of_z():
    """Test the primitive of z and its reduced form (3qz + pz^2)/4."""
    p, q = _relation()
    w = primitive_q(_element([0, 1], p, q))

    assert len(w) == 5
    assert w[0].is_zero()
    assert w[2].allclose(-p / 2)
    assert w[4].allclose(TruncatedSeries2.constant(0.75, 6, 15))

    r = reduce(w)
    assert r[0].is_zero()
    assert r[1].allclose(q * 0.75)
    assert r[2].allclose(p * 0.25)

    assert primitive_q(_element([0], p, q)).is_zero()


@pytest.mark.parametrize("coordinates", ["identity", "linear"])
def test_diff_q_of_known_primitive(coordinates):
    """Test that the q-derivative of (3qz + pz^2)/4 is z."""
    p, q = _relation(coordinates=coordinates)
    zero = TruncatedSeries2.zeros(6, 15)
    u = ZElement([zero, q * 0.75, p * 0.25], p, q)

    d = diff_q(u)

    _assert_element_close(reduce(d), reduce(_element([0, 1], p, q)))


def test_diff_q_of_p_only_constant():
    """Test that a coefficient depending only on p has zero q-derivative."""
    p, q = _relation(coordinates="linear")
    assert diff_q(ZElement([p * p + 3 * p], p, q)).max_abs() < 1e-12


@pytest.mark.parametrize("coordinates", ["identity", "linear"])
def test_primitive_round_trip(coordinates):
    """Test diff_q(primitive_q(u)) == u on 100 random elements."""
    order = 6
    p, q = _relation(order, coordinates=coordinates)
    rng = check_random_state(0)

    for _ in range(100):
        length = rng.randint(1, 7)
        coeffs = []
        for _ in range(length):
            values = rng.uniform(-1, 1, size=(order, 2))
            total = TruncatedSeries2.zeros(order, 15)
            for i, (re, im) in enumerate(values):
                total = total + complex(re, im) * p**i
            coeffs.append(total)
        u = ZElement(coeffs, p, q)

        back = diff_q(primitive_q(u))

        assert (back - u).max_abs() < 1e-8


@pytest.mark.parametrize("coordinates", ["identity", "linear"])
def test_diff_p_kernel_witness(coordinates):
    """Test that the p-derivative of z^3 - pz vanishes, reduced or not."""
    p, q = _relation(coordinates=coordinates)
    zero = TruncatedSeries2.zeros(6, 15)
    one = TruncatedSeries2.constant(1, 6, 15)
    u = ZElement([zero, -p, zero, one], p, q)

    assert diff_p(u).max_abs() < 1e-12
    assert diff_p(reduce(u)).max_abs() < 1e-12


def test_diff_q_not_divisible():
    """Test that an element outside the primitive image is rejected."""
    p, q = _relation()
    with pytest.raises(DivisibilityError, match="not divisible"):
        diff_q(ZElement([TruncatedSeries2.zeros(6, 15), q], p, q))


def test_degenerate_coordinates():
    """Test that (p, q) must be coordinates at the origin."""
    x = TruncatedSeries2.variable("x", 4, 15)
    with pytest.raises(ValueError, match="not local coordinates"):
        diff_q(ZElement([x, x], x, x))


def _nearest(roots, z):
    return min(roots, key=lambda r: abs(complex(r) - z))


@pytest.mark.parametrize("seed", [0, 1])
def test_diff_p_of_primitive_finite_difference(seed):
    """Test the p-derivative of a primitive against central differences."""
    order = 6
    p, q = _relation(order)
    if seed == 0:
        a = _element([0, 1], p, q)
    else:
        a = ZElement(
            [
                random_series(
                    order, 15, random_state=seed + i, variables="t", degree=3
                )
                for i in range(4)
            ],
            p,
            q,
        )
    w = primitive_q(a)
    derivative = diff_p_of_primitive(a)

    p0, q0, h = 0.1, 0.2, 1e-5
    for z0 in cubic_roots(p0, q0):
        z0 = complex(z0)
        z_plus = complex(_nearest(cubic_roots(p0 + h, q0), z0))
        z_minus = complex(_nearest(cubic_roots(p0 - h, q0), z0))
        fd = (
            complex(evaluate_element(w, p0 + h, q0, z_plus))
            - complex(evaluate_element(w, p0 - h, q0, z_minus))
        ) / (2 * h)

        exact = complex(evaluate_element(derivative, p0, q0, z0))
        assert abs(exact - fd) < 1e-6

        via_chain_rule = complex(evaluate_element(diff_p(w), p0, q0, z0))
        assert abs(via_chain_rule - exact) < 1e-8


def test_diff_p_of_primitive_zero():
    """Test that zero input gives zero."""
    p, q = _relation()
    assert diff_p_of_primitive(_element([0, 0], p, q)).is_zero()


def test_reduction_soundness_high_precision():
    """Test reduced and unreduced values agree at all roots of random cubics."""
    order, precision = 8, 30
    p, q = _relation(order, precision)
    u = ZElement(
        [
            random_series(order, precision, random_state=i, degree=2)
            for i in range(6)
        ],
        p,
        q,
    )
    r = reduce(u)

    rng = check_random_state(7)
    checked = 0
    while checked < 50:
        p0 = complex(*rng.uniform(-1, 1, size=2))
        q0 = complex(*rng.uniform(-1, 1, size=2))
        if abs(4 * p0**3 - 27 * q0**2) < 1e-3:
            continue
        for z0 in cubic_roots(p0, q0, precision=precision):
            diff = evaluate_element(r, p0, q0, z0) - evaluate_element(u, p0, q0, z0)
            assert abs(diff) < 1e-20
        checked += 1


def test_cubic_roots():
    """Test that roots are sorted and solve the cubic."""
    for precision in (15, 30):
        roots = cubic_roots(7, -6, precision=precision)
        assert len(roots) == 3
        keys = [(float(r.real), float(r.imag)) for r in roots]
        assert keys == sorted(keys)
        for r in roots:
            assert abs(r**3 - 7 * r + 6) < 1e-6
    assert np.allclose(sorted(complex(r).real for r in cubic_roots(1, 0)), [-1, 0, 1])


def test_evaluate_element():
    """Test evaluation of a ring element."""
    p, q = _relation()
    assert complex(evaluate_element(_element([1, 2], p, q), 0, 0, 3)) == 7


@pytest.mark.parametrize(
    "c,expected",
    [
        ((1, Fraction(3, 4)), [1, 1]),
        ((1, Fraction(3, 4), Fraction(3, 50)), [1, 1, 0.1]),
    ],
)
def test_datum_to_initial(c, expected):
    """Test the canonical datum placement b_{j-1} = ((j + 2)/3) c_j."""
    data = datum_to_initial(CauchyDatum(c), 5, precision=15)

    assert data.data_length == len(expected)
    for bk, value in zip(data.b, expected):
        assert bk.allclose(TruncatedSeries2.constant(value, 5, 15))
    assert data.p.is_zero()
    assert data.q == TruncatedSeries2.variable("x", 5, 15)
    data.check_initial_conditions(data.initial_slices())


def test_datum_round_trip():
    """Test that the primitive of the initial data reproduces the datum."""
    datum = CauchyDatum((1, Fraction(3, 4), Fraction(3, 50)))
    data = datum_to_initial(datum, 5, precision=15, length=8)

    terms = initial_datum_terms(primitive_q(data.as_zelement()))

    assert data.data_length == 8
    assert set(terms) == set(datum.terms())
    for exponent, value in datum.terms().items():
        assert terms[exponent] == pytest.approx(float(value))


def test_datum_overrides():
    """Test x-weighted overrides reproduce the datum with x^{8/3} and x^3 terms."""
    x = TruncatedSeries2.variable("x", 5, 15)
    datum = CauchyDatum((1, Fraction(3, 4)), overrides={2: x / 10, 3: x / 10})
    data = datum_to_initial(datum, 5, precision=15)

    terms = initial_datum_terms(primitive_q(data.as_zelement()))

    assert data.data_length == 4
    assert terms == {
        Fraction(1): pytest.approx(1),
        Fraction(4, 3): pytest.approx(0.75),
        Fraction(8, 3): pytest.approx(0.06),
        Fraction(3): pytest.approx(0.05),
    }


def test_datum_validation():
    """Test invalid Cauchy data are rejected."""
    t = TruncatedSeries2.variable("t", 4, 15)
    with pytest.raises(ValueError, match="c_1"):
        CauchyDatum((0, 1))
    with pytest.raises(ValueError, match="c_2"):
        CauchyDatum((1, 0))
    with pytest.raises(ValueError, match="at least"):
        CauchyDatum((1,))
    with pytest.raises(ValueError, match="must not depend on t"):
        CauchyDatum((1, 1), overrides={2: t})


def test_solution_data():
    """Test solution data helpers and initial condition checks."""
    data = datum_to_initial(CauchyDatum((1, Fraction(3, 4))), 4, precision=15)

    assert [name for name, _ in data.components()] == ["p", "q", "b0", "b1"]
    assert data.order == 4 and data.precision == 15

    t = TruncatedSeries2.variable("t", 4, 15)
    moved = SolutionData(data.p + 1, data.q + t, data.b)
    with pytest.raises(ValueError, match="p\\(0, x\\)"):
        moved.check_initial_conditions()
    with pytest.raises(ValueError, match="root_choice"):
        SolutionData(data.p, data.q, data.b, root_choice=0)
    with pytest.raises(ValueError, match="b1"):
        data.check_initial_conditions([data.b[0], data.b[1] * 2])
