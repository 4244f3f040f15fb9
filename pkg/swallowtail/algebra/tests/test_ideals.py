"""Tests for exact polynomial ideals, Poisson brackets and radical membership."""

import pytest
from sklearn.utils import check_random_state
from sympy.polys.domains import QQ

from swallowtail.algebra.ideals import (
    PolyIdeal,
    bracket_membership_report,
    conormal_identity_check,
    cotangent_ring,
    groebner,
    is_groebner_basis,
    defining_polynomials,
    member,
    poisson,
    radical_member,
)


def _random_polynomial(rng, degree=2, terms=4):
    R, *gens = cotangent_ring()
    f = R.zero
    for _ in range(terms):
        monomial = R.one
        for g, e in zip(gens, rng.randint(0, degree + 1, size=4)):
            monomial *= g**int(e)
        f += QQ(int(rng.randint(-5, 6)), int(rng.randint(1, 4))) * monomial
    return f


def test_poisson_canonical_pairs():
    """Test brackets of coordinate functions."""
    R, p, q, xi1, xi2 = cotangent_ring()

    assert poisson(xi1, p) == 1
    assert poisson(xi2, q) == 1
    assert poisson(p, xi1) == -1
    assert poisson(xi1, q) == 0
    assert poisson(p, q) == 0


def test_poisson_antisymmetry_and_leibniz():
    """Test antisymmetry and the Leibniz rule on random triples."""
    rng = check_random_state(0)
    for _ in range(10):
        P, Q, S = (_random_polynomial(rng) for _ in range(3))
        assert poisson(P, P) == 0
        assert poisson(P, Q) == -poisson(Q, P)
        assert poisson(P, Q * S) == poisson(P, Q) * S + Q * poisson(P, S)


def test_groebner_small_ideals():
    """Test Groebner bases of small ideals."""
    R, p, q, xi1, xi2 = cotangent_ring()

    assert groebner([p]) == [p]
    assert groebner([R.one]) == [R.one]
    assert groebner([3 * p + 3, p]) == [R.one]
    assert groebner([]) == []

    basis = groebner([p**2 - q, p * q - 1])
    assert is_groebner_basis(basis)
    assert all(g.LC == 1 for g in basis)


def test_groebner_of_defining_polynomials():
    """Test the basis of <P1, P2, P3> is a deterministic reduced Groebner basis."""
    P1, P2, P3 = defining_polynomials()

    basis = groebner([P1, P2, P3])

    assert is_groebner_basis(basis)
    assert groebner([P3, P1, P2]) == basis
    assert groebner([P2, P3, P1]) == basis
    for g in basis:
        assert g.rem([h for h in basis if h != g]) == g


def test_member():
    """Test ideal membership by normal forms."""
    R, p, q, xi1, xi2 = cotangent_ring()
    ideal = PolyIdeal([p * q, xi1])

    assert member(p * q * xi2 + xi1**3, ideal)
    assert xi1 * p in ideal
    assert not member(p + q, ideal)
    assert ideal.order == "grevlex"

    with pytest.raises(ValueError, match="at least one generator"):
        PolyIdeal([])


def test_radical_member():
    """Test radical membership through powers and the extra variable."""
    R, p, q, xi1, xi2 = cotangent_ring()

    assert not radical_member(1 + p, PolyIdeal([p]))
    assert radical_member(p, PolyIdeal([p**2]))
    assert radical_member(p, PolyIdeal([p**3]))
    assert radical_member(p * q, PolyIdeal([p**3, q**4]))
    assert not radical_member(q, PolyIdeal([p**3]))


def test_conormal_identity_check():
    """Test that the cusp conormal parametrisation annihilates P1, P2, P3."""
    assert conormal_identity_check()


def test_defining_polynomials():
    """Test the defining polynomials have the expected forms."""
    R, p, q, xi1, xi2 = cotangent_ring()
    P1, P2, P3 = defining_polynomials()

    assert 3 * P1 == p * xi2**2 - 3 * xi1**2
    assert 2 * P2 == q * xi2**3 + 2 * xi1**3
    assert P3 == (4 * p**3 - 27 * q**2) * xi1**2


def test_bracket_membership_report():
    """Test the five membership outcomes for the brackets of P1, P2, P3."""
    report = bracket_membership_report()

    assert list(report) == ["P12∈I", "P23∈I", "P13∈I", "P13²∈I", "brackets∈√I"]
    assert report["P12∈I"] is True
    assert report["P23∈I"] is True
    assert report["P13∈I"] is False
    assert report["P13²∈I"] is True
    assert report["brackets∈√I"] is True
