"""Exact polynomial ideals on the cotangent space of the (p, q) plane.

Polynomials are sympy ``PolyElement`` objects over ``QQ`` in the variables
(p, q, xi1, xi2) with graded reverse lexicographic order, p > q > xi1 > xi2. All
arithmetic is exact. Groebner bases are computed with Buchberger's algorithm using
the normal selection strategy and the Gebauer-Moeller pair elimination.
"""

__all__ = [
    "COTANGENT_VARIABLES",
    "PolyIdeal",
    "cotangent_ring",
    "defining_polynomials",
    "poisson",
    "s_polynomial",
    "groebner",
    "is_groebner_basis",
    "member",
    "radical_member",
    "conormal_identity_check",
    "bracket_membership_report",
]

from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.orderings import grevlex
from sympy.polys.rings import ring

COTANGENT_VARIABLES = ("p", "q", "xi1", "xi2")


@lru_cache(maxsize=None)
def cotangent_ring():
    """Return the ring QQ[p, q, xi1, xi2] and its generators.

    Returns
    -------
    ring, p, q, xi1, xi2
        The sympy ``PolyRing`` and its four generators.
    """
    return ring(",".join(COTANGENT_VARIABLES), QQ, grevlex)


def defining_polynomials():
    """The three polynomials cutting out the conormal of the cusp.

    ``P1 = (p/3) xi2^2 - xi1^2``, ``P2 = (q/2) xi2^3 + xi1^3`` and
    ``P3 = (4 p^3 - 27 q^2) xi1^2``.
    """
    _, p, q, xi1, xi2 = cotangent_ring()
    P1 = QQ(1, 3) * p * xi2**2 - xi1**2
    P2 = QQ(1, 2) * q * xi2**3 + xi1**3
    P3 = (4 * p**3 - 27 * q**2) * xi1**2
    return P1, P2, P3


def poisson(P, Q):
    """Poisson bracket ``sum_k dP/dxi_k dQ/dx_k - dP/dx_k dQ/dxi_k``.

    The base coordinates are (x_1, x_2) = (p, q).

    Examples
    --------
    >>> _, p, q, xi1, xi2 = cotangent_ring()
    >>> poisson(xi1, p)
    1
    """
    if P.ring != Q.ring:
        raise ValueError("poisson requires polynomials in the same ring")
    R = P.ring
    p, q, xi1, xi2 = R.gens[:4]
    bracket = R.zero
    for x, xi in ((p, xi1), (q, xi2)):
        bracket += P.diff(xi) * Q.diff(x) - P.diff(x) * Q.diff(xi)
    return bracket


def s_polynomial(f, g):
    """S-polynomial of two monic polynomials."""
    R = f.ring
    lcm = R.monomial_lcm(f.LM, g.LM)
    return f.mul_monom(R.monomial_div(lcm, f.LM)) - g.mul_monom(
        R.monomial_div(lcm, g.LM)
    )


def _select(G, pairs):
    R = G[0].ring

    def key(pair):
        lcm = R.monomial_lcm(G[pair[0]].LM, G[pair[1]].LM)
        return R.order(lcm), pair

    return min(pairs, key=key)


def _update(G, pairs, f):
    R = f.ring
    lcm, mul, div = R.monomial_lcm, R.monomial_mul, R.monomial_div
    lmf = f.LM
    lmG = [g.LM for g in G]

    # drop old pairs whose lcm is divisible by LM(f) unless it would be a new lcm
    kept = set()
    for i, j in pairs:
        lij = lcm(lmG[i], lmG[j])
        if (
            not div(lij, lmf)
            or lij == lcm(lmG[i], lmf)
            or lij == lcm(lmG[j], lmf)
        ):
            kept.add((i, j))

    by_lcm = {}
    for i in range(len(G)):
        by_lcm.setdefault(lcm(lmG[i], lmf), []).append(i)

    minimal = []
    for L in sorted(by_lcm, key=R.order):
        if all(not div(L, other) for other in minimal):
            minimal.append(L)

    new_pairs = set()
    for L in minimal:
        # coprime leading monomials give S-polynomials reducing to zero
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in by_lcm[L]):
            new_pairs.add((min(by_lcm[L]), len(G)))

    return G + [f], kept | new_pairs


def _minimalize(G):
    R = G[0].ring
    minimal = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(not R.monomial_div(f.LM, g.LM) for g in minimal):
            minimal.append(f)
    return minimal


def _interreduce(G):
    if len(G) == 1:
        return [G[0].monic()]
    return [G[i].rem(G[:i] + G[i + 1 :]).monic() for i in range(len(G))]


def groebner(generators):
    """Reduced Groebner basis of the ideal spanned by ``generators``.

    Parameters
    ----------
    generators : sequence of PolyElement
        Polynomials sharing one ring. Zero polynomials are ignored.

    Returns
    -------
    basis : list of PolyElement
        The monic reduced basis sorted by increasing leading monomial. Empty for
        the zero ideal.

    Examples
    --------
    >>> R, p, q, xi1, xi2 = cotangent_ring()
    >>> groebner([p, p * q])
    [p]
    >>> groebner([2 * p + 1, p])
    [1]
    """
    generators = [f for f in generators if f]
    if not generators:
        return []
    R = generators[0].ring
    if any(f.ring != R for f in generators):
        raise ValueError("generators must share one polynomial ring")

    G, pairs = [], set()
    for f in generators:
        G, pairs = _update(G, pairs, f.monic())

    while pairs:
        i, j = _select(G, pairs)
        pairs.remove((i, j))
        r = s_polynomial(G[i], G[j]).rem(G)
        if r:
            G, pairs = _update(G, pairs, r.monic())

    basis = _interreduce(_minimalize(G))
    return sorted(basis, key=lambda g: R.order(g.LM))


def is_groebner_basis(G):
    """Buchberger's criterion: every S-polynomial of ``G`` reduces to zero."""
    G = [g.monic() for g in G if g]
    return all(
        not s_polynomial(G[i], G[j]).rem(G)
        for i in range(len(G))
        for j in range(i + 1, len(G))
    )


class PolyIdeal:
    """Ideal given by generators, with a cached reduced Groebner basis.

    Parameters
    ----------
    generators : sequence of PolyElement
        Nonempty list of generators in one sympy polynomial ring.
    """

    def __init__(self, generators):
        generators = tuple(generators)
        if len(generators) == 0:
            raise ValueError("PolyIdeal requires at least one generator")
        self.generators = generators
        self.ring = generators[0].ring
        self._basis = None

    @property
    def order(self):
        """Name of the monomial order of the basis."""
        return str(self.ring.order)

    @property
    def basis(self):
        """The reduced Groebner basis, computed on first access."""
        if self._basis is None:
            self._basis = groebner(self.generators)
        return self._basis

    def normal_form(self, f):
        """Remainder of ``f`` on division by the Groebner basis."""
        if not self.basis:
            return f
        return f.rem(self.basis)

    def __contains__(self, f):
        return member(f, self)

    def __repr__(self):
        return f"PolyIdeal({list(self.generators)})"


def member(f, ideal):
    """Whether ``f`` lies in ``ideal``, by a zero normal form.

    Examples
    --------
    >>> _, p, q, xi1, xi2 = cotangent_ring()
    >>> member(p * q + p, PolyIdeal([p]))
    True
    >>> member(q, PolyIdeal([p]))
    False
    """
    if f.ring != ideal.ring:
        raise ValueError("polynomial and ideal must share one ring")
    return not ideal.normal_form(f)


def _rabinowitsch_ring(R):
    names = [str(g) for g in R.gens]
    extra = "y"
    while extra in names:
        extra = extra + "_"
    return ring(",".join(names + [extra]), R.domain, R.order)


def radical_member(f, ideal, max_power=2):
    """Whether ``f`` lies in the radical of ``ideal``.

    The powers ``f^k`` for ``k <= max_power`` are tried first. When none of them is
    a member, ``f`` is in the radical exactly when the ideal extended by
    ``1 - y f`` in one more variable contains 1.

    Parameters
    ----------
    f : PolyElement
        The polynomial to test.
    ideal : PolyIdeal
        The ideal.
    max_power : int, default=2
        Largest power tried as a direct membership witness.

    Returns
    -------
    bool
        Membership in the radical.
    """
    power = f
    for _ in range(max_power):
        if member(power, ideal):
            return True
        power = power * f

    S, *gens = _rabinowitsch_ring(ideal.ring)
    y = gens[-1]
    extended = [g.set_ring(S) for g in ideal.generators] + [1 - y * f.set_ring(S)]
    basis = groebner(extended)
    return len(basis) == 1 and basis[0] == S.one


def conormal_identity_check():
    """Substitute ``(p, q, xi1, xi2) = (3z^2, -2z^3, z lam, lam)`` into P1, P2, P3.

    Returns
    -------
    bool
        True when all three substituted polynomials vanish identically in (z, lam).
    """
    S, z, lam = ring("z,lam", QQ, grevlex)
    images = (3 * z**2, -2 * z**3, z * lam, lam)
    for P in defining_polynomials():
        total = S.zero
        for monom, coeff in P.terms():
            term = S(coeff)
            for image, exponent in zip(images, monom):
                term *= image**exponent
            total += term
        if total:
            return False
    return True


def bracket_membership_report():
    """Membership of the pairwise Poisson brackets of P1, P2, P3 in ``<P1, P2, P3>``.

    Returns
    -------
    report : dict of str to bool
        Ordered entries ``P12∈I``, ``P23∈I``, ``P13∈I``, ``P13²∈I`` and
        ``brackets∈√I``. The pair ``P13∈I`` false with ``P13²∈I`` true shows the
        ideal is not radical.
    """
    P1, P2, P3 = defining_polynomials()
    ideal = PolyIdeal([P1, P2, P3])
    P12, P23, P13 = poisson(P1, P2), poisson(P2, P3), poisson(P1, P3)
    return {
        "P12∈I": member(P12, ideal),
        "P23∈I": member(P23, ideal),
        "P13∈I": member(P13, ideal),
        "P13²∈I": member(P13**2, ideal),
        "brackets∈√I": all(radical_member(b, ideal) for b in (P12, P23, P13)),
    }
