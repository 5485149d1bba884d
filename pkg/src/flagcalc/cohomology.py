"""Equivariant cohomology of the flag variety in the Schubert basis.

Classes are finite maps WeylElement -> SymPolynomial, i.e. combinations
sum f_w [X_w] over the equivariant cohomology of a point.  The three
operators are the BGG operator (ascent/descent basis rule), multiplication
by the first Chern class of a line bundle (Chevalley rule), and the simple
reflection automorphism assembled from the two.

The Chevalley sum runs over positive roots beta with l(w s_beta) = l(w) - 1;
that convention is the one under which the reflection operators below are
involutions and satisfy the braid relations, which the test suite checks.
"""

from __future__ import annotations

from fractions import Fraction

from .charring import SymPolynomial
from .rootsys import RootSystem, Weight
from .weyl import WeylElement, descent_reflections


class CohClass:
    """A finite S-combination of Schubert classes [X_w]."""

    __slots__ = ("rs", "terms")

    def __init__(self, rs: RootSystem, terms: dict[WeylElement, SymPolynomial] | None = None):
        self.rs = rs
        self.terms = {} if terms is None else {w: f for w, f in terms.items() if f}

    @staticmethod
    def basis(rs: RootSystem, w: WeylElement) -> "CohClass":
        return CohClass(rs, {w: SymPolynomial.one(rs.rank)})

    @staticmethod
    def zero(rs: RootSystem) -> "CohClass":
        return CohClass(rs)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CohClass) and self.rs == other.rs
                and self.terms == other.terms)

    def __add__(self, other: "CohClass") -> "CohClass":
        out = dict(self.terms)
        for w, f in other.terms.items():
            s = out.get(w, SymPolynomial.zero()) + f
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return CohClass(self.rs, out)

    def __neg__(self) -> "CohClass":
        return CohClass(self.rs, {w: -f for w, f in self.terms.items()})

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + (-other)

    def scale(self, f: SymPolynomial) -> "CohClass":
        if not f:
            return CohClass(self.rs)
        return CohClass(self.rs, {w: g * f for w, g in self.terms.items()})

    def coeff(self, w: WeylElement) -> SymPolynomial:
        return self.terms.get(w, SymPolynomial.zero())

    def __repr__(self) -> str:
        return f"CohClass({self.terms!r})"


def bgg(i: int, c: CohClass) -> CohClass:
    """BGG operator: [X_w] -> [X_{w s_i}] on ascents, 0 on descents."""
    out = CohClass(c.rs)
    for w, f in c.terms.items():
        if w.is_right_ascent(i):
            out += CohClass(c.rs, {w.times_simple(i): f})
    return out


def chevalley_coh(rs: RootSystem, alpha: Weight, c: CohClass) -> CohClass:
    """Multiplication by c_1 of the line bundle of the weight alpha.

    Per basis class: w(alpha) [X_w] minus sum of <alpha, beta^vee> [X_{w s_beta}]
    over positive roots beta dropping the length by one.
    """
    out = CohClass(rs)
    for w, f in c.terms.items():
        diag = SymPolynomial.linear(w.apply(alpha)) * f
        out += CohClass(rs, {w: diag})
        for beta, v in descent_reflections(w):
            coeff = rs.pairing(alpha, beta)
            if coeff:
                out += CohClass(rs, {v: f * Fraction(-coeff)})
    return out


def si_coh(i: int, c: CohClass) -> CohClass:
    """The reflection automorphism id + c_1(L(alpha_i)) followed by BGG."""
    rs = c.rs
    cache = rs._cache.setdefault(("si_coh", i), {})
    out = CohClass(rs)
    for w, f in c.terms.items():
        img = cache.get(w)
        if img is None:
            basis = CohClass.basis(rs, w)
            img = basis + chevalley_coh(rs, rs.simple_root(i).weight, bgg(i, basis))
            cache[w] = img
        out += img.scale(f)
    return out
