"""Exact arithmetic on the weight lattice: R(T)[y] and Sym of the weight lattice.

Two sparse rings, both exact (no floating point anywhere):

- :class:`LaurentPolynomial`: finite map weight -> Z[y] coefficient, the
  weight stored in fundamental coordinates and the Z[y] coefficient as a
  dense tuple of ints from degree 0 with no trailing zeros (the zero
  polynomial is the empty tuple).  This is the coefficient ring for all
  K-theory classes; ordinary R(T) elements simply never use y.
- :class:`SymPolynomial`: finite map exponent-vector -> Fraction over the
  fundamental-weight variables, the coefficient ring on the cohomology side.

The operator toolbox lives here too: Weyl actions on both rings, the isobaric
divided difference and the divided difference (per-monomial closed forms; the
defining quotient identities are exercised by the test suite), and the
two-case root operators that drive the K-theoretic Chevalley formula.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Union

from .errors import InexactDivision, InternalError
from .rootsys import Root, RootSystem, Weight

if TYPE_CHECKING:
    from .weyl import WeylElement

YPoly = tuple[int, ...]

Y_ZERO: YPoly = ()
Y_ONE: YPoly = (1,)
Y_VAR: YPoly = (0, 1)


def yp_trim(coeffs: Iterable[int]) -> YPoly:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def yp_add(a: YPoly, b: YPoly) -> YPoly:
    if len(a) < len(b):
        a, b = b, a
    return yp_trim(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))


def yp_neg(a: YPoly) -> YPoly:
    return tuple(-x for x in a)


def yp_mul(a: YPoly, b: YPoly) -> YPoly:
    if not a or not b:
        return Y_ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return yp_trim(out)


def yp_eval(a: YPoly, v: int) -> int:
    out = 0
    for c in reversed(a):
        out = out * v + c
    return out


def yp_divexact(a: YPoly, b: YPoly) -> YPoly:
    """Quotient a/b in Z[y]; raises InexactDivision on any remainder."""
    if not b:
        raise InexactDivision("division by zero in Z[y]")
    if not a:
        return Y_ZERO
    rem = list(a)
    q = [0] * (len(a) - len(b) + 1) if len(a) >= len(b) else []
    if not q:
        raise InexactDivision("degree too small in Z[y] division")
    lead = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + len(b) - 1]
        if c % lead:
            raise InexactDivision("non-integral quotient in Z[y]")
        q[k] = c // lead
        for j, bc in enumerate(b):
            rem[k + j] -= q[k] * bc
    if any(rem):
        raise InexactDivision("nonzero remainder in Z[y]")
    return yp_trim(q)


def _wkey(lam: Weight) -> tuple:
    # group order on the weight lattice: total height first, then lex
    return (sum(lam), lam)


class LaurentPolynomial:
    """Sparse exact element of Z[y][weight lattice]."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Weight, YPoly] | None = None):
        self.terms = {} if terms is None else terms

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPolynomial":
        return LaurentPolynomial()

    @staticmethod
    def exp(lam: Weight, coeff: YPoly = Y_ONE) -> "LaurentPolynomial":
        """The monomial coeff * e^lam."""
        if not coeff:
            return LaurentPolynomial()
        return LaurentPolynomial({tuple(lam): coeff})

    @staticmethod
    def const(rank: int, c: int) -> "LaurentPolynomial":
        return LaurentPolynomial.exp((0,) * rank, (c,) if c else Y_ZERO)

    @staticmethod
    def one(rank: int) -> "LaurentPolynomial":
        return LaurentPolynomial.const(rank, 1)

    @staticmethod
    def y(rank: int, power: int = 1) -> "LaurentPolynomial":
        return LaurentPolynomial.exp((0,) * rank, (0,) * power + (1,))

    # -- ring structure ------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = dict(self.terms)
        for lam, c in other.terms.items():
            s = yp_add(out.get(lam, Y_ZERO), c)
            if s:
                out[lam] = s
            else:
                out.pop(lam, None)
        return LaurentPolynomial(out)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({lam: yp_neg(c) for lam, c in self.terms.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: Union["LaurentPolynomial", int]) -> "LaurentPolynomial":
        if isinstance(other, int):
            if other == 0:
                return LaurentPolynomial()
            return LaurentPolynomial(
                {lam: tuple(x * other for x in c) for lam, c in self.terms.items()})
        out: dict[Weight, YPoly] = {}
        for lam, c in self.terms.items():
            for mu, d in other.terms.items():
                key = tuple(a + b for a, b in zip(lam, mu))
                s = yp_add(out.get(key, Y_ZERO), yp_mul(c, d))
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def scale(self, coeff: YPoly) -> "LaurentPolynomial":
        """Multiply by an element of Z[y]."""
        if not coeff:
            return LaurentPolynomial()
        return LaurentPolynomial({lam: yp_mul(c, coeff) for lam, c in self.terms.items()})

    def subs_y(self, v: int) -> "LaurentPolynomial":
        """Evaluate the y variable at an integer."""
        out = {}
        for lam, c in self.terms.items():
            val = yp_eval(c, v)
            if val:
                out[lam] = (val,)
        return LaurentPolynomial(out)

    def uses_y(self) -> bool:
        return any(len(c) > 1 for c in self.terms.values())

    def sorted_terms(self) -> list[tuple[Weight, YPoly]]:
        return sorted(self.terms.items(), key=lambda kv: _wkey(kv[0]))

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.terms!r})"


def divide_exact(f: LaurentPolynomial, g: LaurentPolynomial,
                 max_steps: int = 200_000) -> LaurentPolynomial:
    """Exact quotient f/g in Z[y][lattice]; raises InexactDivision otherwise.

    Leading-term elimination under the (height, lex) group order.  For an
    exact division this terminates in exactly as many steps as the quotient
    has terms; the lower bound on quotient keys catches most inexact inputs
    immediately and the step cap the rest.
    """
    if g.is_zero():
        raise InexactDivision("division by the zero Laurent polynomial")
    if f.is_zero():
        return LaurentPolynomial()
    lam_g = max(g.terms, key=_wkey)
    lc_g = g.terms[lam_g]
    min_f = min(f.terms, key=_wkey)
    min_g = min(g.terms, key=_wkey)
    qmin_key = _wkey(tuple(a - b for a, b in zip(min_f, min_g)))
    rest_g = [(lam, c) for lam, c in g.terms.items() if lam != lam_g]
    r = dict(f.terms)
    q: dict[Weight, YPoly] = {}
    steps = 0
    while r:
        steps += 1
        if steps > max_steps:
            raise InexactDivision("Laurent division did not terminate")
        lam_r = max(r, key=_wkey)
        wq = tuple(a - b for a, b in zip(lam_r, lam_g))
        if _wkey(wq) < qmin_key:
            raise InexactDivision("Laurent division left a remainder")
        qc = yp_divexact(r[lam_r], lc_g)
        q[wq] = qc
        del r[lam_r]
        for lam, c in rest_g:
            key = tuple(a + b for a, b in zip(wq, lam))
            s = yp_add(r.get(key, Y_ZERO), yp_neg(yp_mul(qc, c)))
            if s:
                r[key] = s
            else:
                r.pop(key, None)
    return LaurentPolynomial(q)


# -- operators on the Laurent side --------------------------------------------


def weyl_act_lp(w: "WeylElement", f: LaurentPolynomial) -> LaurentPolynomial:
    """Ring automorphism e^lam -> e^{w(lam)}."""
    out: dict[Weight, YPoly] = {}
    for lam, c in f.terms.items():
        out[w.apply(lam)] = c
    return LaurentPolynomial(out)


def isobaric_dd(rs: RootSystem, i: int, f: LaurentPolynomial) -> LaurentPolynomial:
    """Isobaric divided difference (u - e^{alpha_i} s_i(u)) / (1 - e^{alpha_i}).

    Computed per monomial as a closed geometric sum, so no division happens:
    with m = <lam, alpha_i^vee>, e^lam maps to sum_{k=0..-m} e^{lam+k alpha_i}
    for m <= 0 and to -sum_{k=1..m-1} e^{lam-k alpha_i} for m >= 1.
    """
    alpha = rs.simple_root(i).weight
    out = LaurentPolynomial()
    for lam, c in f.terms.items():
        m = lam[i - 1]
        if m <= 0:
            for k in range(0, -m + 1):
                out += LaurentPolynomial.exp(
                    tuple(a + k * b for a, b in zip(lam, alpha)), c)
        else:
            for k in range(1, m):
                out += LaurentPolynomial.exp(
                    tuple(a - k * b for a, b in zip(lam, alpha)), yp_neg(c))
    return out


def t_operator(rs: RootSystem, beta: Root, eps: int,
               f: LaurentPolynomial) -> LaurentPolynomial:
    """The two root operators behind the K-theoretic Chevalley formula.

    eps = 1 is the reflection e^lam -> e^{s_beta lam}; eps = 0 is the
    geometric-sum operator: with m = <lam, beta^vee>, e^lam maps to 0 when
    m = 0, to sum_{k=0..m-1} e^{lam - k beta} when m > 0 and to
    -sum_{k=1..-m} e^{lam + k beta} when m < 0.
    """
    out = LaurentPolynomial()
    bw = beta.weight
    for lam, c in f.terms.items():
        if eps:
            out += LaurentPolynomial.exp(rs.reflect(lam, beta), c)
            continue
        m = rs.pairing(lam, beta)
        if m > 0:
            for k in range(m):
                out += LaurentPolynomial.exp(
                    tuple(a - k * b for a, b in zip(lam, bw)), c)
        elif m < 0:
            for k in range(1, -m + 1):
                out += LaurentPolynomial.exp(
                    tuple(a + k * b for a, b in zip(lam, bw)), yp_neg(c))
    return out


# -- the symmetric algebra side ------------------------------------------------

Exponents = tuple[int, ...]


class SymPolynomial:
    """Sparse polynomial over Q in the fundamental-weight variables."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Exponents, Fraction] | None = None):
        self.terms = {} if terms is None else terms

    @staticmethod
    def zero() -> "SymPolynomial":
        return SymPolynomial()

    @staticmethod
    def const(rank: int, c) -> "SymPolynomial":
        c = Fraction(c)
        return SymPolynomial({(0,) * rank: c} if c else {})

    @staticmethod
    def one(rank: int) -> "SymPolynomial":
        return SymPolynomial.const(rank, 1)

    @staticmethod
    def linear(coords: Weight) -> "SymPolynomial":
        """The linear form of a weight in fundamental coordinates."""
        n = len(coords)
        out = {}
        for j, c in enumerate(coords):
            if c:
                out[tuple(1 if k == j else 0 for k in range(n))] = Fraction(c)
        return SymPolynomial(out)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, SymPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "SymPolynomial") -> "SymPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SymPolynomial(out)

    def __neg__(self) -> "SymPolynomial":
        return SymPolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "SymPolynomial") -> "SymPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "SymPolynomial":
        if isinstance(other, (int, Fraction)):
            if not other:
                return SymPolynomial()
            return SymPolynomial({e: c * other for e, c in self.terms.items()})
        out: dict[Exponents, Fraction] = {}
        for e, c in self.terms.items():
            for fexp, d in other.terms.items():
                key = tuple(a + b for a, b in zip(e, fexp))
                s = out.get(key, Fraction(0)) + c * d
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return SymPolynomial(out)

    __rmul__ = __mul__

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __repr__(self) -> str:
        return f"SymPolynomial({self.terms!r})"


def weyl_act_sym(w: "WeylElement", f: SymPolynomial) -> SymPolynomial:
    """Degree-preserving automorphism induced by w on linear forms."""
    rs = w.rs
    n = rs.rank
    cache = rs._cache.setdefault("sym_variable_images", {})
    images = cache.get(w)
    if images is None:
        # variable j is the fundamental weight, whose image reads off column j
        images = [SymPolynomial.linear(tuple(w.matrix[k][j] for k in range(n)))
                  for j in range(n)]
        cache[w] = images
    out = SymPolynomial()
    for e, c in f.terms.items():
        mono = SymPolynomial.const(n, c)
        for j, power in enumerate(e):
            for _ in range(power):
                mono = mono * images[j]
        out += mono
    return out


def divide_linear(f: SymPolynomial, linform: SymPolynomial) -> SymPolynomial:
    """Exact quotient of f by a nonzero linear form; InexactDivision otherwise."""
    if linform.is_zero() or linform.degree() != 1:
        raise InexactDivision("divisor is not a nonzero linear form")
    pivot_exp, pivot_coeff = max(linform.terms.items(), key=lambda kv: kv[0])
    j = pivot_exp.index(1)
    rest = [(e, c) for e, c in linform.terms.items() if e != pivot_exp]
    r = dict(f.terms)
    q: dict[Exponents, Fraction] = {}
    while r:
        e = max(r, key=lambda ex: (ex[j], ex))
        if e[j] == 0:
            raise InexactDivision("polynomial not divisible by the linear form")
        qe = tuple(a - (1 if k == j else 0) for k, a in enumerate(e))
        qc = r.pop(e) / pivot_coeff
        q[qe] = q.get(qe, Fraction(0)) + qc
        for le, lc in rest:
            key = tuple(a + b for a, b in zip(qe, le))
            s = r.get(key, Fraction(0)) - qc * lc
            if s:
                r[key] = s
            else:
                r.pop(key, None)
    return SymPolynomial({e: c for e, c in q.items() if c})


def divided_diff_coh(rs: RootSystem, i: int, f: SymPolynomial) -> SymPolynomial:
    """Divided difference (f - s_i(f)) / (-alpha_i); drops degree by one."""
    from .weyl import simple_reflection

    num = f - weyl_act_sym(simple_reflection(rs, i), f)
    if num.is_zero():
        return SymPolynomial()
    alpha = SymPolynomial.linear(rs.simple_root(i).weight)
    try:
        return divide_linear(num, -alpha)
    except InexactDivision as exc:
        raise InternalError(f"f - s_{i}(f) not divisible by alpha_{i}") from exc
