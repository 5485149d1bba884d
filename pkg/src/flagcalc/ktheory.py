"""Equivariant K-theory of the flag variety: Schubert basis, Chevalley
multiplication, reflection automorphisms and the fixed-point oracle.

A KClass is a finite map WeylElement -> LaurentPolynomial, i.e. a combination
sum a_w [O_w] of structure-sheaf classes with coefficients in Z[y][lattice].
All operators here are linear over those coefficients.

Two independent computation routes coexist on purpose:

- the subword enumeration of the Chevalley formula (`line_bundle_mult`),
  which walks all bitmasks of a reduced word applying the two-case root
  operators right to left, pruning dead branches;
- the localization oracle (`restrict` / `expand`), built from the restriction
  of [O_id] at the identity fixed point, prod (1 - e^beta) over positive
  roots, propagated by the localized Demazure rule
  (d f)_w = (f_w - e^{w(alpha_i)} f_{w s_i}) / (1 - e^{w(alpha_i)}).

Every division in the oracle must be exact; a failure while building the
table is a convention error and fatal, a failure during expansion just means
the vector is not an integral combination of Schubert restrictions.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .charring import LaurentPolynomial, divide_exact, t_operator
from .errors import (InexactDivision, NotInSpan, OracleInconsistency,
                     PreconditionViolated)
from .rootsys import RootSystem, Weight
from .weyl import (WeylElement, all_elements, identity, subword_mask,
                   support_set_C)


class KClass:
    """A finite R(T)[y]-combination of Schubert classes [O_w]."""

    __slots__ = ("rs", "terms")

    def __init__(self, rs: RootSystem,
                 terms: dict[WeylElement, LaurentPolynomial] | None = None):
        self.rs = rs
        self.terms = {} if terms is None else {w: a for w, a in terms.items() if a}

    @staticmethod
    def basis(rs: RootSystem, w: WeylElement) -> "KClass":
        return KClass(rs, {w: LaurentPolynomial.one(rs.rank)})

    @staticmethod
    def zero(rs: RootSystem) -> "KClass":
        return KClass(rs)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, KClass) and self.rs == other.rs
                and self.terms == other.terms)

    def __add__(self, other: "KClass") -> "KClass":
        out = dict(self.terms)
        for w, a in other.terms.items():
            s = out.get(w, LaurentPolynomial.zero()) + a
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return KClass(self.rs, out)

    def __neg__(self) -> "KClass":
        return KClass(self.rs, {w: -a for w, a in self.terms.items()})

    def __sub__(self, other: "KClass") -> "KClass":
        return self + (-other)

    def scale(self, a: LaurentPolynomial | int) -> "KClass":
        if isinstance(a, int):
            a = LaurentPolynomial.const(self.rs.rank, a)
        if a.is_zero():
            return KClass(self.rs)
        return KClass(self.rs, {w: b * a for w, b in self.terms.items()})

    def coeff(self, w: WeylElement) -> LaurentPolynomial:
        return self.terms.get(w, LaurentPolynomial.zero())

    def support(self) -> set[WeylElement]:
        return set(self.terms)

    def subs_y(self, v: int) -> "KClass":
        return KClass(self.rs, {w: a.subs_y(v) for w, a in self.terms.items()})

    def truncate_length(self, min_length: int) -> "KClass":
        """Keep only the terms [O_w] with l(w) >= min_length."""
        return KClass(self.rs,
                      {w: a for w, a in self.terms.items() if w.length >= min_length})

    def __repr__(self) -> str:
        return f"KClass({self.terms!r})"


class FixedPointVector:
    """Restrictions at every T-fixed point; componentwise algebra."""

    __slots__ = ("rs", "values")

    def __init__(self, rs: RootSystem,
                 values: dict[WeylElement, LaurentPolynomial] | None = None):
        self.rs = rs
        self.values = {} if values is None else {w: a for w, a in values.items() if a}

    def at(self, w: WeylElement) -> LaurentPolynomial:
        return self.values.get(w, LaurentPolynomial.zero())

    def __bool__(self) -> bool:
        return bool(self.values)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FixedPointVector) and self.rs == other.rs
                and self.values == other.values)

    def __add__(self, other: "FixedPointVector") -> "FixedPointVector":
        out = dict(self.values)
        for w, a in other.values.items():
            s = out.get(w, LaurentPolynomial.zero()) + a
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return FixedPointVector(self.rs, out)

    def __sub__(self, other: "FixedPointVector") -> "FixedPointVector":
        return self + other.scale_all(-1)

    def pointwise_mul(self, other: "FixedPointVector") -> "FixedPointVector":
        out = {}
        for w, a in self.values.items():
            b = other.values.get(w)
            if b is not None:
                p = a * b
                if p:
                    out[w] = p
        return FixedPointVector(self.rs, out)

    def scale(self, a: LaurentPolynomial) -> "FixedPointVector":
        """Multiply every component by a fixed scalar."""
        if a.is_zero():
            return FixedPointVector(self.rs)
        return FixedPointVector(self.rs, {w: b * a for w, b in self.values.items()})

    def scale_all(self, c: int) -> "FixedPointVector":
        return FixedPointVector(self.rs, {w: a * c for w, a in self.values.items()})

    def map_components(self, fn: Callable[[WeylElement, LaurentPolynomial],
                                          LaurentPolynomial]) -> "FixedPointVector":
        out = {}
        for w in all_elements(self.rs):
            v = fn(w, self.at(w))
            if v:
                out[w] = v
        return FixedPointVector(self.rs, out)

    def __repr__(self) -> str:
        return f"FixedPointVector({self.values!r})"


# -- basis operators -----------------------------------------------------------


def demazure_k(i: int, u: KClass) -> KClass:
    """Demazure operator: [O_w] -> [O_{w s_i}] on ascents, fixed on descents."""
    out = KClass(u.rs)
    for w, a in u.terms.items():
        target = w.times_simple(i) if w.is_right_ascent(i) else w
        out += KClass(u.rs, {target: a})
    return out


def _chevalley_column(rs: RootSystem, alpha: Weight,
                      word: Sequence[int]) -> dict[WeylElement, LaurentPolynomial]:
    """[L(alpha)] [O_w] for w given by a reduced word, via mask enumeration.

    Bits are consumed right to left so that the running value is the printed
    operator product applied to e^alpha; branches with value 0 are pruned.
    """
    neg_simples = [-rs.simple_root(i) for i in word]
    out: dict[WeylElement, LaurentPolynomial] = {}
    start = LaurentPolynomial.exp(alpha)
    stack = [(len(word) - 1, start, ())]
    while stack:
        k, val, mask = stack.pop()
        if k < 0:
            x = subword_mask(rs, word, mask)
            s = out.get(x, LaurentPolynomial.zero()) + val
            if s:
                out[x] = s
            else:
                out.pop(x, None)
            continue
        for eps in (0, 1):
            nxt = t_operator(rs, neg_simples[k], eps, val)
            if nxt:
                stack.append((k - 1, nxt, (eps,) + mask))
    return out


def line_bundle_mult_word(rs: RootSystem, alpha: Weight,
                          word: Sequence[int]) -> KClass:
    """Chevalley product [L(alpha)] [O_w] along an explicit reduced word."""
    return KClass(rs, _chevalley_column(rs, alpha, word))


def line_bundle_mult(alpha: Weight, u: KClass) -> KClass:
    """Multiply u by the line bundle class of the weight alpha."""
    rs = u.rs
    out = KClass(rs)
    for w, a in u.terms.items():
        col = KClass(rs, _chevalley_column(rs, alpha, w.word))
        out += col.scale(a)
    return out


def si_k(i: int, u: KClass) -> KClass:
    """The reflection automorphism s_i on K-theory.

    On a basis class this is [L(-alpha_i)]([O_w] - d_i[O_w]) + d_i[O_w], a
    regrouping of the divided-difference formula that needs one Chevalley
    call; basis images are memoized per (root system, i).
    """
    rs = u.rs
    cache = rs._cache.setdefault(("si_k", i), {})
    out = KClass(rs)
    neg_alpha = tuple(-c for c in rs.simple_root(i).weight)
    for w, a in u.terms.items():
        img = cache.get(w)
        if img is None:
            basis = KClass.basis(rs, w)
            dem = demazure_k(i, basis)
            img = line_bundle_mult(neg_alpha, basis - dem) + dem
            cache[w] = img
        out += img.scale(a)
    return out


def si_k_matrix(rs: RootSystem, i: int) -> list[list[LaurentPolynomial]]:
    """Matrix of s_i in the Schubert basis, columns indexed by all_elements."""
    order = all_elements(rs)
    index = {w: r for r, w in enumerate(order)}
    n = len(order)
    mat = [[LaurentPolynomial.zero() for _ in range(n)] for _ in range(n)]
    for c, w in enumerate(order):
        img = si_k(i, KClass.basis(rs, w))
        for v, a in img.terms.items():
            mat[index[v]][c] = a
    return mat


def sln_si_leading(w: WeylElement, i: int) -> KClass:
    """Closed form for the length >= l(w) part of s_i [O_w] in type A.

    (1 - e^{w(alpha_i)})[O_{w s_i}] - [O_w], minus e^{-w s_i s_beta(alpha_i)}
    [O_{w s_i s_beta}] over beta in C_i with (alpha_i, beta) > 0, plus
    e^{w(alpha_i)} [O_{w s_i s_beta}] over those with (alpha_i, beta) < 0.
    """
    rs = w.rs
    if rs.letter != "A":
        raise PreconditionViolated("closed leading form is specific to type A")
    if not w.is_right_ascent(i):
        raise PreconditionViolated(f"{w!r} has a descent at {i}")
    from .weyl import reflection

    alpha_i = rs.simple_root(i)
    walpha = w.apply(alpha_i.weight)
    one = LaurentPolynomial.one(rs.rank)
    out = KClass(rs, {w.times_simple(i): one - LaurentPolynomial.exp(walpha),
                      w: -one})
    for beta in support_set_C(w, i):
        target = w.times_simple(i) * reflection(rs, beta)
        if rs.inner_sign(alpha_i, beta) > 0:
            lam = tuple(-c for c in target.apply(alpha_i.weight))
            out += KClass(rs, {target: -LaurentPolynomial.exp(lam)})
        else:
            out += KClass(rs, {target: LaurentPolynomial.exp(walpha)})
    return out


# -- fixed point localization ----------------------------------------------------


def _one_minus_exp(rank: int, mu: Weight) -> LaurentPolynomial:
    return LaurentPolynomial.one(rank) - LaurentPolynomial.exp(mu)


def localized_demazure(i: int, v: FixedPointVector) -> FixedPointVector:
    """The Demazure operator on restriction vectors:
    (d f)_w = (f_w - e^{w(alpha_i)} f_{w s_i}) / (1 - e^{w(alpha_i)})."""
    rs = v.rs
    alpha = rs.simple_root(i).weight
    out = {}
    for w in all_elements(rs):
        mu = w.apply(alpha)
        num = v.at(w) - LaurentPolynomial.exp(mu) * v.at(w.times_simple(i))
        if num.is_zero():
            continue
        out[w] = divide_exact(num, _one_minus_exp(rs.rank, mu))
    return FixedPointVector(rs, out)


def _restriction_table(rs: RootSystem) -> tuple[
        dict[WeylElement, FixedPointVector], dict[WeylElement, tuple[Weight, ...]]]:
    """Restrictions of every [O_w], plus the factored diagonal values.

    The table starts from rho([O_id]) = prod (1 - e^beta) at the identity and
    climbs the Bruhat order by the localized Demazure rule.  Diagonals stay in
    factored form, diag(w s_i) = diag(w) / (1 - e^{w(alpha_i)}), so that the
    triangular solve in `expand` only ever divides by binomials.
    """
    if "restriction_table" in rs._cache:
        return rs._cache["restriction_table"]
    order = all_elements(rs)
    e = identity(rs)
    prod = LaurentPolynomial.one(rs.rank)
    for beta in rs.positive_roots:
        prod = prod * _one_minus_exp(rs.rank, beta.weight)
    table = {e: FixedPointVector(rs, {e: prod})}
    diag_factors = {e: tuple(beta.weight for beta in rs.positive_roots)}
    try:
        for x in order[1:]:
            i = next(j for j in range(1, rs.rank + 1) if not x.is_right_ascent(j))
            w = x.times_simple(i)
            table[x] = localized_demazure(i, table[w])
            mu = w.apply(rs.simple_root(i).weight)
            factors = list(diag_factors[w])
            factors.remove(mu)
            diag_factors[x] = tuple(factors)
            if table[x].at(x) != _product_of(rs, diag_factors[x]):
                raise OracleInconsistency(
                    f"diagonal restriction at {x!r} lost its factored form")
    except (InexactDivision, ValueError) as exc:
        raise OracleInconsistency(f"restriction table failed: {exc}") from exc
    rs._cache["restriction_table"] = (table, diag_factors)
    return table, diag_factors


def _product_of(rs: RootSystem, weights: Sequence[Weight]) -> LaurentPolynomial:
    out = LaurentPolynomial.one(rs.rank)
    for mu in weights:
        out = out * _one_minus_exp(rs.rank, mu)
    return out


def restrict_basis(rs: RootSystem, w: WeylElement) -> FixedPointVector:
    """The restriction vector of the single class [O_w]."""
    return _restriction_table(rs)[0][w]


def restrict(u: KClass) -> FixedPointVector:
    """Restrict a class to all fixed points (an injective algebra map)."""
    table, _ = _restriction_table(u.rs)
    out = FixedPointVector(u.rs)
    for w, a in u.terms.items():
        out += table[w].scale(a)
    return out


def line_bundle_restriction(rs: RootSystem, alpha: Weight) -> FixedPointVector:
    """[L(alpha)] restricts to e^{w(alpha)} at the fixed point of w."""
    return FixedPointVector(
        rs, {w: LaurentPolynomial.exp(w.apply(alpha)) for w in all_elements(rs)})


def expand(v: FixedPointVector) -> KClass:
    """Inverse of `restrict` by triangular elimination; NotInSpan if the
    vector is not an integral combination of Schubert restrictions."""
    rs = v.rs
    table, diag_factors = _restriction_table(rs)
    remaining = dict(v.values)
    coeffs: dict[WeylElement, LaurentPolynomial] = {}
    for w in reversed(all_elements(rs)):
        val = remaining.get(w)
        if val is None or val.is_zero():
            continue
        a = val
        for mu in diag_factors[w]:
            try:
                a = divide_exact(a, _one_minus_exp(rs.rank, mu))
            except InexactDivision as exc:
                raise NotInSpan(
                    f"restriction vector has no integral coefficient at {w!r}") from exc
        coeffs[w] = a
        for x, b in table[w].values.items():
            s = remaining.get(x, LaurentPolynomial.zero()) - b * a
            if s:
                remaining[x] = s
            else:
                remaining.pop(x, None)
    if any(remaining.values()):
        raise NotInSpan("residual vector outside the span of Schubert restrictions")
    return KClass(rs, coeffs)


def express_in_basis(target: KClass, basis_classes: dict[WeylElement, KClass]
                     ) -> dict[WeylElement, LaurentPolynomial]:
    """Coefficients of `target` in a Bruhat-triangular family of classes.

    Each basis class must have Schubert support below its index with a
    nonzero diagonal coefficient; elimination runs from the top of the order
    down, dividing exactly or raising NotInSpan.
    """
    rs = target.rs
    remaining = dict(target.terms)
    out: dict[WeylElement, LaurentPolynomial] = {}
    for w in reversed(all_elements(rs)):
        val = remaining.get(w)
        if val is None or val.is_zero():
            continue
        base = basis_classes[w]
        try:
            a = divide_exact(val, base.coeff(w))
        except InexactDivision as exc:
            raise NotInSpan(f"no integral coefficient at {w!r}") from exc
        out[w] = a
        for x, b in base.terms.items():
            s = remaining.get(x, LaurentPolynomial.zero()) - b * a
            if s:
                remaining[x] = s
            else:
                remaining.pop(x, None)
    if any(remaining.values()):
        raise NotInSpan("class is outside the span of the given basis")
    return out
