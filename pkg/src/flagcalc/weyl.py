"""Weyl group elements, reduced words, Bruhat order and 0-Hecke products.

Elements are represented uniformly (for every supported type) by their integer
matrix acting on fundamental-weight coordinates; they are interned per root
system, so equality and hashing are cheap.  Each element caches its length and
its canonical reduced word, the lexicographically minimal one, computed by
greedy left descents.

Words are sequences of simple-root indices in 1..rank and need not be reduced.
A word serializes as comma-separated indices ("1,2,1"); the identity
serializes as "e".

>>> rs = build_root_system("A", 2)
>>> w = from_word(rs, [2, 1, 2])
>>> w.word
(1, 2, 1)
>>> w.length
3
>>> demazure_product(rs, [1, 1]).word
(1,)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadIndex, BadMask, InternalError, NotReduced, PreconditionViolated
from .rootsys import Root, RootSystem, Weight, build_root_system

Matrix = tuple[tuple[int, ...], ...]
Word = tuple[int, ...]


def _identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _matvec(a: Matrix, v: Sequence[int]) -> Weight:
    n = len(a)
    return tuple(sum(a[i][k] * v[k] for k in range(n)) for i in range(n))


def _matinv(a: Matrix) -> Matrix:
    """Inverse of an integer matrix with unit determinant."""
    n = len(a)
    aug = [[Fraction(a[i][j]) for j in range(n)] +
           [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for i in range(n):
        row = aug[i][n:]
        if any(x.denominator != 1 for x in row):
            raise InternalError("Weyl matrix inverse is not integral")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def _simple_matrices(rs: RootSystem) -> list[Matrix]:
    if "simple_matrices" not in rs._cache:
        n = rs.rank
        mats = []
        for i in range(n):
            # s_i(lam)[k] = lam[k] - lam[i] * cartan[k][i]
            mats.append(tuple(
                tuple((1 if j == k else 0) - (rs.cartan[k][i] if j == i else 0)
                      for j in range(n))
                for k in range(n)))
        rs._cache["simple_matrices"] = mats
    return rs._cache["simple_matrices"]


class WeylElement:
    """An interned Weyl group element; compare and hash freely."""

    __slots__ = ("rs", "matrix", "inv_matrix", "length", "word", "_hash")

    def __init__(self, rs: RootSystem, matrix: Matrix, inv_matrix: Matrix,
                 length: int, word: Word):
        self.rs = rs
        self.matrix = matrix
        self.inv_matrix = inv_matrix
        self.length = length
        self.word = word
        self._hash = hash((rs.letter, rs.rank, matrix))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, WeylElement)
                                 and self.matrix == other.matrix
                                 and self.rs == other.rs)

    def __repr__(self) -> str:
        return f"W({word_str(self.word)})"

    def apply(self, lam: Weight) -> Weight:
        """Image of a weight under this element."""
        return _matvec(self.matrix, lam)

    def apply_inverse(self, lam: Weight) -> Weight:
        return _matvec(self.inv_matrix, lam)

    def apply_root(self, beta: Root) -> Root:
        return self.rs.root_from_weight(self.apply(beta.weight))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return _intern(self.rs, _matmul(self.matrix, other.matrix))

    def inverse(self) -> "WeylElement":
        return _intern(self.rs, self.inv_matrix)

    def times_simple(self, i: int) -> "WeylElement":
        """Right multiplication by s_i (1-based)."""
        return _intern(self.rs, _matmul(self.matrix, _simple_matrices(self.rs)[i - 1]))

    def is_right_ascent(self, i: int) -> bool:
        """True iff l(w s_i) > l(w), i.e. w(alpha_i) is a positive root."""
        if not 1 <= i <= self.rs.rank:
            raise BadIndex(f"simple index {i} out of range 1..{self.rs.rank}")
        return self.rs.is_positive_root_weight(self.apply(self.rs.simple_root(i).weight))


def _length_of(rs: RootSystem, matrix: Matrix) -> int:
    neg = 0
    for beta in rs.positive_roots:
        if not rs.is_positive_root_weight(_matvec(matrix, beta.weight)):
            neg += 1
    return neg


def _canonical_word(rs: RootSystem, matrix: Matrix, inv_matrix: Matrix) -> Word:
    """Lex-minimal reduced word via greedy left descents.

    i is a left descent of w iff w^{-1}(alpha_i) is negative; picking the
    smallest left descent at each step yields the lex-minimal reduced word.
    """
    n = rs.rank
    ident = _identity_matrix(n)
    mats = _simple_matrices(rs)
    word = []
    m, minv = matrix, inv_matrix
    while m != ident:
        for i in range(n):
            t = _matvec(minv, rs.simple_root(i + 1).weight)
            if not rs.is_positive_root_weight(t):
                word.append(i + 1)
                m = _matmul(mats[i], m)
                minv = _matmul(minv, mats[i])
                break
        else:
            raise InternalError("non-identity element with no left descent")
    return tuple(word)


def _intern(rs: RootSystem, matrix: Matrix) -> WeylElement:
    table = rs._cache.setdefault("weyl_elements", {})
    elt = table.get(matrix)
    if elt is None:
        inv = _matinv(matrix)
        length = _length_of(rs, matrix)
        word = _canonical_word(rs, matrix, inv)
        if len(word) != length:
            raise InternalError("canonical word length disagrees with inversion count")
        elt = WeylElement(rs, matrix, inv, length, word)
        table[matrix] = elt
    return elt


def identity(rs: RootSystem) -> WeylElement:
    return _intern(rs, _identity_matrix(rs.rank))


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    if not 1 <= i <= rs.rank:
        raise BadIndex(f"simple index {i} out of range 1..{rs.rank}")
    return _intern(rs, _simple_matrices(rs)[i - 1])


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    """Product of simple reflections along the word (need not be reduced)."""
    m = _identity_matrix(rs.rank)
    mats = _simple_matrices(rs)
    for i in word:
        if not 1 <= i <= rs.rank:
            raise BadIndex(f"simple index {i} out of range 1..{rs.rank}")
        m = _matmul(m, mats[i - 1])
    return _intern(rs, m)


def reflection(rs: RootSystem, beta: Root) -> WeylElement:
    """The reflection s_beta as a Weyl element."""
    n = rs.rank
    cols = []
    for j in range(n):
        e_j = tuple(1 if k == j else 0 for k in range(n))
        cols.append(rs.reflect(e_j, beta))
    matrix = tuple(tuple(cols[j][k] for j in range(n)) for k in range(n))
    return _intern(rs, matrix)


def all_elements(rs: RootSystem) -> list[WeylElement]:
    """Every element of W, sorted by (length, canonical word)."""
    if "all_elements" not in rs._cache:
        seen = {identity(rs)}
        frontier = [identity(rs)]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(1, rs.rank + 1):
                    v = w.times_simple(i)
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        rs._cache["all_elements"] = sorted(seen, key=lambda w: (w.length, w.word))
    return rs._cache["all_elements"]


def longest_element(rs: RootSystem) -> WeylElement:
    return all_elements(rs)[-1]


def demazure_product(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    """0-Hecke product: fold x <- x*s_i when the length goes up, else keep x."""
    x = identity(rs)
    for i in word:
        if not 1 <= i <= rs.rank:
            raise BadIndex(f"simple index {i} out of range 1..{rs.rank}")
        if x.is_right_ascent(i):
            x = x.times_simple(i)
    return x


def is_reduced(rs: RootSystem, word: Sequence[int]) -> bool:
    return from_word(rs, word).length == len(word)


def subword_mask(rs: RootSystem, word: Sequence[int], mask: Sequence[int]) -> WeylElement:
    """0-Hecke product of the letters selected by the bitmask."""
    if len(mask) != len(word):
        raise BadMask(f"mask length {len(mask)} != word length {len(word)}")
    return demazure_product(rs, [a for a, eps in zip(word, mask) if eps])


def deletion_reflection(rs: RootSystem, word: Sequence[int], k: int) -> Root:
    """The positive root beta with w*s_beta = (w with the k-th letter removed).

    The word must be reduced and k is 1-based.  beta = w'(alpha_{i_k}) where
    w' = s_{i_n} ... s_{i_{k+1}}.
    """
    if not is_reduced(rs, word):
        raise NotReduced(f"word {word_str(word)} is not reduced")
    if not 1 <= k <= len(word):
        raise PreconditionViolated(f"position {k} out of range 1..{len(word)}")
    wprime = from_word(rs, list(reversed(word[k:])))
    beta_weight = wprime.apply(rs.simple_root(word[k - 1]).weight)
    beta = rs.root_from_weight(beta_weight)
    if not beta.positive:
        raise InternalError("deletion reflection produced a negative root")
    return beta


def support_set_C(w: WeylElement, i: int) -> set[Root]:
    """Positive roots gamma != alpha_i with l(w s_i s_gamma) = l(w) and
    (alpha_i, gamma) != 0.  Requires l(w s_i) > l(w)."""
    rs = w.rs
    if not w.is_right_ascent(i):
        raise PreconditionViolated(f"{w!r} has a descent at {i}")
    alpha_i = rs.simple_root(i)
    ws_i = w.times_simple(i)
    out = set()
    for gamma in rs.positive_roots:
        if gamma == alpha_i:
            continue
        if rs.inner_sign(alpha_i, gamma) == 0:
            continue
        if (ws_i * reflection(rs, gamma)).length == w.length:
            out.add(gamma)
    return out


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    """Subword criterion: some subword of a reduced word of w is reduced for u.

    Computed as membership of u in the set of 0-Hecke products of subwords of
    the canonical word of w, which is exactly the lower Bruhat interval.
    """
    rs = w.rs
    if u.length > w.length:
        return False
    interval_cache = rs._cache.setdefault("bruhat_intervals", {})
    reach = interval_cache.get(w)
    if reach is None:
        reach = {identity(rs)}
        for i in w.word:
            reach |= {x.times_simple(i) for x in reach if x.is_right_ascent(i)}
        interval_cache[w] = reach
    return u in reach


def descent_reflections(w: WeylElement) -> list[tuple[Root, WeylElement]]:
    """All (beta, w*s_beta) with beta positive and l(w*s_beta) = l(w) - 1."""
    rs = w.rs
    cache = rs._cache.setdefault("descent_reflections", {})
    if w not in cache:
        out = []
        for beta in rs.positive_roots:
            v = w * reflection(rs, beta)
            if v.length == w.length - 1:
                out.append((beta, v))
        cache[w] = out
    return cache[w]


def all_reduced_words(w: WeylElement) -> list[Word]:
    """Every reduced word of w (small groups only)."""
    if w.length == 0:
        return [()]
    out = []
    for i in range(1, w.rs.rank + 1):
        if not w.is_right_ascent(i):
            for prefix in all_reduced_words(w.times_simple(i)):
                out.append(prefix + (i,))
    return out


def word_str(word: Sequence[int]) -> str:
    """Serialize a word; the identity (empty word) prints as "e"."""
    return ",".join(str(i) for i in word) if word else "e"


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "e"):
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise BadIndex(f"cannot parse word {text!r}") from None
