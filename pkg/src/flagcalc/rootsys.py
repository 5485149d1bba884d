"""Finite crystallographic root systems: Cartan data, weights, roots, pairings.

Conventions used throughout the package:

- A weight is a plain tuple of integers in *fundamental-weight coordinates*,
  so ``pairing(lam, alpha_i) == lam[i-1]`` for a simple root ``alpha_i``.
- ``cartan[i][j] = <alpha_j, alpha_i^vee>``; the simple root ``alpha_j`` has
  fundamental coordinates equal to column ``j`` of the Cartan matrix.
- ``symmetrizer`` is the minimal tuple of positive integers ``d`` with
  ``d[i]*cartan[i][j]`` symmetric; the bilinear form is normalized so that
  ``(alpha_i, alpha_i) = 2*d[i]``.  Only signs and coroot pairings of the
  form are consumed downstream, so the normalization is free.

Supported types are a fixed desk-scale list: A1..A5, B2, C2, G2, D4.

>>> rs = build_root_system("A", 2)
>>> [r.simple for r in rs.positive_roots]
[(1, 0), (0, 1), (1, 1)]
>>> rs.pairing(rs.simple_root(1).weight, rs.simple_root(2))
-1
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .errors import InternalError, UnsupportedType

Weight = tuple[int, ...]

# (letter, rank) -> expected number of positive roots
_POSITIVE_COUNTS = {
    ("A", 1): 1, ("A", 2): 3, ("A", 3): 6, ("A", 4): 10, ("A", 5): 15,
    ("B", 2): 4, ("C", 2): 4, ("G", 2): 6, ("D", 4): 12,
}


def _cartan_data(letter: str, rank: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Cartan matrix and symmetrizer for a supported type."""
    if letter == "A" and 1 <= rank <= 5:
        cartan = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank)]
                  for i in range(rank)]
        sym = [1] * rank
    elif letter == "B" and rank == 2:
        cartan = [[2, -1], [-2, 2]]
        sym = [2, 1]
    elif letter == "C" and rank == 2:
        cartan = [[2, -2], [-1, 2]]
        sym = [1, 2]
    elif letter == "G" and rank == 2:
        cartan = [[2, -3], [-1, 2]]
        sym = [1, 3]
    elif letter == "D" and rank == 4:
        edges = {(1, 2), (2, 1), (2, 3), (3, 2), (2, 4), (4, 2)}
        cartan = [[2 if i == j else (-1 if (i + 1, j + 1) in edges else 0)
                   for j in range(rank)] for i in range(rank)]
        sym = [1] * rank
    else:
        raise UnsupportedType(f"unsupported Cartan type {letter}{rank}")
    return tuple(tuple(row) for row in cartan), tuple(sym)


@dataclass(frozen=True)
class Root:
    """A root, carried both in fundamental and in simple-root coordinates."""

    weight: Weight
    simple: tuple[int, ...]

    @property
    def positive(self) -> bool:
        return all(c >= 0 for c in self.simple)

    @property
    def height(self) -> int:
        return sum(self.simple)

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.weight), tuple(-c for c in self.simple))


class RootSystem:
    """Immutable Cartan datum of one of the supported finite types.

    Construct via :func:`build_root_system`; instances are cached so the same
    (letter, rank) pair always yields the same object.
    """

    def __init__(self, letter: str, rank: int):
        self.letter = letter
        self.rank = rank
        self.cartan, self.symmetrizer = _cartan_data(letter, rank)
        self.zero_weight: Weight = (0,) * rank
        self.positive_roots: list[Root] = self._generate_positive_roots()
        if len(self.positive_roots) != _POSITIVE_COUNTS[(letter, rank)]:
            raise InternalError(
                f"{letter}{rank}: generated {len(self.positive_roots)} positive roots")
        self._positive_by_weight = {r.weight: r for r in self.positive_roots}
        self._root_weights = frozenset(self._positive_by_weight) | frozenset(
            (-r).weight for r in self.positive_roots)
        self._inv_cartan = self._invert_cartan()
        # scratch space for interned Weyl elements, enumeration, oracle tables
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"RootSystem({self.letter}{self.rank})"

    def __hash__(self) -> int:
        return hash((self.letter, self.rank))

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and \
            (self.letter, self.rank) == (other.letter, other.rank)

    # -- construction helpers ------------------------------------------------

    def _simple_reflection_in_simple_coords(self, i: int, m: tuple[int, ...]) -> tuple[int, ...]:
        # s_i(m) = m - <beta, alpha_i^vee> e_i with the pairing read off the Cartan matrix
        p = sum(self.cartan[i][j] * m[j] for j in range(self.rank))
        out = list(m)
        out[i] -= p
        return tuple(out)

    def _generate_positive_roots(self) -> list[Root]:
        simples = [tuple(1 if j == i else 0 for j in range(self.rank))
                   for i in range(self.rank)]
        roots: set[tuple[int, ...]] = set(simples)
        frontier = list(simples)
        while frontier:
            nxt = []
            for m in frontier:
                for i in range(self.rank):
                    im = self._simple_reflection_in_simple_coords(i, m)
                    if im not in roots:
                        roots.add(im)
                        nxt.append(im)
            frontier = nxt
        positive = sorted((m for m in roots if all(c >= 0 for c in m)),
                          key=lambda m: (sum(m), m))
        return [Root(self.weight_of_simple_coords(m), m) for m in positive]

    def _invert_cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        n = self.rank
        aug = [[Fraction(self.cartan[i][j]) for j in range(n)] +
               [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return tuple(tuple(row[n:]) for row in aug)

    # -- coordinates ---------------------------------------------------------

    def weight_of_simple_coords(self, m) -> Weight:
        """Fundamental coordinates of sum_j m_j alpha_j (m may be rational)."""
        return tuple(sum(self.cartan[i][j] * m[j] for j in range(self.rank))
                     for i in range(self.rank))

    def to_simple_coords(self, lam: Weight) -> tuple[Fraction, ...]:
        """Coordinates of lam in the simple-root basis (rational in general)."""
        return tuple(sum(self._inv_cartan[i][j] * lam[j] for j in range(self.rank))
                     for i in range(self.rank))

    def integral_simple_coords(self, lam: Weight) -> Optional[tuple[int, ...]]:
        """Simple-root coordinates when lam is in the root lattice, else None."""
        m = self.to_simple_coords(lam)
        if all(c.denominator == 1 for c in m):
            return tuple(int(c) for c in m)
        return None

    def simple_root(self, i: int) -> Root:
        """The simple root alpha_i, 1-based."""
        m = tuple(1 if j == i - 1 else 0 for j in range(self.rank))
        return self._positive_by_weight[self.weight_of_simple_coords(m)]

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def root_from_weight(self, lam: Weight) -> Root:
        """The Root object with the given fundamental coordinates."""
        if lam in self._positive_by_weight:
            return self._positive_by_weight[lam]
        neg = tuple(-c for c in lam)
        if neg in self._positive_by_weight:
            return -self._positive_by_weight[neg]
        raise InternalError(f"{lam} is not a root of {self!r}")

    def is_root_weight(self, lam: Weight) -> bool:
        return lam in self._root_weights

    def is_positive_root_weight(self, lam: Weight) -> bool:
        return lam in self._positive_by_weight

    # -- the bilinear form ---------------------------------------------------

    def inner_product(self, a: Union[Weight, Root], b: Union[Weight, Root]) -> Fraction:
        """(a, b) under the symmetrized form, exact."""
        aw = a.weight if isinstance(a, Root) else a
        if isinstance(b, Root):
            m = b.simple
        else:
            m = self.to_simple_coords(b)
        # (lam, alpha_j) = lam[j] * d_j, extended linearly in the second slot
        return sum((Fraction(m[j]) * aw[j] * self.symmetrizer[j]
                    for j in range(self.rank)), start=Fraction(0))

    def inner_sign(self, a: Union[Weight, Root], b: Union[Weight, Root]) -> int:
        """Sign of (a, b): one of -1, 0, +1."""
        v = self.inner_product(a, b)
        return (v > 0) - (v < 0)

    def pairing(self, lam: Weight, beta: Root) -> int:
        """<lam, beta^vee> = 2(lam, beta)/(beta, beta), always an integer."""
        num = 2 * sum(beta.simple[j] * lam[j] * self.symmetrizer[j]
                      for j in range(self.rank))
        den = sum(beta.simple[j] * beta.weight[j] * self.symmetrizer[j]
                  for j in range(self.rank))
        if num % den:
            raise InternalError(f"non-integral pairing <{lam}, {beta}^vee>")
        return num // den

    def reflect(self, lam: Weight, beta: Root) -> Weight:
        """s_beta(lam) = lam - <lam, beta^vee> beta."""
        p = self.pairing(lam, beta)
        return tuple(lam[i] - p * beta.weight[i] for i in range(self.rank))


@lru_cache(maxsize=None)
def build_root_system(letter: str, rank: int) -> RootSystem:
    """Build (or fetch the cached) root system of the given type.

    Raises UnsupportedType for anything outside A1..A5, B2, C2, G2, D4.
    """
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise UnsupportedType(f"rank must be an integer, got {rank!r}")
    return RootSystem(letter, rank)
