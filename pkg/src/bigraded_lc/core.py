"""Ring data, bidegrees, multidegrees and exact rational linear algebra.

Every other module builds on the conventions fixed here:

* a ring ``K[X1..Xn, Y1..Ym]`` is a :class:`RingSpec`; variables are indexed
  ``0 .. n+m-1`` with the X-variables first;
* a multidegree is a plain tuple of ints of length ``n+m``;
* a sign pattern is a ``frozenset`` of (0-based) variable indices.

All arithmetic is over :class:`fractions.Fraction` or Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Multidegree = tuple[int, ...]
SignPattern = frozenset


class DimensionError(ValueError):
    """A vector or matrix has the wrong length for the ambient ring."""


@dataclass(frozen=True)
class RingSpec:
    """``K[X1..Xn, Y1..Ym]`` with ``bideg Xi = (1,0)`` and ``bideg Yj = (0,1)``."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"need n >= 1 and m >= 1, got n={self.n} m={self.m}")

    @property
    def nvars(self) -> int:
        return self.n + self.m

    def is_x(self, j: int) -> bool:
        return j < self.n

    def var_name(self, j: int) -> str:
        if not 0 <= j < self.nvars:
            raise IndexError(f"variable index {j} out of range for {self}")
        return f"X{j + 1}" if j < self.n else f"Y{j - self.n + 1}"

    def var_names(self) -> list[str]:
        return [self.var_name(j) for j in range(self.nvars)]

    def var_index(self, name: str) -> int:
        """Inverse of :meth:`var_name`; raises ``KeyError`` for unknown names."""
        if len(name) >= 2 and name[0] in "XY" and name[1:].isdigit():
            k = int(name[1:])
            if name[0] == "X" and 1 <= k <= self.n:
                return k - 1
            if name[0] == "Y" and 1 <= k <= self.m:
                return self.n + k - 1
        raise KeyError(f"unknown variable {name!r} in ring n={self.n} m={self.m}")

    def check(self, a: Sequence[int]) -> Multidegree:
        if len(a) != self.nvars:
            raise DimensionError(f"multidegree {tuple(a)} has length {len(a)}, expected {self.nvars}")
        return tuple(int(x) for x in a)


@dataclass(frozen=True, order=False)
class Bidegree:
    u: int
    v: int

    def __add__(self, other: Bidegree) -> Bidegree:
        return Bidegree(self.u + other.u, self.v + other.v)

    def __sub__(self, other: Bidegree) -> Bidegree:
        return Bidegree(self.u - other.u, self.v - other.v)

    def __neg__(self) -> Bidegree:
        return Bidegree(-self.u, -self.v)

    def __le__(self, other: Bidegree) -> bool:
        # componentwise partial order
        return self.u <= other.u and self.v <= other.v

    def __ge__(self, other: Bidegree) -> bool:
        return other <= self

    def __iter__(self):
        yield self.u
        yield self.v

    def __str__(self) -> str:
        return f"({self.u},{self.v})"


ZERO = Bidegree(0, 0)


def total_bidegree(ring: RingSpec, a: Sequence[int]) -> Bidegree:
    a = ring.check(a)
    return Bidegree(sum(a[: ring.n]), sum(a[ring.n :]))


def neg_support(a: Iterable[int]) -> frozenset:
    """Indices (0-based) of the negative entries of ``a``."""
    return frozenset(j for j, x in enumerate(a) if x < 0)


# --------------------------------------------------------------------------
# exact linear algebra

Matrix = list[list]


def _as_fractions(M: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in M]


def rank(M: Sequence[Sequence]) -> int:
    """Rank over Q by Gaussian elimination with exact fractions."""
    A = _as_fractions(M)
    if not A or not A[0]:
        return 0
    nrows, ncols = len(A), len(A[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        p = A[r][c]
        for i in range(r + 1, nrows):
            if A[i][c] != 0:
                f = A[i][c] / p
                row_r, row_i = A[r], A[i]
                for k in range(c, ncols):
                    row_i[k] -= f * row_r[k]
        r += 1
        if r == nrows:
            break
    return r


def rank_bareiss(M: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) rank of an integer matrix.

    Eliminates column-major on the transpose so the pivot order differs
    from :func:`rank`; used as the independent route by the Čech oracle.
    """
    if not M or not M[0]:
        return 0
    A = [list(col) for col in zip(*M)]
    for row in A:
        for x in row:
            if Fraction(x).denominator != 1:
                raise ValueError("rank_bareiss expects an integer matrix")
    A = [[int(x) for x in row] for row in A]
    nrows, ncols = len(A), len(A[0])
    r, prev = 0, 1
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        p = A[r][c]
        for i in range(r + 1, nrows):
            for k in range(c + 1, ncols):
                A[i][k] = (p * A[i][k] - A[i][c] * A[r][k]) // prev
            A[i][c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def nullity(M: Sequence[Sequence]) -> int:
    cols = len(M[0]) if M else 0
    return cols - rank(M)


def zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A or not B:
        return []
    inner = len(B)
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(len(B[0]))] for i in range(len(A))]
