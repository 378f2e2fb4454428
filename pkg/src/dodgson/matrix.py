"""Dense exact matrices, minors and two independent determinant oracles.

Indices in the public API are 1-based, matching the ``a_{i,j}`` notation the
identities are written in.  Storage is a tuple of row tuples of raw domain
values (see :mod:`dodgson.scalar`).
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .scalar import INTEGERS, InexactDivisionError, RingDomain, Scalar

__all__ = [
    "Matrix",
    "MinorSpec",
    "ShapeError",
    "OracleBoundError",
    "minor",
    "det_cofactor",
    "det_bareiss",
    "build_A_k",
    "build_B_l",
    "random_matrix",
    "COFACTOR_BOUND",
]

COFACTOR_BOUND = 10


class ShapeError(ValueError):
    """Matrix shape or index does not satisfy an operation's precondition."""


class OracleBoundError(ValueError):
    """Cofactor expansion requested above its size bound."""


@dataclass(frozen=True, eq=True)
class Matrix:
    """Immutable ``rows x cols`` matrix over a single :class:`RingDomain`.

    Build one with :meth:`Matrix.from_rows`; ``A[i, j]`` returns the boxed
    entry at 1-based position ``(i, j)``.
    """

    data: tuple
    domain: RingDomain = INTEGERS

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], domain: RingDomain = INTEGERS) -> "Matrix":
        data = tuple(tuple(domain.convert(x) for x in row) for row in rows)
        if data and len({len(r) for r in data}) != 1:
            raise ShapeError("ragged rows")
        return cls(data, domain)

    @classmethod
    def identity(cls, n: int, domain: RingDomain = INTEGERS) -> "Matrix":
        one, zero = domain.one, domain.zero
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), domain)

    @classmethod
    def filled(cls, n: int, m: int, value, domain: RingDomain = INTEGERS) -> "Matrix":
        v = domain.convert(value)
        return cls(tuple((v,) * m for _ in range(n)), domain)

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"({i}, {j}) outside {self.rows}x{self.cols}")
        return Scalar(self.data[i - 1][j - 1], self.domain)

    def row(self, i: int) -> tuple:
        return self.data[i - 1]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    def with_rows_swapped(self, r: int, s: int) -> "Matrix":
        rows = list(self.data)
        rows[r - 1], rows[s - 1] = rows[s - 1], rows[r - 1]
        return Matrix(tuple(rows), self.domain)

    def with_row(self, i: int, values: Sequence) -> "Matrix":
        rows = list(self.data)
        rows[i - 1] = tuple(values)
        return Matrix(tuple(rows), self.domain)

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.data)), self.domain)

    def permuted(self, order: Sequence[int]) -> "Matrix":
        """Apply the same 1-based permutation to rows and columns.

        Row ``t`` of the result is row ``order[t-1]`` of ``self`` (likewise
        for columns), so the determinant is unchanged.
        """
        idx = [o - 1 for o in order]
        return Matrix(tuple(tuple(self.data[i][j] for j in idx) for i in idx), self.domain)

    def minor(self, rows: Iterable[int] = (), cols: Iterable[int] = ()) -> "Matrix":
        return minor(self, MinorSpec(tuple(rows), tuple(cols)))

    def det(self) -> Scalar:
        return det_bareiss(self)

    def digest(self) -> str:
        h = hashlib.sha256(str(self.domain).encode())
        for row in self.data:
            h.update(b"\n")
            h.update(" ".join(str(x) for x in row).encode())
        return h.hexdigest()[:16]

    def __str__(self) -> str:
        fmt = self.domain.format
        return "\n".join(" ".join(fmt(x) for x in row) for row in self.data)


@dataclass(frozen=True)
class MinorSpec:
    """Rows and columns to delete, 1-based; stored sorted."""

    removed_rows: tuple = ()
    removed_cols: tuple = ()

    def __post_init__(self):
        for name in ("removed_rows", "removed_cols"):
            idx = tuple(getattr(self, name))
            if len(set(idx)) != len(idx):
                raise ShapeError(f"duplicate index in {name}: {idx}")
            object.__setattr__(self, name, tuple(sorted(idx)))

    def check(self, rows: int, cols: int) -> None:
        for i in self.removed_rows:
            if not 1 <= i <= rows:
                raise ShapeError(f"row {i} outside 1..{rows}")
        for j in self.removed_cols:
            if not 1 <= j <= cols:
                raise ShapeError(f"column {j} outside 1..{cols}")


def minor(A: Matrix, spec: MinorSpec) -> Matrix:
    """Delete the rows and columns listed in ``spec``, keeping the order of the rest."""
    spec.check(A.rows, A.cols)
    drop_r = {i - 1 for i in spec.removed_rows}
    keep_c = [j for j in range(A.cols) if j + 1 not in spec.removed_cols]
    data = tuple(tuple(row[j] for j in keep_c) for i, row in enumerate(A.data) if i not in drop_r)
    return Matrix(data, A.domain)


def _require_square(A: Matrix) -> int:
    if not A.is_square:
        raise ShapeError(f"determinant of a non-square {A.rows}x{A.cols} matrix")
    return A.rows


def det_cofactor(A: Matrix, bound: int = COFACTOR_BOUND) -> Scalar:
    """Laplace expansion along the first row, recursively.

    Sub-determinants are keyed by the set of surviving columns, so an n x n
    expansion costs about ``n * 2**n`` products instead of ``n!``.
    """
    n = _require_square(A)
    if n > bound:
        raise OracleBoundError(f"cofactor oracle limited to n <= {bound}, got {n}")
    dom, data = A.domain, A.data
    if n == 0:
        return Scalar(dom.one, dom)

    @lru_cache(maxsize=None)
    def expand(cols: tuple) -> object:
        # cols: surviving column indices; the row being expanded is n - len(cols)
        if len(cols) == 1:
            return data[n - 1][cols[0]]
        r = n - len(cols)
        total = dom.zero
        for pos, c in enumerate(cols):
            a = data[r][c]
            if dom.is_zero(a):
                continue
            term = dom.mul(a, expand(cols[:pos] + cols[pos + 1:]))
            total = dom.sub(total, term) if pos % 2 else dom.add(total, term)
        return total

    return Scalar(expand(tuple(range(n))), dom)


def det_bareiss(A: Matrix) -> Scalar:
    """Determinant by fraction-free elimination.

    Over the integers every division is exact (checked); rationals go
    through the same recurrence.  Over GF(p) plain elimination with modular
    inverses is used, since fraction-freeness buys nothing in a field.
    """
    n = _require_square(A)
    dom = A.domain
    if n == 0:
        return Scalar(dom.one, dom)
    if dom.kind == "prime_field":
        return Scalar(_det_field_elimination([list(r) for r in A.data], dom.modulus), dom)
    M = [list(r) for r in A.data]
    sign = 1
    prev = 1
    exact = dom.kind == "integers"
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return Scalar(dom.zero, dom)
        pivot = M[k][k]
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            a = ri[k]
            for j in range(k + 1, n):
                num = pivot * ri[j] - a * rk[j]
                if exact:
                    q, rem = divmod(num, prev)
                    if rem:
                        raise InexactDivisionError("Bareiss invariant violated")
                    ri[j] = q
                else:
                    ri[j] = num / prev
            ri[k] = dom.zero
        prev = pivot
    d = M[n - 1][n - 1]
    return Scalar(d if sign > 0 else -d, dom)


def _det_field_elimination(M: list[list[int]], p: int) -> int:
    n = len(M)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        pivot = M[k][k]
        det = det * pivot % p
        inv = pow(pivot, -1, p)
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            f = ri[k] * inv % p
            if f:
                for j in range(k + 1, n):
                    ri[j] = (ri[j] - f * rk[j]) % p
    return det % p


def build_A_k(A: Matrix, k: int) -> Matrix:
    """The (n-2) x (n-2) matrix ``A(k)``.

    Rows n-2 and n-1 and columns n-2, n-1, n are dropped, and column n-k of
    ``A`` (restricted to the surviving rows 1..n-3, n) is appended last.
    """
    n = _require_square(A)
    if n < 4:
        raise ShapeError(f"A(k) needs n >= 4, got {n}")
    if not 0 <= k <= n - 1:
        raise ShapeError(f"k must lie in 0..{n - 1}, got {k}")
    keep_rows = list(range(n - 3)) + [n - 1]
    src = n - k - 1
    data = tuple(tuple(A.data[i][: n - 3]) + (A.data[i][src],) for i in keep_rows)
    return Matrix(data, A.domain)


def build_B_l(A: Matrix, l: int) -> Matrix:
    """``A`` with its last row overwritten by row n-l."""
    n = _require_square(A)
    if n < 2:
        raise ShapeError(f"B(l) needs n >= 2, got {n}")
    if not 0 <= l <= n - 1:
        raise ShapeError(f"l must lie in 0..{n - 1}, got {l}")
    return A.with_row(n, A.row(n - l))


def random_matrix(domain: RingDomain, n: int, entry_bound: int, seed: int, cols: int | None = None) -> Matrix:
    """Deterministic pseudo-random matrix.

    Integers are uniform on ``[-entry_bound, entry_bound]``; rationals have
    numerator in that range and denominator in ``1..entry_bound``; field
    elements are uniform residues (the bound is ignored).
    """
    if n < 1 or entry_bound < 1:
        raise ValueError("n and entry_bound must be positive")
    m = n if cols is None else cols
    rng = random.Random(seed)
    return Matrix(tuple(tuple(_random_entry(domain, entry_bound, rng) for _ in range(m)) for _ in range(n)), domain)


def _random_entry(domain: RingDomain, bound: int, rng: random.Random):
    if domain.kind == "integers":
        return rng.randint(-bound, bound)
    if domain.kind == "rationals":
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return rng.randrange(domain.modulus)
