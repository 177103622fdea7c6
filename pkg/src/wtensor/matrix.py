"""Immutable matrices over Z[lam] with Kronecker products.

Entries are ints or RingPoly; both mix freely.  Vectors are column matrices.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DomainError, ParseError
from .exactmath import RingPoly, as_poly, format_poly


class Matrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise DomainError("empty matrix needs an explicit column count")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DomainError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, r: int, c: int) -> "Matrix":
        return cls([[0] * c for _ in range(r)], ncols=c)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def column(cls, values: Sequence) -> "Matrix":
        return cls([[v] for v in values], ncols=1)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self) -> list:
        return [x for r in self.rows for x in r]

    def col(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows), ncols=self.nrows) if self.nrows else Matrix.zeros(self.ncols, 0)

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other)
        return Matrix(
            ([a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)), ncols=self.ncols
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other)
        return Matrix(
            ([a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)), ncols=self.ncols
        )

    def __neg__(self):
        return Matrix(([-a for a in r] for r in self.rows), ncols=self.ncols)

    def __mul__(self, c):
        # scalar multiplication only; use @ for composition
        if isinstance(c, Matrix) or not isinstance(c, (int, RingPoly)):
            return NotImplemented
        return Matrix(([c * a for a in r] for r in self.rows), ncols=self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DomainError(f"cannot compose {self.shape} with {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, ncols=other.ncols)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; row index (i, k) flattens to i * other.nrows + k."""
        out = []
        for r in self.rows:
            for s in other.rows:
                out.append([a * b for a in r for b in s])
        return Matrix(out, ncols=self.ncols * other.ncols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    def __hash__(self):
        return hash((self.shape, tuple(RingPoly(0) + x for x in self.entries())))

    def __repr__(self):
        return f"Matrix({[[format_poly(x) for x in r] for r in self.rows]})"

    def to_json(self) -> list:
        """Row-major nested lists of polynomial strings."""
        return [[format_poly(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data, ncols: int | None = None) -> "Matrix":
        if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
            raise ParseError("matrix literal must be a list of rows")
        try:
            return cls(([as_poly(x) for x in r] for r in data), ncols=ncols)
        except DomainError as exc:
            raise ParseError(str(exc)) from exc


def kron_all(ms: Sequence[Matrix]) -> Matrix:
    out = ms[0]
    for m in ms[1:]:
        out = out.kron(m)
    return out
