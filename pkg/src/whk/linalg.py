"""Exact rational linear algebra substrate.

Everything downstream runs on top of this module: dense matrices and
vectors over arbitrary-precision rationals, reduced row echelon form,
kernels, affine solves, Kronecker products and canonical subspaces.

Conventions fixed library-wide:
  * scalars are `fractions.Fraction` (canonical reduced form, positive
    denominator come for free);
  * vectors are plain tuples of Fraction;
  * Kronecker index convention: basis vector i of the left factor tensor
    basis vector j of the right factor sits at index i * dim_right + j;
  * a subspace is always stored by its RREF basis, so subspace equality
    is literal entry comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionError, ShapeError

Scalar = Fraction
Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(value: int | Fraction) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"exact scalar expected, got {type(value).__name__}")


def vec(entries: Iterable[int | Fraction]) -> Vec:
    return tuple(as_scalar(e) for e in entries)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(a: Vec, b: Vec) -> Vec:
    if len(a) != len(b):
        raise DimensionError(f"vector lengths differ: {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    if len(a) != len(b):
        raise DimensionError(f"vector lengths differ: {len(a)} vs {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: int | Fraction, a: Vec) -> Vec:
    c = as_scalar(c)
    return tuple(c * x for x in a)


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


def vec_kron(a: Vec, b: Vec) -> Vec:
    out = [ZERO] * (len(a) * len(b))
    nb = len(b)
    for i, x in enumerate(a):
        if x:
            base = i * nb
            for j, y in enumerate(b):
                if y:
                    out[base + j] = x * y
    return tuple(out)


@dataclass(frozen=True)
class Mat:
    rows: int
    cols: int
    entries: tuple[Vec, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative matrix dimensions")
        if len(self.entries) != self.rows:
            raise ShapeError(f"expected {self.rows} rows, got {len(self.entries)}")
        for row in self.entries:
            if len(row) != self.cols:
                raise ShapeError(f"expected row length {self.cols}, got {len(row)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | Fraction]], cols: int | None = None) -> "Mat":
        data = tuple(vec(r) for r in rows)
        if cols is None:
            if not data:
                raise ShapeError("cannot infer column count of an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Vec], rows: int | None = None) -> "Mat":
        if not columns:
            if rows is None:
                raise ShapeError("cannot infer row count of an empty matrix")
            return cls.zero(rows, 0)
        n = len(columns[0])
        return cls(n, len(columns), tuple(tuple(col[i] for col in columns) for i in range(n)))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, tuple(unit_vec(n, i) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols, tuple(zero_vec(cols) for _ in range(rows)))

    def row(self, i: int) -> Vec:
        return self.entries[i]

    def col(self, j: int) -> Vec:
        return tuple(row[j] for row in self.entries)

    def apply(self, v: Vec) -> Vec:
        if len(v) != self.cols:
            raise DimensionError(f"matrix has {self.cols} columns, vector has {len(v)}")
        out = [ZERO] * self.rows
        for j, x in enumerate(v):
            if x:
                for i, row in enumerate(self.entries):
                    if row[j]:
                        out[i] += row[j] * x
        return tuple(out)

    def mul(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = [[ZERO] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row = self.entries[i]
            acc = out[i]
            for k in range(self.cols):
                x = row[k]
                if x:
                    other_row = other.entries[k]
                    for j in range(other.cols):
                        if other_row[j]:
                            acc[j] += x * other_row[j]
        return Mat(self.rows, other.cols, tuple(tuple(r) for r in out))

    def __matmul__(self, other: "Mat") -> "Mat":
        return self.mul(other)

    def add(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("matrix shapes differ")
        return Mat(self.rows, self.cols, tuple(vec_add(a, b) for a, b in zip(self.entries, other.entries)))

    def sub(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("matrix shapes differ")
        return Mat(self.rows, self.cols, tuple(vec_sub(a, b) for a, b in zip(self.entries, other.entries)))

    def scale(self, c: int | Fraction) -> "Mat":
        return Mat(self.rows, self.cols, tuple(vec_scale(c, r) for r in self.entries))

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows, tuple(self.col(j) for j in range(self.cols)))

    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self.entries)

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise DimensionError("column counts differ")
        return Mat(self.rows + other.rows, self.cols, self.entries + other.entries)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionError("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), ZERO)


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column list; row space preserved."""
    rows = [list(r) for r in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, m.rows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][c]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                src = rows[r]
                dst = rows[i]
                for j in range(c, m.cols):
                    if src[j]:
                        dst[j] -= factor * src[j]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return Mat(m.rows, m.cols, tuple(tuple(row) for row in rows)), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


@dataclass(frozen=True)
class Subspace:
    """Subspace of the coordinate space, stored by its canonical RREF basis."""

    ambient_dim: int
    basis: tuple[Vec, ...]

    def __post_init__(self) -> None:
        for b in self.basis:
            if len(b) != self.ambient_dim:
                raise DimensionError("basis vector length differs from ambient dimension")

    @classmethod
    def spanned_by(cls, ambient_dim: int, vectors: Sequence[Vec]) -> "Subspace":
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionError("spanning vector length differs from ambient dimension")
        distinct = []
        seen = set()
        for v in vectors:
            if v not in seen and not is_zero_vec(v):
                seen.add(v)
                distinct.append(v)
        if not distinct:
            return cls(ambient_dim, ())
        reduced, pivots = rref(Mat.from_rows(distinct, ambient_dim))
        return cls(ambient_dim, reduced.entries[: len(pivots)])

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(unit_vec(ambient_dim, i) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        out = []
        for row in self.basis:
            for j, x in enumerate(row):
                if x:
                    out.append(j)
                    break
        return tuple(out)

    def complement_coords(self) -> tuple[int, ...]:
        """Coordinates not pivotal for this subspace, in increasing order."""
        piv = set(self.pivots)
        return tuple(j for j in range(self.ambient_dim) if j not in piv)

    def reduce(self, v: Vec) -> Vec:
        """Canonical representative of v modulo this subspace (zero on pivots)."""
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length differs from ambient dimension")
        out = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = out[p]
            if c:
                for j, x in enumerate(row):
                    if x:
                        out[j] -= c * x
        return tuple(out)

    def contains(self, v: Vec) -> bool:
        return is_zero_vec(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionError("ambient dimensions differ")
        return all(self.contains(b) for b in other.basis)

    def coordinates(self, v: Vec) -> Vec:
        """Coefficients of v in the RREF basis; v must be a member."""
        if not self.contains(v):
            raise DimensionError("vector is not a member of the subspace")
        return tuple(v[p] for p in self.pivots)

    def sum(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionError("ambient dimensions differ")
        return Subspace.spanned_by(self.ambient_dim, self.basis + other.basis)

    def annihilator(self) -> "Subspace":
        """Functionals vanishing on the subspace, in dual-basis coordinates."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return kernel(Mat.from_rows(self.basis, self.ambient_dim))

    def intersect(self, other: "Subspace") -> "Subspace":
        return self.annihilator().sum(other.annihilator()).annihilator()

    def quotient_map(self) -> Mat:
        """Matrix of v -> complement coordinates of reduce(v).

        Its kernel is exactly this subspace, so it doubles as a membership
        test and as the projection used for quotient constructions.
        """
        comp = self.complement_coords()
        cols = [self.reduce(unit_vec(self.ambient_dim, j)) for j in range(self.ambient_dim)]
        return Mat(
            len(comp),
            self.ambient_dim,
            tuple(tuple(cols[j][c] for j in range(self.ambient_dim)) for c in comp),
        )


def kernel(m: Mat) -> Subspace:
    """Null space of m as a canonical Subspace of the column coordinate space."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced.entries[r][f]
        basis.append(tuple(v))
    return Subspace.spanned_by(m.cols, basis)


def solve_affine(a: Mat, b: Vec) -> tuple[Vec | None, Subspace]:
    """Particular solution of a*x = b (free variables zero) plus the full
    solution space of a*x = 0; the particular part is None when inconsistent."""
    if len(b) != a.rows:
        raise DimensionError("right-hand side length differs from row count")
    augmented = Mat(a.rows, a.cols + 1, tuple(row + (bi,) for row, bi in zip(a.entries, b)))
    reduced, pivots = rref(augmented)
    if a.cols in pivots:
        return None, kernel(a)
    particular = [ZERO] * a.cols
    for r, p in enumerate(pivots):
        particular[p] = reduced.entries[r][a.cols]
    return tuple(particular), kernel(a)


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product with the library-wide index convention."""
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    out = [[ZERO] * cols for _ in range(rows)]
    for i in range(a.rows):
        arow = a.entries[i]
        for j in range(a.cols):
            x = arow[j]
            if x:
                for p in range(b.rows):
                    brow = b.entries[p]
                    dst = out[i * b.rows + p]
                    base = j * b.cols
                    for q in range(b.cols):
                        if brow[q]:
                            dst[base + q] = x * brow[q]
    return Mat(rows, cols, tuple(tuple(r) for r in out))


def invert(m: Mat) -> Mat | None:
    """Inverse of a square matrix, or None when singular."""
    if m.rows != m.cols:
        raise DimensionError("only square matrices can be inverted")
    n = m.rows
    augmented = Mat(n, 2 * n, tuple(m.entries[i] + unit_vec(n, i) for i in range(n)))
    reduced, pivots = rref(augmented)
    if tuple(range(n)) != pivots[:n] or len(pivots) != n:
        return None
    return Mat(n, n, tuple(row[n:] for row in reduced.entries))
