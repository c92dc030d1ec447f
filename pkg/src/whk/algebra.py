"""Finite-dimensional associative unital algebras given by structure constants.

An algebra is a rank-3 tensor m[i][j][k] (e_i * e_j = sum_k m[i][j][k] e_k)
together with the coordinates of the unit.  All checks run over every
basis tuple in exact arithmetic; nothing is sampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import InvariantViolation, PreconditionError, ShapeError
from .linalg import Mat, Subspace, Vec, ZERO, kernel, unit_vec, vec
from .report import Report, ReportBuilder

Tensor3 = tuple[tuple[Vec, ...], ...]


def tensor3(data: Sequence[Sequence[Sequence[int | Fraction]]], dim: int) -> Tensor3:
    if len(data) != dim:
        raise ShapeError(f"tensor has {len(data)} slices, expected {dim}")
    out = []
    for slice_ in data:
        if len(slice_) != dim:
            raise ShapeError("tensor slice has wrong row count")
        rows = []
        for row in slice_:
            if len(row) != dim:
                raise ShapeError("tensor row has wrong length")
            rows.append(vec(row))
        out.append(tuple(rows))
    return tuple(out)


@dataclass(frozen=True)
class FiniteAlgebra:
    dim: int
    mult: Tensor3
    unit: Vec

    def __post_init__(self) -> None:
        if self.dim <= 0:
            raise ShapeError("algebra dimension must be positive")
        if len(self.mult) != self.dim:
            raise ShapeError("multiplication tensor has wrong shape")
        for slice_ in self.mult:
            if len(slice_) != self.dim or any(len(r) != self.dim for r in slice_):
                raise ShapeError("multiplication tensor has wrong shape")
        if len(self.unit) != self.dim:
            raise ShapeError("unit vector has wrong length")

    @classmethod
    def from_lists(cls, dim: int, mult: Sequence, unit: Sequence[int | Fraction]) -> "FiniteAlgebra":
        return cls(dim, tensor3(mult, dim), vec(unit))

    @cached_property
    def mult_terms(self) -> tuple[tuple[tuple[tuple[int, Fraction], ...], ...], ...]:
        """Nonzero entries of each basis product, for sparse evaluation."""
        return tuple(
            tuple(tuple((k, c) for k, c in enumerate(row) if c) for row in slice_)
            for slice_ in self.mult
        )

    def basis_product(self, i: int, j: int) -> Vec:
        return self.mult[i][j]

    def multiply(self, x: Vec, y: Vec) -> Vec:
        if len(x) != self.dim or len(y) != self.dim:
            raise ShapeError("operand length differs from algebra dimension")
        out = [ZERO] * self.dim
        terms = self.mult_terms
        for i, xi in enumerate(x):
            if xi:
                row = terms[i]
                for j, yj in enumerate(y):
                    if yj:
                        coeff = xi * yj
                        for k, c in row[j]:
                            out[k] += coeff * c
        return tuple(out)

    def left_mult_matrix(self, x: Vec) -> Mat:
        cols = [self.multiply(x, unit_vec(self.dim, j)) for j in range(self.dim)]
        return Mat.from_columns(cols, self.dim)

    def right_mult_matrix(self, x: Vec) -> Mat:
        cols = [self.multiply(unit_vec(self.dim, j), x) for j in range(self.dim)]
        return Mat.from_columns(cols, self.dim)

    def power(self, x: Vec, n: int) -> Vec:
        if n < 1:
            raise PreconditionError("power exponent must be at least 1")
        acc = x
        for _ in range(n - 1):
            acc = self.multiply(acc, x)
        return acc


def validate_algebra(a: FiniteAlgebra) -> Report:
    """Check associativity on every basis triple and both unit laws."""
    rb = ReportBuilder()
    ok = True
    for i in range(a.dim):
        for j in range(a.dim):
            ij = a.basis_product(i, j)
            for k in range(a.dim):
                lhs = a.multiply(ij, unit_vec(a.dim, k))
                rhs = a.multiply(unit_vec(a.dim, i), a.basis_product(j, k))
                if lhs != rhs:
                    ok = False
                    rb.record_failure("associativity", (i, j, k), lhs, rhs)
    rb.summary("associativity", ok)
    ok = True
    for i in range(a.dim):
        e = unit_vec(a.dim, i)
        left = a.multiply(a.unit, e)
        right = a.multiply(e, a.unit)
        if left != e:
            ok = False
            rb.record_failure("unit_law", (i,), left, e)
        if right != e:
            ok = False
            rb.record_failure("unit_law", (i,), right, e)
    rb.summary("unit_law", ok)
    return rb.build()


def center(a: FiniteAlgebra) -> Subspace:
    """Solutions of x*e_i - e_i*x = 0 for every basis index i."""
    blocks: list[Mat] = []
    for i in range(a.dim):
        e = unit_vec(a.dim, i)
        blocks.append(a.right_mult_matrix(e).sub(a.left_mult_matrix(e)))
    stacked = blocks[0]
    for b in blocks[1:]:
        stacked = stacked.vstack(b)
    return kernel(stacked)


def centralizes(a: FiniteAlgebra, s: Subspace, t: Subspace) -> bool:
    """True iff every basis vector of s commutes with every basis vector of t."""
    if s.ambient_dim != a.dim or t.ambient_dim != a.dim:
        raise ShapeError("subspace ambient dimension differs from algebra dimension")
    for x in s.basis:
        for y in t.basis:
            if a.multiply(x, y) != a.multiply(y, x):
                return False
    return True


def trace_form_matrix(a: FiniteAlgebra) -> Mat:
    """Gram matrix of (x, y) -> trace(L_x L_y) on the basis."""
    # trace(L_i L_j) = sum_{p,q} m[i][q][p] m[j][p][q]
    entries = []
    for i in range(a.dim):
        row = []
        for j in range(a.dim):
            acc = ZERO
            for q in range(a.dim):
                for p, c in a.mult_terms[i][q]:
                    cjq = a.mult[j][p][q]
                    if cjq:
                        acc += c * cjq
            row.append(acc)
        entries.append(tuple(row))
    return Mat(a.dim, a.dim, tuple(entries))


def jacobson_radical(a: FiniteAlgebra) -> Subspace:
    """Radical via the characteristic-zero trace-form criterion.

    The kernel of the trace form is refined to the largest left ideal it
    contains and then verified two-sided; the refinement loop terminates
    immediately in theory, so a failed verification means corrupt input.
    """
    space = kernel(trace_form_matrix(a))
    left_matrices = [a.left_mult_matrix(unit_vec(a.dim, i)) for i in range(a.dim)]
    while space.dim:
        q = space.quotient_map()
        stacked = q
        for lm in left_matrices:
            stacked = stacked.vstack(q @ lm)
        refined = kernel(stacked)
        if refined == space:
            break
        space = refined
    for i in range(a.dim):
        e = unit_vec(a.dim, i)
        for r in space.basis:
            if not space.contains(a.multiply(e, r)) or not space.contains(a.multiply(r, e)):
                raise InvariantViolation("radical candidate is not a two-sided ideal")
    return space


def subspace_power(a: FiniteAlgebra, s: Subspace, n: int) -> Subspace:
    """Span of all n-fold products of basis vectors of s; n must be positive."""
    if n < 1:
        raise PreconditionError("subspace power requires n >= 1 (use the unit span for n = 0)")
    if s.ambient_dim != a.dim:
        raise ShapeError("subspace ambient dimension differs from algebra dimension")
    current = Subspace.spanned_by(a.dim, s.basis)
    for _ in range(n - 1):
        products = [a.multiply(v, w) for v in s.basis for w in current.basis]
        current = Subspace.spanned_by(a.dim, products)
    return current


def opposite_algebra(a: FiniteAlgebra) -> FiniteAlgebra:
    mult = tuple(tuple(a.mult[j][i] for j in range(a.dim)) for i in range(a.dim))
    return FiniteAlgebra(a.dim, mult, a.unit)


def unital_subalgebra_report(a: FiniteAlgebra, s: Subspace, label: str) -> Report:
    """Check that s contains the unit and is closed under multiplication."""
    rb = ReportBuilder()
    rb.add(f"{label}_contains_unit", s.contains(a.unit))
    closed = True
    for i, x in enumerate(s.basis):
        for j, y in enumerate(s.basis):
            if not s.contains(a.multiply(x, y)):
                closed = False
                rb.record_failure(f"{label}_closed_under_product", (i, j), a.multiply(x, y), "member")
    rb.summary(f"{label}_closed_under_product", closed)
    return rb.build()
