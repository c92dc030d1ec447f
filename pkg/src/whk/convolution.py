"""The convolution algebra Hom(C, A) and generalized counital inverses.

A linear map C -> A is stored by its matrix (target dim x source dim);
the convolution product pushes a vector through the comultiplication and
multiplies the two legs in the target.  For idempotents e, f the map u is
(e, f)-invertible when some v satisfies

    u * v = e,   v * u = f,   u * f = u,   f * v = v,

and that v is unique when it exists.  Two constructions are provided: a
direct affine solve over the matrix entries, and the coradical series
that lifts an inverse of the restriction to the coradical through the
filtration.  They must agree; the series asserts that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import FiniteAlgebra
from .coalgebra import (
    FiniteCoalgebra,
    coradical_filtration,
    subcoalgebra_restriction,
)
from .errors import DimensionError, InvariantViolation, PreconditionError, ShapeError
from .linalg import (
    Mat,
    Subspace,
    Vec,
    ZERO,
    invert,
    is_zero_vec,
    solve_affine,
    unit_vec,
    zero_vec,
)
from .report import Report, ReportBuilder


@dataclass(frozen=True)
class ConvMap:
    source: FiniteCoalgebra
    target: FiniteAlgebra
    matrix: Mat

    def __post_init__(self) -> None:
        if self.matrix.rows != self.target.dim or self.matrix.cols != self.source.dim:
            raise ShapeError("convolution map matrix has wrong shape")

    def __call__(self, x: Vec) -> Vec:
        return self.matrix.apply(x)

    def col(self, j: int) -> Vec:
        return self.matrix.col(j)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def same_context(self, other: "ConvMap") -> bool:
        return self.source == other.source and self.target == other.target


def _require_context(*maps: ConvMap) -> None:
    first = maps[0]
    for m in maps[1:]:
        if not first.same_context(m):
            raise DimensionError("convolution operands live in different Hom contexts")


def convolve(p: ConvMap, q: ConvMap) -> ConvMap:
    """(p * q)(c) = p(c_1) q(c_2), pushed through the comultiplication tensor."""
    _require_context(p, q)
    src, tgt = p.source, p.target
    cols = []
    for i in range(src.dim):
        acc = [ZERO] * tgt.dim
        for j, k, c in src.delta_terms[i]:
            value = tgt.multiply(p.col(j), q.col(k))
            for t, vt in enumerate(value):
                if vt:
                    acc[t] += c * vt
        cols.append(tuple(acc))
    return ConvMap(src, tgt, Mat.from_columns(cols, tgt.dim))


def conv_unit(c: FiniteCoalgebra, a: FiniteAlgebra) -> ConvMap:
    """Unit of the convolution algebra: x -> counit(x) 1_A."""
    cols = [tuple(c.counit[i] * u for u in a.unit) for i in range(c.dim)]
    return ConvMap(c, a, Mat.from_columns(cols, a.dim))


def conv_power(p: ConvMap, n: int) -> ConvMap:
    """n-fold convolution power of p, n >= 1."""
    if n < 1:
        raise PreconditionError("convolution power requires n >= 1")
    acc = p
    for _ in range(n - 1):
        acc = convolve(acc, p)
    return acc


def is_idempotent(p: ConvMap) -> bool:
    return convolve(p, p) == p


@dataclass(frozen=True)
class EFWitness:
    u: ConvMap
    v: ConvMap
    e: ConvMap
    f: ConvMap

    def __post_init__(self) -> None:
        _require_context(self.u, self.v, self.e, self.f)

    @property
    def source(self) -> FiniteCoalgebra:
        return self.u.source

    @property
    def target(self) -> FiniteAlgebra:
        return self.u.target


def check_ef_witness(w: EFWitness) -> Report:
    """Verify every identity a counital inverse pair must satisfy."""
    rb = ReportBuilder()
    rb.add("e_nonzero", not w.e.is_zero())
    rb.add("f_nonzero", not w.f.is_zero())
    rb.add("e_idempotent", is_idempotent(w.e))
    rb.add("f_idempotent", is_idempotent(w.f))
    rb.add("u_conv_v_equals_e", convolve(w.u, w.v) == w.e)
    rb.add("v_conv_u_equals_f", convolve(w.v, w.u) == w.f)
    rb.add("u_absorbs_f", convolve(w.u, w.f) == w.u)
    rb.add("f_absorbs_v", convolve(w.f, w.v) == w.v)
    # derived identities; failures here with the above passing indicate
    # inconsistent inputs rather than a bad pair
    rb.add("v_absorbs_e", convolve(w.v, w.e) == w.v)
    rb.add("e_absorbs_u", convolve(w.e, w.u) == w.u)
    return rb.build()


def _solver_preconditions(u: ConvMap, e: ConvMap, f: ConvMap) -> None:
    _require_context(u, e, f)
    if e.is_zero() or f.is_zero():
        raise PreconditionError("e and f must be nonzero")
    if not is_idempotent(e) or not is_idempotent(f):
        raise PreconditionError("e and f must be convolution idempotents")
    if convolve(e, u) != u:
        raise PreconditionError("e does not absorb u on the left")
    if convolve(u, f) != u:
        raise PreconditionError("f does not absorb u on the right")


def ef_inverse_solution_space(
    u: ConvMap, e: ConvMap, f: ConvMap
) -> tuple[Vec | None, Subspace]:
    """Affine solution set of {u*v = e, v*u = f, f*v = v} over v's entries.

    Unknowns are the entries of v's matrix flattened as (row, col) ->
    row * source_dim + col.  Exposed separately so uniqueness (a zero
    homogeneous space whenever consistent) can be tested directly.
    """
    src, tgt = u.source, u.target
    n_c, n_a = src.dim, tgt.dim
    unknowns = n_a * n_c
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    left_of_u = [tgt.left_mult_matrix(u.col(j)) for j in range(n_c)]
    right_of_u = [tgt.right_mult_matrix(u.col(j)) for j in range(n_c)]
    left_of_f = [tgt.left_mult_matrix(f.col(j)) for j in range(n_c)]

    for i in range(n_c):
        terms = src.delta_terms[i]
        # u * v = e
        for p in range(n_a):
            row = [ZERO] * unknowns
            for j, k, c in terms:
                lrow = left_of_u[j].entries[p]
                for b in range(n_a):
                    if lrow[b]:
                        row[b * n_c + k] += c * lrow[b]
            rows.append(row)
            rhs.append(e.matrix.entries[p][i])
        # v * u = f
        for p in range(n_a):
            row = [ZERO] * unknowns
            for j, k, c in terms:
                rrow = right_of_u[k].entries[p]
                for b in range(n_a):
                    if rrow[b]:
                        row[b * n_c + j] += c * rrow[b]
            rows.append(row)
            rhs.append(f.matrix.entries[p][i])
        # f * v = v
        for p in range(n_a):
            row = [ZERO] * unknowns
            for j, k, c in terms:
                lrow = left_of_f[j].entries[p]
                for b in range(n_a):
                    if lrow[b]:
                        row[b * n_c + k] += c * lrow[b]
            row[p * n_c + i] -= 1
            rows.append(row)
            rhs.append(ZERO)

    system = Mat(len(rows), unknowns, tuple(tuple(r) for r in rows))
    return solve_affine(system, tuple(rhs))


def _conv_from_flat(u: ConvMap, flat: Vec) -> ConvMap:
    n_c, n_a = u.source.dim, u.target.dim
    entries = tuple(tuple(flat[b * n_c + k] for k in range(n_c)) for b in range(n_a))
    return ConvMap(u.source, u.target, Mat(n_a, n_c, entries))


def ef_inverse_solve(u: ConvMap, e: ConvMap, f: ConvMap) -> ConvMap | None:
    """Direct construction of the (e, f)-inverse of u, or None.

    Imposes exactly the three defining linear conditions; the identity
    v * e = v is verified afterwards rather than imposed, so a solver bug
    cannot hide behind an over-constrained system.
    """
    _solver_preconditions(u, e, f)
    particular, homogeneous = ef_inverse_solution_space(u, e, f)
    if particular is None:
        return None
    if homogeneous.dim != 0:
        raise InvariantViolation("inverse solution space has positive dimension")
    v = _conv_from_flat(u, particular)
    if convolve(v, e) != v:
        raise InvariantViolation("solved inverse fails the derived identity v * e = v")
    return v


def restrict_conv(p: ConvMap, sub: FiniteCoalgebra, basis: Subspace) -> ConvMap:
    """Restriction of p to a subcoalgebra presented by its RREF basis."""
    cols = [p(b) for b in basis.basis]
    return ConvMap(sub, p.target, Mat.from_columns(cols, p.target.dim))


def extend_by_zero(
    psi0: ConvMap, source: FiniteCoalgebra, c0: Subspace, complement: Subspace
) -> ConvMap:
    """Map equal to psi0 on the coradical and zero on the chosen complement."""
    n = source.dim
    columns = list(c0.basis) + list(complement.basis)
    values = [psi0.col(i) for i in range(c0.dim)] + [
        zero_vec(psi0.target.dim) for _ in range(complement.dim)
    ]
    basis_mat = Mat.from_columns(columns, n)
    inv = invert(basis_mat)
    if inv is None:
        raise PreconditionError("coradical and complement do not span the space")
    value_mat = Mat.from_columns(values, psi0.target.dim)
    return ConvMap(source, psi0.target, value_mat @ inv)


def ef_inverse_series(
    u: ConvMap,
    e: ConvMap,
    f: ConvMap,
    psi0: ConvMap,
    complement: Subspace | None = None,
) -> ConvMap:
    """Coradical-series construction of the (e, f)-inverse.

    psi0 must be the (e_0, f_0)-inverse of u restricted to the coradical;
    it is extended by zero on a complement (canonical RREF pivot
    complement unless one is supplied), and the finite geometric series

        Theta = gamma^0 + gamma + ... + gamma^L,   gamma^0 := the idempotent,

    with gamma_e = e - u * Psi and gamma_f = f - Psi * u closes at the
    filtration length L because gamma vanishes on the coradical.  Returns
    Theta_f * Psi * e after asserting it matches the direct solve.
    """
    _solver_preconditions(u, e, f)
    filtration = coradical_filtration(u.source)
    c0 = filtration.coradical
    sub = subcoalgebra_restriction(u.source, c0)
    if psi0.source != sub or psi0.target != u.target:
        raise PreconditionError("psi0 does not live on the coradical of the source")

    u0 = restrict_conv(u, sub, c0)
    e0 = restrict_conv(e, sub, c0)
    f0 = restrict_conv(f, sub, c0)
    witness0 = check_ef_witness(EFWitness(u0, psi0, e0, f0))
    if not witness0.ok:
        raise PreconditionError(
            "psi0 is not the counital inverse of u on the coradical: "
            + ", ".join(witness0.failed_names())
        )

    if complement is None:
        complement = Subspace.spanned_by(
            u.source.dim,
            [unit_vec(u.source.dim, j) for j in c0.complement_coords()],
        )
    else:
        if complement.ambient_dim != u.source.dim:
            raise DimensionError("complement ambient dimension differs from the source")
        if complement.dim + c0.dim != u.source.dim or complement.intersect(c0).dim != 0:
            raise PreconditionError("supplied complement does not complement the coradical")

    psi = extend_by_zero(psi0, u.source, c0, complement)
    gamma_e = ConvMap(u.source, u.target, e.matrix.sub(convolve(u, psi).matrix))
    gamma_f = ConvMap(u.source, u.target, f.matrix.sub(convolve(psi, u).matrix))
    for b in c0.basis:
        if not is_zero_vec(gamma_e(b)) or not is_zero_vec(gamma_f(b)):
            raise InvariantViolation("series increments do not vanish on the coradical")

    length = filtration.length
    theta_f = f
    power = f
    for _ in range(length):
        power = convolve(power, gamma_f)
        theta_f = ConvMap(u.source, u.target, theta_f.matrix.add(power.matrix))

    result = convolve(convolve(theta_f, psi), e)

    direct = ef_inverse_solve(u, e, f)
    if direct is None or direct != result:
        raise InvariantViolation("series inverse disagrees with the direct solve")
    return result


def ef_inverse_via_series(u: ConvMap, e: ConvMap, f: ConvMap) -> ConvMap | None:
    """Series construction with the coradical-level inverse found by a
    direct solve on the restricted context; None when no inverse exists
    there (and hence none exists at all)."""
    _solver_preconditions(u, e, f)
    c0 = coradical_filtration(u.source).coradical
    sub = subcoalgebra_restriction(u.source, c0)
    u0 = restrict_conv(u, sub, c0)
    e0 = restrict_conv(e, sub, c0)
    f0 = restrict_conv(f, sub, c0)
    psi0 = ef_inverse_solve(u0, e0, f0)
    if psi0 is None:
        return None
    return ef_inverse_series(u, e, f, psi0)


def normalized_pseudo_inverse_check(u: ConvMap, v: ConvMap) -> bool:
    """True iff u * v * u = u and v * u * v = v."""
    _require_context(u, v)
    return convolve(convolve(u, v), u) == u and convolve(convolve(v, u), v) == v


def drazin_index_one_check(u: ConvMap, v: ConvMap, e: ConvMap) -> bool:
    """Commuting pseudo-inverse conditions for the two-sided (e, e) case."""
    witness = check_ef_witness(EFWitness(u, v, e, e))
    if not witness.ok:
        raise PreconditionError(
            "(u, v, e, e) is not a verified witness: " + ", ".join(witness.failed_names())
        )
    uv = convolve(u, v)
    vu = convolve(v, u)
    return (
        uv == vu
        and convolve(convolve(u, u), v) == u
        and convolve(convolve(v, v), u) == v
    )
