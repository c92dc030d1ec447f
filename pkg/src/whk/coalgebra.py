"""Finite-dimensional coalgebras by structure constants.

Comultiplication is the tensor d[i][j][k]: Delta(e_i) = sum d[i][j][k] e_j (x) e_k,
with the counit stored as a covector.  The coradical filtration is computed
twice, by genuinely different routes:

  * the preimage chain C_n = Delta^{-1}(C (x) C_{n-1} + C_0 (x) C), iterated
    until it stabilises, with C_0 obtained from the dual algebra's radical;
  * the dual chain C_n = annihilator(J^{n+1}) for J the dual radical,

and `filtration_crosscheck` compares them layer by layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .algebra import FiniteAlgebra, Tensor3, jacobson_radical, subspace_power, tensor3
from .errors import InvariantViolation, PreconditionError, ShapeError
from .linalg import Mat, Subspace, Vec, ZERO, kernel, unit_vec, vec, vec_kron
from .report import Report, ReportBuilder


@dataclass(frozen=True)
class FiniteCoalgebra:
    dim: int
    comult: Tensor3
    counit: Vec

    def __post_init__(self) -> None:
        if self.dim <= 0:
            raise ShapeError("coalgebra dimension must be positive")
        if len(self.comult) != self.dim:
            raise ShapeError("comultiplication tensor has wrong shape")
        for slice_ in self.comult:
            if len(slice_) != self.dim or any(len(r) != self.dim for r in slice_):
                raise ShapeError("comultiplication tensor has wrong shape")
        if len(self.counit) != self.dim:
            raise ShapeError("counit covector has wrong length")

    @classmethod
    def from_lists(cls, dim: int, comult: Sequence, counit: Sequence[int | Fraction]) -> "FiniteCoalgebra":
        return cls(dim, tensor3(comult, dim), vec(counit))

    @cached_property
    def delta_terms(self) -> tuple[tuple[tuple[int, int, Fraction], ...], ...]:
        """Nonzero (left index, right index, coefficient) triples per basis vector."""
        out = []
        for i in range(self.dim):
            terms = []
            for j in range(self.dim):
                row = self.comult[i][j]
                for k in range(self.dim):
                    if row[k]:
                        terms.append((j, k, row[k]))
            out.append(tuple(terms))
        return tuple(out)

    def counit_value(self, x: Vec) -> Fraction:
        return sum((c * xi for c, xi in zip(self.counit, x) if xi), ZERO)

    def delta_vec(self, x: Vec) -> Vec:
        """Delta(x) as a flat vector of length dim^2 (left index major)."""
        out = [ZERO] * (self.dim * self.dim)
        for i, xi in enumerate(x):
            if xi:
                for j, k, c in self.delta_terms[i]:
                    out[j * self.dim + k] += xi * c
        return tuple(out)

    def delta_matrix(self) -> Mat:
        cols = [self.delta_vec(unit_vec(self.dim, i)) for i in range(self.dim)]
        return Mat.from_columns(cols, self.dim * self.dim)


def validate_coalgebra(c: FiniteCoalgebra) -> Report:
    """Coassociativity and both counit laws, per basis vector."""
    rb = ReportBuilder()
    n = c.dim
    ok = True
    for i in range(n):
        left: dict[tuple[int, int, int], Fraction] = {}
        right: dict[tuple[int, int, int], Fraction] = {}
        for j, k, coeff in c.delta_terms[i]:
            for p, q, c2 in c.delta_terms[j]:
                key = (p, q, k)
                left[key] = left.get(key, ZERO) + coeff * c2
            for p, q, c2 in c.delta_terms[k]:
                key = (j, p, q)
                right[key] = right.get(key, ZERO) + coeff * c2
        clean_l = {key: v for key, v in left.items() if v}
        clean_r = {key: v for key, v in right.items() if v}
        if clean_l != clean_r:
            ok = False
            rb.record_failure("coassociativity", (i,), clean_l, clean_r)
    rb.summary("coassociativity", ok)
    ok = True
    for i in range(n):
        lhs = [ZERO] * n
        rhs = [ZERO] * n
        for j, k, coeff in c.delta_terms[i]:
            lhs[k] += coeff * c.counit[j]
            rhs[j] += coeff * c.counit[k]
        target = unit_vec(n, i)
        if tuple(lhs) != target:
            ok = False
            rb.record_failure("counit_law", (i,), tuple(lhs), target)
        if tuple(rhs) != target:
            ok = False
            rb.record_failure("counit_law", (i,), tuple(rhs), target)
    rb.summary("counit_law", ok)
    return rb.build()


def dual_algebra(c: FiniteCoalgebra) -> FiniteAlgebra:
    """Algebra on the dual basis: m[i][j][k] = d[k][i][j], unit = counit."""
    mult = tuple(
        tuple(tuple(c.comult[k][i][j] for k in range(c.dim)) for j in range(c.dim))
        for i in range(c.dim)
    )
    return FiniteAlgebra(c.dim, mult, c.counit)


def coopposite(c: FiniteCoalgebra) -> FiniteCoalgebra:
    comult = tuple(
        tuple(tuple(c.comult[i][k][j] for k in range(c.dim)) for j in range(c.dim))
        for i in range(c.dim)
    )
    return FiniteCoalgebra(c.dim, comult, c.counit)


def coradical(c: FiniteCoalgebra) -> Subspace:
    """Sum of the simple subcoalgebras, as the dual radical's annihilator."""
    return jacobson_radical(dual_algebra(c)).annihilator()


def subcoalgebra_restriction(c: FiniteCoalgebra, s: Subspace) -> FiniteCoalgebra:
    """Coalgebra structure induced on the RREF basis of a subcoalgebra s."""
    if s.ambient_dim != c.dim:
        raise ShapeError("subspace ambient dimension differs from coalgebra dimension")
    if s.dim == 0:
        raise PreconditionError("zero subspace carries no coalgebra structure")
    m = s.dim
    pair_basis = Subspace.spanned_by(
        c.dim * c.dim, [vec_kron(a, b) for a in s.basis for b in s.basis]
    )
    comult = []
    for b in s.basis:
        image = c.delta_vec(b)
        if not pair_basis.contains(image):
            raise PreconditionError("subspace is not a subcoalgebra")
        coords = pair_basis.coordinates(image)
        # pair_basis was built in (row j, row k) order, giving d[b][j][k]
        rows = [[ZERO] * m for _ in range(m)]
        for idx, value in enumerate(coords):
            rows[idx // m][idx % m] = value
        comult.append(tuple(tuple(r) for r in rows))
    counit = tuple(c.counit_value(b) for b in s.basis)
    return FiniteCoalgebra(m, tuple(comult), counit)


@dataclass(frozen=True)
class CoradicalFiltration:
    layers: tuple[Subspace, ...]

    @property
    def length(self) -> int:
        return len(self.layers) - 1

    @property
    def coradical(self) -> Subspace:
        return self.layers[0]


@lru_cache(maxsize=None)
def coradical_filtration(c: FiniteCoalgebra) -> CoradicalFiltration:
    """Increasing chain from the coradical to the whole space.

    Each next layer is the preimage of C (x) C_{n-1} + C_0 (x) C under the
    comultiplication; stabilisation before reaching the full space is
    impossible for a valid coalgebra and raises.
    """
    n = c.dim
    full = Subspace.full(n)
    c0 = coradical(c)
    layers = [c0]
    delta = c.delta_matrix()
    standard = [unit_vec(n, i) for i in range(n)]
    while layers[-1] != full:
        prev = layers[-1]
        window = Subspace.spanned_by(
            n * n,
            [vec_kron(e, b) for e in standard for b in prev.basis]
            + [vec_kron(a, e) for a in c0.basis for e in standard],
        )
        nxt = kernel(window.quotient_map() @ delta)
        if not nxt.contains_subspace(prev):
            raise InvariantViolation("filtration layer failed to contain its predecessor")
        if nxt == prev:
            raise InvariantViolation("filtration stabilised below the full space")
        layers.append(nxt)
    return CoradicalFiltration(tuple(layers))


def dual_radical_filtration(c: FiniteCoalgebra) -> CoradicalFiltration:
    """Independent chain: annihilators of the powers of the dual radical."""
    dual = dual_algebra(c)
    radical = jacobson_radical(dual)
    full = Subspace.full(c.dim)
    layers = []
    power = radical
    while True:
        layers.append(power.annihilator())
        if layers[-1] == full:
            break
        nxt = subspace_power(dual, radical, len(layers) + 1)
        if nxt == power:
            raise InvariantViolation("dual radical power chain stabilised below zero")
        power = nxt
    return CoradicalFiltration(tuple(layers))


def filtration_crosscheck(c: FiniteCoalgebra) -> bool:
    """True iff the preimage chain and the dual-annihilator chain coincide."""
    return coradical_filtration(c).layers == dual_radical_filtration(c).layers
