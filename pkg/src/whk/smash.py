"""Smash products as explicit quotients of the tensor square.

For a validated left module algebra the space A (x) H is divided by the
balance relations (x . z) (x) h - x (x) (z h) over the target counital
subalgebra, where x . z is the induced right action.  The quotient basis
is the canonical pivot complement of the relation space, the product is
induced from

    (x # h)(y # g) = x (h_1 . y) # h_2 g

on representatives, and well-definedness plus associativity are verified
during construction rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .actions import InnerData, ModuleAction, acts_unitally, inner_action_from, validate_module_algebra
from .algebra import FiniteAlgebra, validate_algebra
from .convolution import ConvMap, EFWitness, check_ef_witness
from .errors import InvariantViolation, PreconditionError
from .linalg import Mat, Subspace, Vec, ZERO, invert, is_zero_vec, rank, unit_vec, vec_kron
from .weakhopf import WeakHopfAlgebra, counital_data, is_quantum_commutative

SparseVec = dict[int, Fraction]


def right_ht_action(m: ModuleAction, x: Vec, z: Vec) -> Vec:
    """Right action of the target counital subalgebra on the module algebra.

    Both published expressions, the inverse-antipode twist S^{-1}(z) . x and
    the product x (z . 1), are evaluated and must agree; z is required to be
    a member of the target counital subalgebra.
    """
    hopf = m.hopf
    cd = counital_data(hopf)
    if len(z) != hopf.dim or not cd.h_t.contains(z):
        raise PreconditionError("right action is only defined for target counital elements")
    s_inv = invert(hopf.antipode)
    if s_inv is None:
        raise InvariantViolation("antipode is not invertible")
    twisted = m.apply(s_inv.apply(z), x)
    direct = m.alg.multiply(x, m.apply(z, m.alg.unit))
    if twisted != direct:
        raise InvariantViolation("the two right-action expressions disagree")
    return direct


def _sparse_columns(projection: Mat) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
    return tuple(
        tuple((i, projection.entries[i][j]) for i in range(projection.rows) if projection.entries[i][j])
        for j in range(projection.cols)
    )


@dataclass(frozen=True)
class SmashProduct:
    base_action: ModuleAction
    relation_space: Subspace
    quotient_coords: tuple[int, ...]
    projection: Mat
    algebra: FiniteAlgebra

    @property
    def hopf(self) -> WeakHopfAlgebra:
        return self.base_action.hopf

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def _projection_cols(self) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
        """Sparse columns of the quotient projection A (x) H -> quotient coords."""
        return _sparse_columns(self.projection)

    def project(self, v: Vec) -> Vec:
        out = [ZERO] * self.dim
        cols = self._projection_cols
        for j, x in enumerate(v):
            if x:
                for i, c in cols[j]:
                    out[i] += x * c
        return tuple(out)

    def project_sparse(self, sparse: SparseVec) -> Vec:
        out = [ZERO] * self.dim
        cols = self._projection_cols
        for j, x in sparse.items():
            if x:
                for i, c in cols[j]:
                    out[i] += x * c
        return tuple(out)

    def embed_algebra(self, x: Vec) -> Vec:
        """Class of x (x) 1_H."""
        return self.project(vec_kron(x, self.hopf.unit))

    def embed_hopf(self, h: Vec) -> Vec:
        """Class of 1_A (x) h."""
        return self.project(vec_kron(self.base_action.alg.unit, h))


def _representative_product(
    m: ModuleAction, x_idx: int, h_idx: int, y_idx: int, g_idx: int
) -> SparseVec:
    """(e_x # e_h)(e_y # e_g) expanded in A (x) H coordinates."""
    alg = m.alg
    hopf = m.hopf
    nh = hopf.dim
    out: SparseVec = {}
    for p, q, c in hopf.coalg.delta_terms[h_idx]:
        acted = m.act_basis(p, y_idx)
        left = alg.multiply(unit_vec(alg.dim, x_idx), acted)
        right = hopf.alg.basis_product(q, g_idx)
        for a, va in enumerate(left):
            if va:
                base = a * nh
                coeff = c * va
                for b, vb in enumerate(right):
                    if vb:
                        key = base + b
                        out[key] = out.get(key, ZERO) + coeff * vb
    return out


def _representative_bilinear(m: ModuleAction, xv: Vec, yv: Vec) -> SparseVec:
    """Bilinear extension of the representative product to A (x) H."""
    nh = m.hopf.dim
    out: SparseVec = {}
    for i, vi in enumerate(xv):
        if not vi:
            continue
        xi, hi = divmod(i, nh)
        for j, vj in enumerate(yv):
            if not vj:
                continue
            yj, gj = divmod(j, nh)
            scale = vi * vj
            for key, value in _representative_product(m, xi, hi, yj, gj).items():
                out[key] = out.get(key, ZERO) + scale * value
    return out


def build_smash(m: ModuleAction) -> SmashProduct:
    """Construct the quotient algebra A # H from a validated module algebra."""
    if not validate_module_algebra(m).ok or not acts_unitally(m):
        raise PreconditionError("smash products require a validated module algebra")
    hopf = m.hopf
    alg = m.alg
    na, nh = alg.dim, hopf.dim
    cd = counital_data(hopf)

    generators = []
    for x in range(na):
        ex = unit_vec(na, x)
        for z in cd.h_t.basis:
            xz = right_ht_action(m, ex, z)
            for h in range(nh):
                eh = unit_vec(nh, h)
                left = vec_kron(xz, eh)
                right = vec_kron(ex, hopf.multiply(z, eh))
                gen = tuple(l - r for l, r in zip(left, right))
                if not is_zero_vec(gen):
                    generators.append(gen)
    relation_space = Subspace.spanned_by(na * nh, generators)
    quotient_coords = relation_space.complement_coords()
    dim = len(quotient_coords)
    if dim == 0:
        raise InvariantViolation("relations collapsed the whole tensor space")
    projection = relation_space.quotient_map()
    proj_cols = _sparse_columns(projection)

    def project_sparse(sparse: SparseVec) -> Vec:
        out = [ZERO] * dim
        for j, x in sparse.items():
            if x:
                for i, c in proj_cols[j]:
                    out[i] += x * c
        return tuple(out)

    mult = []
    for c1 in quotient_coords:
        x1, h1 = divmod(c1, nh)
        rows = []
        for c2 in quotient_coords:
            x2, h2 = divmod(c2, nh)
            rows.append(project_sparse(_representative_product(m, x1, h1, x2, h2)))
        mult.append(tuple(rows))
    unit_sparse = {i: x for i, x in enumerate(vec_kron(alg.unit, hopf.unit)) if x}
    unit = project_sparse(unit_sparse)
    algebra = FiniteAlgebra(dim, tuple(mult), unit)

    smash = SmashProduct(m, relation_space, quotient_coords, projection, algebra)

    # well-definedness: the representative product must kill the relations
    basis_tensors = [unit_vec(na * nh, c) for c in range(na * nh)]
    for r in relation_space.basis:
        for b in basis_tensors:
            if not is_zero_vec(smash.project_sparse(_representative_bilinear(m, r, b))):
                raise InvariantViolation("induced product is not well defined (left factor)")
            if not is_zero_vec(smash.project_sparse(_representative_bilinear(m, b, r))):
                raise InvariantViolation("induced product is not well defined (right factor)")
    if not validate_algebra(algebra).ok:
        raise InvariantViolation("induced product is not an associative unital algebra")
    return smash


def embeddings_check(s: SmashProduct) -> bool:
    """Injectivity and multiplicativity of both canonical embeddings, and
    compatibility of the conjugation candidate with the algebra leg."""
    m = s.base_action
    alg, hopf = m.alg, s.hopf
    na, nh = alg.dim, hopf.dim
    a_cols = [s.embed_algebra(unit_vec(na, x)) for x in range(na)]
    h_cols = [s.embed_hopf(unit_vec(nh, h)) for h in range(nh)]
    if rank(Mat.from_columns(a_cols, s.dim)) != na:
        return False
    if rank(Mat.from_columns(h_cols, s.dim)) != nh:
        return False
    for x in range(na):
        for y in range(na):
            prod = s.algebra.multiply(a_cols[x], a_cols[y])
            if prod != s.embed_algebra(alg.basis_product(x, y)):
                return False
    for g in range(nh):
        for h in range(nh):
            prod = s.algebra.multiply(h_cols[g], h_cols[h])
            if prod != s.embed_hopf(hopf.alg.basis_product(g, h)):
                return False
    candidate = smash_inner_candidate(s)
    for h in range(nh):
        for x in range(na):
            lhs = candidate.apply(unit_vec(nh, h), a_cols[x])
            if lhs != s.embed_algebra(m.act_basis(h, x)):
                return False
    return True


def smash_action_maps(s: SmashProduct) -> EFWitness:
    """The four structure maps from H into A # H, verified as a witness."""
    m = s.base_action
    hopf = s.hopf
    cd = counital_data(hopf)
    na, nh = m.alg.dim, hopf.dim
    e_cols = []
    f_cols = []
    u_cols = []
    v_cols = []
    for h in range(nh):
        eh = unit_vec(nh, h)
        e_cols.append(s.project(vec_kron(m.apply(eh, m.alg.unit), hopf.unit)))
        f_cols.append(s.project(vec_kron(m.alg.unit, cd.eps_s.col(h))))
        u_cols.append(s.embed_hopf(eh))
        v_cols.append(s.embed_hopf(hopf.antipode_col(h)))
    coalg = hopf.coalg
    target = s.algebra
    witness = EFWitness(
        ConvMap(coalg, target, Mat.from_columns(u_cols, s.dim)),
        ConvMap(coalg, target, Mat.from_columns(v_cols, s.dim)),
        ConvMap(coalg, target, Mat.from_columns(e_cols, s.dim)),
        ConvMap(coalg, target, Mat.from_columns(f_cols, s.dim)),
    )
    report = check_ef_witness(witness)
    if not report.ok:
        raise InvariantViolation(
            "smash structure maps fail the witness identities: "
            + ", ".join(report.failed_names())
        )
    return witness


def smash_inner_candidate(s: SmashProduct) -> ModuleAction:
    """Conjugation candidate h . w = u(h_1) w v(h_2) on the smash product."""
    return inner_action_from(InnerData(s.hopf, smash_action_maps(s)))


@dataclass(frozen=True)
class SmashBattery:
    """The five equivalent conditions, each evaluated on its own."""

    module_algebra: bool            # conjugation candidate is a module algebra
    unit_conjugation: bool          # 1 # 1_1 g S(1_2) = 1 # g
    counital_commutation: bool      # 1 # h_1 g eps_s(h_2) = 1 # h g
    source_image_central: bool      # 1 # H_s central in A # H
    quantum_commutative: bool       # the weak Hopf algebra itself

    def booleans(self) -> tuple[bool, bool, bool, bool, bool]:
        return (
            self.module_algebra,
            self.unit_conjugation,
            self.counital_commutation,
            self.source_image_central,
            self.quantum_commutative,
        )

    def all_equal(self) -> bool:
        b = self.booleans()
        return all(x == b[0] for x in b)

    def to_dict(self) -> dict:
        return {
            "module_algebra": self.module_algebra,
            "unit_conjugation": self.unit_conjugation,
            "counital_commutation": self.counital_commutation,
            "source_image_central": self.source_image_central,
            "quantum_commutative": self.quantum_commutative,
            "all_equal": self.all_equal(),
        }


def smash_inner_battery(s: SmashProduct) -> SmashBattery:
    """Evaluate the five-way equivalence for conjugation on A # H."""
    m = s.base_action
    hopf = s.hopf
    nh = hopf.dim
    cd = counital_data(hopf)
    candidate = smash_inner_candidate(s)

    module_algebra = validate_module_algebra(candidate).ok and acts_unitally(candidate)

    unit_conjugation = True
    for g in range(nh):
        acc = [ZERO] * nh
        for j, k, c in hopf.unit_delta_terms:
            value = hopf.multiply(
                hopf.multiply(unit_vec(nh, j), unit_vec(nh, g)), hopf.antipode_col(k)
            )
            for t, vt in enumerate(value):
                if vt:
                    acc[t] += c * vt
        if s.embed_hopf(tuple(acc)) != s.embed_hopf(unit_vec(nh, g)):
            unit_conjugation = False
            break

    counital_commutation = True
    for h in range(nh):
        for g in range(nh):
            acc = [ZERO] * nh
            for p, q, c in hopf.coalg.delta_terms[h]:
                value = hopf.multiply(
                    hopf.alg.basis_product(p, g), cd.eps_s.col(q)
                )
                for t, vt in enumerate(value):
                    if vt:
                        acc[t] += c * vt
            if s.embed_hopf(tuple(acc)) != s.embed_hopf(hopf.alg.basis_product(h, g)):
                counital_commutation = False
                break
        if not counital_commutation:
            break

    source_image_central = True
    for b in cd.h_s.basis:
        image = s.embed_hopf(b)
        for w in range(s.dim):
            ew = unit_vec(s.dim, w)
            if s.algebra.multiply(image, ew) != s.algebra.multiply(ew, image):
                source_image_central = False
                break
        if not source_image_central:
            break

    qc_pair = is_quantum_commutative(hopf)
    if qc_pair[0] != qc_pair[1]:
        raise InvariantViolation("quantum commutativity criteria disagree")

    return SmashBattery(
        module_algebra=module_algebra,
        unit_conjugation=unit_conjugation,
        counital_commutation=counital_commutation,
        source_image_central=source_image_central,
        quantum_commutative=qc_pair[0],
    )
