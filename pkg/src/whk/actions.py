"""Left module-algebra actions and inner actions implemented by counital
invertible maps.

An action is a rank-3 tensor a[i][j][k]: e_i . x_j = sum_k a[i][j][k] x_k
for e_i in the weak Hopf algebra and x_j in the target algebra.  The
validator checks the action laws that survive the weak setting
(associativity over products, multiplicativity through the coproduct and
compatibility of unit images); whether the algebra unit acts as the
identity is a separate question, tracked by `acts_unitally`, because for
inner candidates it holds exactly under centrality hypotheses that the
battery below evaluates side by side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import FiniteAlgebra, center
from .convolution import ConvMap, EFWitness, check_ef_witness
from .errors import DimensionError, InvariantViolation, PreconditionError, ShapeError
from .linalg import Subspace, Vec, ZERO, kernel, unit_vec, vec_kron
from .report import Report, ReportBuilder
from .weakhopf import (
    WeakHopfAlgebra,
    antipode_conv,
    counital_data,
    eps_s_conv,
    eps_t_conv,
    identity_conv,
)


@dataclass(frozen=True)
class ModuleAction:
    hopf: WeakHopfAlgebra
    alg: FiniteAlgebra
    act: tuple[tuple[Vec, ...], ...]

    def __post_init__(self) -> None:
        if len(self.act) != self.hopf.dim:
            raise ShapeError("action tensor has wrong outer dimension")
        for slice_ in self.act:
            if len(slice_) != self.alg.dim or any(len(r) != self.alg.dim for r in slice_):
                raise ShapeError("action tensor has wrong shape")

    @classmethod
    def from_lists(cls, hopf: WeakHopfAlgebra, alg: FiniteAlgebra, act: Sequence) -> "ModuleAction":
        tensor = tuple(
            tuple(tuple(Fraction(x) for x in row) for row in slice_) for slice_ in act
        )
        return cls(hopf, alg, tensor)

    def act_basis(self, i: int, j: int) -> Vec:
        return self.act[i][j]

    def apply(self, h: Vec, x: Vec) -> Vec:
        if len(h) != self.hopf.dim or len(x) != self.alg.dim:
            raise DimensionError("operand lengths differ from the action context")
        out = [ZERO] * self.alg.dim
        for i, hi in enumerate(h):
            if hi:
                slice_ = self.act[i]
                for j, xj in enumerate(x):
                    if xj:
                        coeff = hi * xj
                        row = slice_[j]
                        for k, c in enumerate(row):
                            if c:
                                out[k] += coeff * c
        return tuple(out)


def validate_module_algebra(m: ModuleAction) -> Report:
    """Action laws on all basis tuples.

    Checked: (g h) . x = g . (h . x); h . (x y) = (h_1 . x)(h_2 . y);
    h . 1 = eps_t(h) . 1.  Whether 1 . x = x is deliberately not part of
    this report; see `acts_unitally`.
    """
    rb = ReportBuilder()
    hopf, alg = m.hopf, m.alg
    nh, na = hopf.dim, alg.dim

    ok = True
    for g in range(nh):
        for h in range(nh):
            gh = hopf.alg.basis_product(g, h)
            for x in range(na):
                ex = unit_vec(na, x)
                lhs = m.apply(gh, ex)
                rhs = m.apply(unit_vec(nh, g), m.act_basis(h, x))
                if lhs != rhs:
                    ok = False
                    rb.record_failure("action_associativity", (g, h, x), lhs, rhs)
    rb.summary("action_associativity", ok)

    ok = True
    dt = hopf.coalg.delta_terms
    for h in range(nh):
        terms = dt[h]
        for x in range(na):
            for y in range(na):
                lhs = m.apply(unit_vec(nh, h), alg.basis_product(x, y))
                acc = [ZERO] * na
                for p, q, c in terms:
                    value = alg.multiply(m.act_basis(p, x), m.act_basis(q, y))
                    for t, vt in enumerate(value):
                        if vt:
                            acc[t] += c * vt
                if lhs != tuple(acc):
                    ok = False
                    rb.record_failure("action_multiplicative", (h, x, y), lhs, tuple(acc))
    rb.summary("action_multiplicative", ok)

    ok = True
    et = counital_data(hopf).eps_t
    for h in range(nh):
        lhs = m.apply(unit_vec(nh, h), alg.unit)
        rhs = m.apply(et.col(h), alg.unit)
        if lhs != rhs:
            ok = False
            rb.record_failure("action_unit_compatibility", (h,), lhs, rhs)
    rb.summary("action_unit_compatibility", ok)
    return rb.build()


def acts_unitally(m: ModuleAction) -> bool:
    """True iff the unit of the weak Hopf algebra acts as the identity."""
    one = m.hopf.unit
    for x in range(m.alg.dim):
        ex = unit_vec(m.alg.dim, x)
        if m.apply(one, ex) != ex:
            return False
    return True


def is_module(m: ModuleAction) -> bool:
    """Module laws only: associativity plus unital action."""
    hopf = m.hopf
    nh, na = hopf.dim, m.alg.dim
    for g in range(nh):
        for h in range(nh):
            gh = hopf.alg.basis_product(g, h)
            for x in range(na):
                if m.apply(gh, unit_vec(na, x)) != m.apply(
                    unit_vec(nh, g), m.act_basis(h, x)
                ):
                    return False
    return acts_unitally(m)


def is_module_algebra(m: ModuleAction) -> bool:
    """Full notion: validated action laws plus the unit acting as identity."""
    return validate_module_algebra(m).ok and acts_unitally(m)


def ht_module_action(h: WeakHopfAlgebra) -> ModuleAction:
    """The canonical action of H on its target counital subalgebra.

    The target space H_t becomes an algebra on its RREF basis and H acts by
    h . z = eps_t(h z); for ordinary Hopf inputs this degenerates to the
    one-dimensional trivial module.
    """
    cd = counital_data(h)
    space = cd.h_t
    basis = space.basis
    na = space.dim
    mult = tuple(
        tuple(space.coordinates(h.multiply(x, y)) for y in basis) for x in basis
    )
    unit = space.coordinates(h.unit)
    alg = FiniteAlgebra(na, mult, unit)
    act = tuple(
        tuple(space.coordinates(cd.eps_t.apply(h.multiply(unit_vec(h.dim, i), z))) for z in basis)
        for i in range(h.dim)
    )
    return ModuleAction(h, alg, act)


@dataclass(frozen=True)
class InnerData:
    hopf: WeakHopfAlgebra
    witness: EFWitness

    def __post_init__(self) -> None:
        if self.witness.source != self.hopf.coalg:
            raise DimensionError("witness source differs from the weak Hopf coalgebra")


def _require_valid_witness(witness: EFWitness) -> None:
    report = check_ef_witness(witness)
    if not report.ok:
        raise PreconditionError(
            "witness fails the inverse-pair identities: " + ", ".join(report.failed_names())
        )


def adjoint_data(h: WeakHopfAlgebra) -> InnerData:
    """The identity map with the antipode as inverse, in Hom(H, H)."""
    witness = EFWitness(identity_conv(h), antipode_conv(h), eps_t_conv(h), eps_s_conv(h))
    return InnerData(h, witness)


def inner_action_from(data: InnerData) -> ModuleAction:
    """Candidate action h . a = u(h_1) a v(h_2).

    The witness pair must be genuine; the resulting ACTION is returned
    unvalidated, since deciding whether it is a module algebra is exactly
    what the battery below does.
    """
    _require_valid_witness(data.witness)
    hopf = data.hopf
    u, v = data.witness.u, data.witness.v
    target = data.witness.target
    na = target.dim
    act = []
    for i in range(hopf.dim):
        rows = []
        for j in range(na):
            acc = [ZERO] * na
            for p, q, c in hopf.coalg.delta_terms[i]:
                value = target.multiply(
                    target.multiply(u.col(p), unit_vec(na, j)), v.col(q)
                )
                for t, vt in enumerate(value):
                    if vt:
                        acc[t] += c * vt
            rows.append(tuple(acc))
        act.append(tuple(rows))
    return ModuleAction(hopf, target, tuple(act))


def adjoint_action(h: WeakHopfAlgebra) -> ModuleAction:
    """Conjugation candidate h . g = h_1 g S(h_2) on the algebra itself."""
    return inner_action_from(adjoint_data(h))


def unit_image_check(data: InnerData, m: ModuleAction) -> bool:
    """e(h) must equal h . 1; for a genuine module also g . e(h) = e(g h)."""
    hopf = data.hopf
    target = data.witness.target
    e = data.witness.e
    nh = hopf.dim
    for i in range(nh):
        if e.col(i) != m.apply(unit_vec(nh, i), target.unit):
            return False
    associative = True
    for g in range(nh):
        for h in range(nh):
            gh = hopf.alg.basis_product(g, h)
            for x in range(m.alg.dim):
                if m.apply(gh, unit_vec(m.alg.dim, x)) != m.apply(
                    unit_vec(nh, g), m.act_basis(h, x)
                ):
                    associative = False
                    break
            if not associative:
                break
        if not associative:
            break
    if associative:
        for g in range(nh):
            for h in range(nh):
                lhs = m.apply(unit_vec(nh, g), e.col(h))
                rhs = e(hopf.alg.basis_product(g, h))
                if lhs != rhs:
                    return False
    return True


def bilinear_t(data: InnerData, x: Vec, y: Vec) -> Vec:
    """The obstruction pairing t(x, y) = v(y_1) v(x_1) u(x_2 y_2)."""
    hopf = data.hopf
    if len(x) != hopf.dim or len(y) != hopf.dim:
        raise DimensionError("arguments must live in the weak Hopf algebra")
    u, v = data.witness.u, data.witness.v
    target = data.witness.target
    out = [ZERO] * target.dim
    dt = hopf.coalg.delta_terms
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            scale = xi * yj
            for p, q, c in dt[i]:
                for r, s, c2 in dt[j]:
                    value = target.multiply(
                        target.multiply(v.col(r), v.col(p)),
                        u(hopf.alg.basis_product(q, s)),
                    )
                    coeff = scale * c * c2
                    for t, vt in enumerate(value):
                        if vt:
                            out[t] += coeff * vt
    return tuple(out)


def t_image_central(data: InnerData) -> bool:
    """Whether every t(e_i, e_j) lands in the centre of the target."""
    hopf = data.hopf
    central = center(data.witness.target)
    for i in range(hopf.dim):
        ei = unit_vec(hopf.dim, i)
        for j in range(hopf.dim):
            if not central.contains(bilinear_t(data, ei, unit_vec(hopf.dim, j))):
                return False
    return True


def image_subspace(p: ConvMap, of: Subspace | None = None) -> Subspace:
    """Image of a convolution map, optionally restricted to a subspace."""
    if of is None:
        vectors = [p.col(j) for j in range(p.source.dim)]
    else:
        vectors = [p(b) for b in of.basis]
    return Subspace.spanned_by(p.target.dim, vectors)


def _central_in_tensor_square(alg: FiniteAlgebra, y: Vec, generators: Sequence[Vec]) -> bool:
    """(s (x) 1) y = y (1 (x) s) in A (x) A for every generator s."""
    n = alg.dim
    for s in generators:
        left = [ZERO] * (n * n)
        right = [ZERO] * (n * n)
        for idx, value in enumerate(y):
            if not value:
                continue
            a, b = divmod(idx, n)
            sa = alg.multiply(s, unit_vec(n, a))
            for t, vt in enumerate(sa):
                if vt:
                    left[t * n + b] += value * vt
            bs = alg.multiply(unit_vec(n, b), s)
            for t, vt in enumerate(bs):
                if vt:
                    right[a * n + t] += value * vt
        if left != right:
            return False
    return True


@dataclass(frozen=True)
class InnerActionBattery:
    """Side-by-side evaluation of the inner-action equivalences.

    Fields come in matched groups; `violations` lists every equivalence or
    implication among them that fails, which on a verified witness
    indicates a library bug.
    """

    multiplicative_law: bool          # h.(ab) = (h_1.a)(h_2.b)
    phi_multiplicative: bool          # f-conjugation comultiplicativity
    unit_compat_law: bool             # h.1 = eps_t(h).1
    e_absorbs_eps_t: bool             # e o eps_t = e
    eps_t_kernel_contained: bool      # ker eps_t inside ker e
    f_image_central: bool             # hypothesis: f(H) central in A
    associativity_law: bool           # g.(h.a) = (gh).a
    unit_image_translates: bool       # g.e(h) = e(gh)
    t_image_central: bool             # t(H x H) central in A
    u_source_image_central: bool      # u(H_s) central in A
    e_unit_is_one: bool               # e(1) = 1
    unital_law: bool                  # 1.a = a
    lambda_unit_centralizes: bool     # (u (x) v)(Delta 1) centralizes u(H_s)

    def violations(self) -> tuple[str, ...]:
        out = []
        if self.multiplicative_law != self.phi_multiplicative:
            out.append("multiplicativity equivalence broken")
        if not (self.unit_compat_law == self.e_absorbs_eps_t == self.eps_t_kernel_contained):
            out.append("unit compatibility equivalence broken")
        if self.f_image_central and self.associativity_law != (
            self.unit_image_translates and self.t_image_central
        ):
            out.append("associativity equivalence broken under central f-image")
        if self.u_source_image_central and self.e_unit_is_one and not self.unital_law:
            out.append("central u(H_s) with e(1)=1 failed to force a unital action")
        if self.lambda_unit_centralizes and self.unital_law and not (
            self.e_unit_is_one and self.u_source_image_central
        ):
            out.append("unital action failed to force e(1)=1 and central u(H_s)")
        return tuple(out)

    def to_dict(self) -> dict:
        return {
            "multiplicative_law": self.multiplicative_law,
            "phi_multiplicative": self.phi_multiplicative,
            "unit_compat_law": self.unit_compat_law,
            "e_absorbs_eps_t": self.e_absorbs_eps_t,
            "eps_t_kernel_contained": self.eps_t_kernel_contained,
            "f_image_central": self.f_image_central,
            "associativity_law": self.associativity_law,
            "unit_image_translates": self.unit_image_translates,
            "t_image_central": self.t_image_central,
            "u_source_image_central": self.u_source_image_central,
            "e_unit_is_one": self.e_unit_is_one,
            "unital_law": self.unital_law,
            "lambda_unit_centralizes": self.lambda_unit_centralizes,
            "violations": list(self.violations()),
        }


def inner_action_battery(data: InnerData, m: ModuleAction | None = None) -> InnerActionBattery:
    """Evaluate both sides of every inner-action criterion independently.

    m defaults to the candidate built from the witness; passing a
    different action is allowed but the equivalences are only meaningful
    for the inner candidate.
    """
    hopf = data.hopf
    witness = data.witness
    target = witness.target
    _require_valid_witness(witness)
    if m is None:
        m = inner_action_from(data)
    if m.alg != target or m.hopf != hopf:
        raise DimensionError("action context differs from the witness context")

    nh, na = hopf.dim, target.dim
    cd = counital_data(hopf)
    dt = hopf.coalg.delta_terms
    central = center(target)

    multiplicative_law = True
    for h in range(nh):
        for x in range(na):
            for y in range(na):
                acc = [ZERO] * na
                for p, q, c in dt[h]:
                    value = target.multiply(m.act_basis(p, x), m.act_basis(q, y))
                    for t, vt in enumerate(value):
                        if vt:
                            acc[t] += c * vt
                if m.apply(unit_vec(nh, h), target.basis_product(x, y)) != tuple(acc):
                    multiplicative_law = False
                    break
            if not multiplicative_law:
                break
        if not multiplicative_law:
            break

    f = witness.f

    def phi(h_index: int, x: Vec) -> Vec:
        acc = [ZERO] * na
        for p, q, c in dt[h_index]:
            value = target.multiply(target.multiply(f.col(p), x), f.col(q))
            for t, vt in enumerate(value):
                if vt:
                    acc[t] += c * vt
        return tuple(acc)

    phi_multiplicative = True
    for h in range(nh):
        for x in range(na):
            ex = unit_vec(na, x)
            for y in range(na):
                lhs = phi(h, target.basis_product(x, y))
                acc = [ZERO] * na
                for p, q, c in dt[h]:
                    value = target.multiply(phi(p, ex), phi(q, unit_vec(na, y)))
                    for t, vt in enumerate(value):
                        if vt:
                            acc[t] += c * vt
                if lhs != tuple(acc):
                    phi_multiplicative = False
                    break
            if not phi_multiplicative:
                break
        if not phi_multiplicative:
            break

    unit_compat_law = all(
        m.apply(unit_vec(nh, h), target.unit) == m.apply(cd.eps_t.col(h), target.unit)
        for h in range(nh)
    )
    e = witness.e
    e_absorbs_eps_t = e.matrix @ cd.eps_t == e.matrix
    eps_t_kernel_contained = kernel(e.matrix).contains_subspace(kernel(cd.eps_t))

    f_image_central = central.contains_subspace(image_subspace(f))

    associativity_law = True
    for g in range(nh):
        for h in range(nh):
            gh = hopf.alg.basis_product(g, h)
            for x in range(na):
                if m.apply(gh, unit_vec(na, x)) != m.apply(
                    unit_vec(nh, g), m.act_basis(h, x)
                ):
                    associativity_law = False
                    break
            if not associativity_law:
                break
        if not associativity_law:
            break

    unit_image_translates = all(
        m.apply(unit_vec(nh, g), e.col(h)) == e(hopf.alg.basis_product(g, h))
        for g in range(nh)
        for h in range(nh)
    )
    t_central = t_image_central(data)

    u = witness.u
    u_hs_image = image_subspace(u, cd.h_s)
    u_source_image_central = central.contains_subspace(u_hs_image)
    e_unit_is_one = e(hopf.unit) == target.unit
    unital_law = acts_unitally(m)

    v = witness.v
    lam = [ZERO] * (na * na)
    for j, k, c in hopf.unit_delta_terms:
        pair = vec_kron(u.col(j), v.col(k))
        for t, vt in enumerate(pair):
            if vt:
                lam[t] += c * vt
    lambda_unit_centralizes = _central_in_tensor_square(target, tuple(lam), u_hs_image.basis)

    return InnerActionBattery(
        multiplicative_law=multiplicative_law,
        phi_multiplicative=phi_multiplicative,
        unit_compat_law=unit_compat_law,
        e_absorbs_eps_t=e_absorbs_eps_t,
        eps_t_kernel_contained=eps_t_kernel_contained,
        f_image_central=f_image_central,
        associativity_law=associativity_law,
        unit_image_translates=unit_image_translates,
        t_image_central=t_central,
        u_source_image_central=u_source_image_central,
        e_unit_is_one=e_unit_is_one,
        unital_law=unital_law,
        lambda_unit_centralizes=lambda_unit_centralizes,
    )


def second_form_check(data: InnerData, m: ModuleAction) -> bool:
    """Decide innerness by the one-sided criterion (h_1 . a) u(h_2) = u(h) a.

    Preconditions checked first: m is a validated module algebra, e(h)
    equals h . 1, and u(h_1) a f(h_2) = u(h) a.  The direct tensor
    comparison and the criterion must agree; disagreement raises.
    """
    hopf = data.hopf
    witness = data.witness
    target = witness.target
    if m.alg != target or m.hopf != hopf:
        raise DimensionError("action context differs from the witness context")
    if not validate_module_algebra(m).ok or not acts_unitally(m):
        raise PreconditionError("action is not a module algebra")
    nh, na = hopf.dim, target.dim
    e, u, f = witness.e, witness.u, witness.f
    for h in range(nh):
        if e.col(h) != m.apply(unit_vec(nh, h), target.unit):
            raise PreconditionError("e does not match the unit image of the action")
    dt = hopf.coalg.delta_terms
    for h in range(nh):
        for a in range(na):
            ea = unit_vec(na, a)
            acc = [ZERO] * na
            for p, q, c in dt[h]:
                value = target.multiply(target.multiply(u.col(p), ea), f.col(q))
                for t, vt in enumerate(value):
                    if vt:
                        acc[t] += c * vt
            if tuple(acc) != target.multiply(u.col(h), ea):
                raise PreconditionError("u(h_1) a f(h_2) = u(h) a fails")

    direct = m.act == inner_action_from(data).act
    criterion = True
    for h in range(nh):
        for a in range(na):
            ea = unit_vec(na, a)
            acc = [ZERO] * na
            for p, q, c in dt[h]:
                value = target.multiply(m.act_basis(p, a), u.col(q))
                for t, vt in enumerate(value):
                    if vt:
                        acc[t] += c * vt
            if tuple(acc) != target.multiply(u.col(h), ea):
                criterion = False
                break
        if not criterion:
            break
    if direct != criterion:
        raise InvariantViolation("one-sided innerness criterion disagrees with the tensor comparison")
    return direct
