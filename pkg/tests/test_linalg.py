from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whk.errors import DimensionError
from whk.linalg import (
    Mat,
    Subspace,
    kernel,
    kron,
    invert,
    rank,
    rref,
    solve_affine,
    unit_vec,
    vec,
    vec_kron,
)

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=7)


def small_matrix(max_dim: int = 4):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r
            ).map(lambda rows: Mat.from_rows(rows, c))
        )
    )


def test_rref_identity():
    m = Mat.identity(2)
    reduced, pivots = rref(m)
    assert reduced == m
    assert pivots == (0, 1)


def test_rref_hand_elimination():
    m = Mat.from_rows([[2, 4], [1, 2]])
    reduced, pivots = rref(m)
    assert reduced == Mat.from_rows([[1, 2], [0, 0]])
    assert pivots == (0,)


def test_rref_zero_matrix():
    m = Mat.zero(2, 3)
    reduced, pivots = rref(m)
    assert reduced == m
    assert pivots == ()


@settings(deadline=None)
@given(small_matrix())
def test_rref_idempotent(m):
    reduced, _ = rref(m)
    again, _ = rref(reduced)
    assert again == reduced


@settings(deadline=None)
@given(small_matrix())
def test_rank_nullity(m):
    assert kernel(m).dim + rank(m) == m.cols


def test_kernel_identity_is_zero():
    assert kernel(Mat.identity(3)).dim == 0


def test_kernel_one_row():
    space = kernel(Mat.from_rows([[1, 1]]))
    assert space.basis == (vec([1, -1]),)


def test_kernel_zero_matrix_full():
    assert kernel(Mat.zero(2, 2)) == Subspace.full(2)


def test_subspace_intersect_disjoint_lines():
    a = Subspace.spanned_by(2, [unit_vec(2, 0)])
    b = Subspace.spanned_by(2, [unit_vec(2, 1)])
    assert a.intersect(b).dim == 0


def test_annihilator_dual_basis_case():
    a = Subspace.spanned_by(2, [unit_vec(2, 0)])
    assert a.annihilator().basis == (unit_vec(2, 1),)


def test_sum_spans_plane():
    a = Subspace.spanned_by(2, [vec([1, 1])])
    b = Subspace.spanned_by(2, [vec([1, -1])])
    assert a.sum(b) == Subspace.full(2)


@settings(deadline=None)
@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=0, max_size=4))
def test_annihilator_involution(rows):
    s = Subspace.spanned_by(3, [vec(r) for r in rows])
    assert s.annihilator().annihilator() == s


def test_subspace_dimension_mismatch():
    a = Subspace.spanned_by(2, [unit_vec(2, 0)])
    b = Subspace.spanned_by(3, [unit_vec(3, 0)])
    with pytest.raises(DimensionError):
        a.sum(b)
    with pytest.raises(DimensionError):
        a.contains(unit_vec(3, 0))


def test_solve_affine_identity():
    particular, homogeneous = solve_affine(Mat.identity(2), vec([3, 5]))
    assert particular == vec([3, 5])
    assert homogeneous.dim == 0


def test_solve_affine_underdetermined():
    particular, homogeneous = solve_affine(Mat.from_rows([[1, 1]]), vec([2]))
    assert particular == vec([2, 0])
    assert homogeneous.basis == (vec([1, -1]),)


def test_solve_affine_inconsistent():
    particular, homogeneous = solve_affine(Mat.from_rows([[1], [1]]), vec([1, 2]))
    assert particular is None
    assert homogeneous.dim == 0


def test_kron_identities():
    assert kron(Mat.identity(2), Mat.identity(2)) == Mat.identity(4)


def test_kron_index_convention():
    a = Mat.from_rows([[0, 1], [0, 0]])
    product = kron(a, Mat.identity(2))
    expected = Mat.zero(4, 4).entries
    expected = [list(r) for r in expected]
    expected[0][2] = Fraction(1)
    expected[1][3] = Fraction(1)
    assert product == Mat(4, 4, tuple(tuple(r) for r in expected))


def test_kron_with_zero():
    assert kron(Mat.from_rows([[1, 2], [3, 4]]), Mat.zero(2, 2)).is_zero()


@settings(deadline=None)
@given(small_matrix(3), small_matrix(3), small_matrix(3))
def test_kron_associative(a, b, c):
    assert kron(kron(a, b), c) == kron(a, kron(b, c))


@settings(deadline=None)
@given(rationals, rationals)
def test_scalar_arithmetic_exact(a, b):
    assert (a + b) - b == a


def test_vec_kron_matches_matrix_kron():
    a = vec([1, 2])
    b = vec([3, 0, 5])
    col_a = Mat.from_columns([a], 2)
    col_b = Mat.from_columns([b], 3)
    assert vec_kron(a, b) == kron(col_a, col_b).col(0)


def test_invert_round_trip():
    m = Mat.from_rows([[1, 2], [3, 5]])
    inv = invert(m)
    assert inv is not None
    assert m @ inv == Mat.identity(2)
    assert invert(Mat.from_rows([[1, 2], [2, 4]])) is None


def test_quotient_map_kernel_is_subspace():
    s = Subspace.spanned_by(3, [vec([1, 1, 0]), vec([0, 1, 1])])
    q = s.quotient_map()
    assert kernel(q) == s
    assert q.rows == 1
