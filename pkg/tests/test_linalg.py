from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elnet.linalg import (
    LinalgError,
    Matrix,
    RankError,
    MembershipError,
    WedgeVector,
    bareiss_det,
    cofactor_det,
    format_rational,
    kernel_basis,
    minor,
    parse_rational,
    permutation_det,
    plucker_of_rowspace,
    proportionality,
    subspace_relation,
    to_rational,
    wedge_expand,
)
from elnet.symplectic import lambda_tilde

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def matrices(rows, cols):
    return st.lists(st.lists(rationals, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(Matrix)


square = st.integers(1, 5).flatmap(lambda n: matrices(n, n))


# --- scalars -----------------------------------------------------------------


def test_rational_text_round_trip():
    assert parse_rational("-6/4") == Fraction(-3, 2)
    assert format_rational(Fraction(-3, 2)) == "-3/2"
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(0)) == "0"


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", ""])
def test_rational_parse_errors(bad):
    with pytest.raises(LinalgError):
        parse_rational(bad)


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_rational(0.5)


# --- determinants and minors --------------------------------------------------


def test_minor_examples():
    assert minor(Matrix.identity(3), (1, 2), (1, 2)) == 1
    M = Matrix([[1, 2], [3, 4]])
    assert minor(M, (1, 2), (1, 2)) == -2
    assert minor(M, (1,), (1,)) == 1
    with pytest.raises(LinalgError):
        minor(M, (1, 2), (1,))
    with pytest.raises(LinalgError):
        minor(M, (1, 3), (1, 2))


@settings(max_examples=60, deadline=None)
@given(square)
def test_three_determinant_routes_agree(M):
    rows = M.tolist()
    d = bareiss_det(rows)
    assert d == cofactor_det(rows)
    if M.nrows <= 4:
        assert d == permutation_det(rows)


@settings(max_examples=40, deadline=None)
@given(square)
def test_inverse_matches_det(M):
    if M.det() == 0:
        with pytest.raises(RankError):
            M.inverse()
    else:
        assert M @ M.inverse() == Matrix.identity(M.nrows)


# --- kernels and subspaces ------------------------------------------------------


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(3)) == []
    assert len(kernel_basis(Matrix.zeros(2, 3))) == 3
    ker = kernel_basis(lambda_tilde(3))
    assert len(ker) == 2
    span = Matrix(ker)
    for v in [(0, 1, 0, -1, 0, 1), (1, 0, -1, 0, 1, 0)]:
        assert subspace_relation(Matrix([v]), span) in ("A_in_B", "equal")


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrices(r, c))))
def test_rank_nullity(M):
    ker = kernel_basis(M)
    assert M.rank() + len(ker) == M.ncols
    for v in ker:
        assert all(x == 0 for x in M.apply(v))


def test_subspace_relation_cases():
    B = Matrix([[1, 0, 0], [0, 1, 0]])
    assert subspace_relation(B, B) == "equal"
    assert subspace_relation(Matrix([[1, 0, 0]]), B) == "A_in_B"
    assert subspace_relation(B, Matrix([[0, 1, 0]])) == "B_in_A"
    assert subspace_relation(Matrix([[0, 0, 1]]), B) == "incomparable"


def test_solve_inconsistent():
    with pytest.raises(MembershipError):
        Matrix([[1, 0], [0, 0]]).solve(Matrix([[0], [1]]))


def test_matrix_text_round_trip():
    M = Matrix([[1, Fraction(-2, 3)], [0, 5]])
    assert Matrix.from_text(M.to_text()) == M
    assert M.to_text() == "1 -2/3\n0 5"


# --- exterior algebra ------------------------------------------------------------


def test_wedge_examples():
    e = lambda i, m=4: tuple(1 if j == i - 1 else 0 for j in range(m))  # noqa: E731
    assert wedge_expand([e(1), e(2)]) == WedgeVector.basis(4, (1, 2))
    s = tuple(a + b for a, b in zip(e(1), e(2)))
    assert wedge_expand([s, s]).is_zero()


def test_plucker_examples():
    P = plucker_of_rowspace(Matrix([[1, 0, 0, 0], [0, 1, 0, 0]]))
    assert P == WedgeVector.basis(4, (1, 2))
    with pytest.raises(RankError):
        plucker_of_rowspace(Matrix([[1, 1, 0], [2, 2, 0]]))


def test_wedge_vector_invariants():
    w = WedgeVector(4, 2, {(1, 2): 0, (2, 3): Fraction(1, 2)})
    assert list(w.coeffs) == [(2, 3)]
    with pytest.raises(LinalgError):
        WedgeVector(4, 2, {(1, 2, 3): 1})
    with pytest.raises(LinalgError):
        WedgeVector(4, 2, {(2, 1): 1})
    with pytest.raises(LinalgError):
        WedgeVector(4, 2, {(1, 5): 1})


def test_wedge_vector_text_round_trip():
    w = WedgeVector(5, 2, {(2, 4): Fraction(-1, 3), (1, 5): 2})
    assert w.to_text() == "1,5 : 2\n2,4 : -1/3"
    assert WedgeVector.from_text(w.to_text(), 5, 2) == w


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda k: matrices(k, 5)), st.data())
def test_wedge_alternating_and_multilinear(M, data):
    rows = list(M.rows)
    w = wedge_expand(rows)
    if len(rows) >= 2:
        swapped = [rows[1], rows[0]] + rows[2:]
        assert wedge_expand(swapped) == -w
        assert wedge_expand([rows[0], rows[0]] + rows[2:]).is_zero()
    c = data.draw(rationals)
    assert wedge_expand([tuple(c * x for x in rows[0])] + rows[1:]) == w.scale(c)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda k: matrices(k, 5)), st.data())
def test_plucker_projective_under_row_operations(M, data):
    if M.rank() != M.nrows:
        return
    k = M.nrows
    G = data.draw(matrices(k, k))
    if G.det() == 0:
        return
    P, Q = plucker_of_rowspace(M), plucker_of_rowspace(G @ M)
    assert proportionality(Q, P) == G.det()
    assert plucker_of_rowspace(M) == wedge_expand(list(M.rows))
