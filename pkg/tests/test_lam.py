from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ALL_FIXTURES, load_fixture
from elnet.groves import GroveTable, grove_measurements, lam_plucker
from elnet.linalg import LinalgError, Matrix, MembershipError, WedgeVector, is_proportional
from elnet.lam import (
    InvarianceError,
    act_on_wedge,
    concordance_coordinates,
    crystal_check,
    crystal_image,
    generator,
    grove_coordinate_action,
    invariance_check,
    nilpotent,
    restrict_to_V_operator,
    symplectic_check,
    wedge_pairing,
    wraparound_generator,
    x_gen,
    y_gen,
)
from elnet.embeddings import cyclic_shift
from elnet.network import hollow_cactus
from elnet.noncrossing import NonCrossingPartition as P
from elnet.noncrossing import enumerate_nc, pairing
from elnet.symplectic import concordance_vector, lambda_form

params = st.fractions(min_value=-5, max_value=5, max_denominator=5)


def all_generators(max_n=5):
    return [(n, i) for n in range(2, max_n + 1) for i in range(1, 2 * n + 1)]


# --- generators ------------------------------------------------------------------------


@pytest.mark.parametrize("n, i", all_generators(6))
def test_nilpotency(n, i):
    N = nilpotent(n, i)
    assert not N.is_zero()
    assert (N @ N).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(all_generators(4)), params, params)
def test_one_parameter_subgroup(ni, t, s):
    n, i = ni
    g = generator(n, i, t)
    assert g.matrix == Matrix.identity(2 * n) + g.nilpotent.scale(t)
    assert generator(n, i, t).matrix @ generator(n, i, s).matrix == generator(n, i, t + s).matrix
    assert generator(n, i, t).matrix @ generator(n, i, -t).matrix == Matrix.identity(2 * n)


@pytest.mark.parametrize("n, i", all_generators(5))
def test_x_and_y_commute(n, i):
    prev = (i - 2) % (2 * n) + 1
    for t in (1, Fraction(-2, 3)):
        assert x_gen(n, i, t) @ y_gen(n, prev, t) == y_gen(n, prev, t) @ x_gen(n, i, t)


def test_x_entries():
    assert x_gen(3, 2, 5)[1, 2] == 5
    assert y_gen(3, 2, 5)[2, 1] == 5
    s = cyclic_shift(3)
    assert x_gen(3, 6, 5) == s @ x_gen(3, 1, 5) @ s.inverse()


@pytest.mark.parametrize("n, i", all_generators(5))
def test_wraparound_matches_conjugation(n, i):
    for t in (1, 2, Fraction(5, 3)):
        assert generator(n, i, t).matrix == wraparound_generator(n, i, t)


def test_generator_range():
    with pytest.raises(LinalgError):
        generator(3, 7)


# --- restriction to V ---------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_restrict_identity(n):
    assert restrict_to_V_operator(Matrix.identity(2 * n)) == Matrix.identity(2 * n - 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_restricted_generators_are_symplectic(n):
    L = lambda_form(2 * n - 2)
    for i in range(1, 2 * n + 1):
        for t in (1, 2, Fraction(5, 3)):
            R = restrict_to_V_operator(generator(n, i, t).matrix)
            assert R @ L @ R.T == L


@pytest.mark.parametrize("n", [3, 4])
def test_restriction_is_multiplicative(n):
    for i, j in product(range(1, 2 * n + 1), repeat=2):
        U, W = generator(n, i, 2).matrix, generator(n, j, Fraction(-1, 3)).matrix
        assert restrict_to_V_operator(U @ W) == restrict_to_V_operator(U) @ restrict_to_V_operator(W)


def test_restrict_rejects_operators_moving_V():
    with pytest.raises(InvarianceError):
        restrict_to_V_operator(Matrix.diag([2, 1, 1, 1, 1, 1]))


# --- wedge action --------------------------------------------------------------------------


def test_group_action_identity():
    w = concordance_vector(P.parse("1 3|2"))
    assert act_on_wedge(Matrix.identity(6), w) == w
    with pytest.raises(ValueError):
        act_on_wedge(Matrix.identity(6), w, "other")
    with pytest.raises(LinalgError):
        act_on_wedge(Matrix.identity(4), w)


@pytest.mark.parametrize("i", range(1, 7))
def test_derivation_is_first_order_part(i):
    # ⋀(Id + t𝔲) w = w + t·D(w) + t²·(second order), so the t-linear part is D(w)
    N = nilpotent(3, i)
    for s in enumerate_nc(3):
        w = concordance_vector(s)
        g1 = act_on_wedge(Matrix.identity(6) + N, w)
        g2 = act_on_wedge(Matrix.identity(6) + N.scale(2), w)
        linear = g1.scale(4) - g2 - w.scale(3)
        assert linear.scale(Fraction(1, 2)) == act_on_wedge(N, w, "derivation")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_crystal_images(n):
    for s in enumerate_nc(n):
        w = concordance_vector(s)
        for i in range(1, 2 * n + 1):
            got = act_on_wedge(nilpotent(n, i), w, "derivation")
            target = crystal_image(s, i)
            if s.merged.is_isolated(i):
                assert target is None and got.is_zero()
            else:
                assert got == concordance_vector(target)


def test_crystal_image_example():
    assert crystal_image(P.parse("1 5|2 3 4"), 4) is None
    assert str(crystal_image(P.parse("1 5|2 3 4"), 5).merged) == "1 9|2 8|3 7|4 6|5|10"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_lam_group_preserves_H(n):
    for i in range(1, 2 * n + 1):
        A = generator(n, i, Fraction(7, 3)).matrix
        for s in enumerate_nc(n):
            concordance_coordinates(act_on_wedge(A, concordance_vector(s)))


def test_concordance_coordinates():
    w = concordance_vector(P.parse("1 2|3")).scale(3) + concordance_vector(P.parse("1 2 3"))
    assert concordance_coordinates(w) == {P.parse("1 2|3"): 3, P.parse("1 2 3"): 1}
    with pytest.raises(MembershipError):
        concordance_coordinates(WedgeVector.basis(6, (1, 2)))


def test_wedge_pairing_matches_partition_pairing():
    parts = enumerate_nc(3)
    for t in parts:
        for s in parts:
            assert wedge_pairing(concordance_vector(t), concordance_vector(s)) == pairing(t, s)


# --- grove coordinates ------------------------------------------------------------------------


@pytest.mark.parametrize("name", ALL_FIXTURES[:6])
def test_grove_action_identity_at_zero(name):
    gt = grove_measurements(load_fixture(name))
    for i in range(1, 2 * gt.n + 1):
        assert grove_coordinate_action(gt, i, 0) == gt


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_grove_action_matches_group_action(name):
    gt = grove_measurements(load_fixture(name))
    n = gt.n
    for i in range(1, 2 * n + 1):
        for a in (1, Fraction(3, 2)):
            moved = lam_plucker(grove_coordinate_action(gt, i, a))
            acted = act_on_wedge(generator(n, i, a).matrix, lam_plucker(gt))
            assert is_proportional(moved, acted)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_grove_action_on_hollow_tables(n):
    for s in enumerate_nc(n):
        gt = GroveTable(n, {s: 1})
        for i in range(1, 2 * n + 1):
            moved = grove_coordinate_action(gt, i, 1)
            target = crystal_image(s, i)
            want = {s: 1} if target is None else {s: 1, target: 1}
            assert dict(moved.entries) == want
            assert lam_plucker(moved) == act_on_wedge(generator(n, i, 1).matrix, lam_plucker(gt))


# --- reports --------------------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_crystal_report(n):
    rep = crystal_check(n)
    assert rep.ok and rep.status == "pass"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_invariance_report(n):
    assert invariance_check(n).ok


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_symplectic_report(n):
    assert symplectic_check(n).ok
