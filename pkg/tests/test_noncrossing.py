from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elnet.noncrossing import (
    NonCrossingPartition as P,
    PartitionError,
    catalan,
    coconcordant_sets,
    concordant_sets,
    dual,
    enumerate_nc,
    format_extension,
    from_dual,
    is_coconcordant,
    is_concordant,
    is_lagrangian_concordant,
    isolate,
    lagrangian_extension,
    merge,
    merges_of,
    pairing,
)


def partitions(max_n=6):
    return st.integers(1, max_n).flatmap(lambda n: st.sampled_from(enumerate_nc(n)))


# --- construction and text ---------------------------------------------------


def test_canonical_form_and_text():
    s = P(6, ((5,), (3, 2), (6, 4, 1)))
    assert s.blocks == ((1, 4, 6), (2, 3), (5,))
    assert str(s) == "1 4 6|2 3|5"
    assert P.parse("5|2 3|6 1 4") == s


@pytest.mark.parametrize(
    "text, n",
    [("1 3|2 4", None), ("1 2|2 3", None), ("1 2", 3), ("a b", None)],
)
def test_invalid_partitions(text, n):
    with pytest.raises(PartitionError):
        P.parse(text, n)


# --- enumeration -----------------------------------------------------------------


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 5), (4, 14), (5, 42), (6, 132), (7, 429), (8, 1430)])
def test_enumeration_counts(n, count):
    parts = enumerate_nc(n)
    assert len(parts) == count == catalan(n)
    assert len(set(parts)) == count
    assert parts == sorted(parts, key=lambda s: s.blocks)


def test_enumeration_range():
    with pytest.raises(PartitionError):
        enumerate_nc(0)
    with pytest.raises(PartitionError):
        enumerate_nc(11)


# --- duals and merged partitions ----------------------------------------------------


def test_dual_examples():
    s = P.parse("1 4 6|2 3|5")
    assert str(dual(s)) == "1 3|2|4 5|6"
    assert dual(P.singletons(4)) == P.one_block(4)
    assert dual(P.one_block(4)) == P.singletons(4)


def test_merge_examples():
    assert str(merge(P.parse("1 4 6|2 3|5"))) == "1 7 11|2 6|3 5|4|8 10|9|12"
    assert str(merge(P.singletons(2))) == "1|2 4|3"
    blocks = merge(P.parse("1|2 5 8|3|4|6 7")).blocks
    assert (3, 9, 15) in blocks
    # the dual block of 2̃ holds 1̃ and 8̃ in merged labels 2 and 16
    assert (2, 16) in blocks and (4, 6, 8) in blocks


@settings(max_examples=80, deadline=None)
@given(partitions(8))
def test_dual_properties(s):
    d = s.dual
    assert len(s) + len(d) == s.n + 1
    assert from_dual(d) == s
    # dual twice is the rotation i -> i-1
    shifted = P(s.n, tuple(tuple((x - 2) % s.n + 1 for x in b) for b in s.blocks))
    assert dual(d) == shifted
    m = s.merged
    assert P(s.n, tuple(tuple((x + 1) // 2 for x in b) for b in m.blocks if b[0] % 2)) == s
    assert P(s.n, tuple(tuple(x // 2 for x in b) for b in m.blocks if b[0] % 2 == 0)) == d


# --- concordance --------------------------------------------------------------------


def test_concordance_examples():
    s = P.parse("1 4 6|2 3|5")
    assert is_concordant((2, 5, 7, 8, 11), s)
    assert not is_concordant((2, 5, 7, 8, 12), s)
    for n in range(2, 6):
        even = tuple(range(2, 2 * n - 1, 2))
        odd = tuple(range(1, 2 * n - 2, 2))
        assert [t for t in enumerate_nc(n) if is_concordant(even, t)] == [P.singletons(n)]
        assert [t for t in enumerate_nc(n) if is_concordant(odd, t)] == [P.one_block(n)]
    with pytest.raises(PartitionError):
        is_concordant((1, 2), s)


def test_coconcordance_examples():
    s = P.singletons(3)
    assert is_coconcordant((1, 2, 3, 5), s)
    assert not is_coconcordant((1, 3, 5, 6), P.parse("1 2|3"))
    for n in range(2, 6):
        for R in combinations(range(2, 2 * n + 1, 2), n - 1):
            I = tuple(sorted(set(range(1, 2 * n + 1)) - set(R)))
            assert is_coconcordant(I, P.singletons(n))
    with pytest.raises(PartitionError):
        is_coconcordant((1, 2), s)


@settings(max_examples=60, deadline=None)
@given(partitions(5))
def test_concordance_definitions_agree(s):
    n = s.n
    if n < 2:
        return
    top = set(range(1, 2 * n + 1))
    brute = [I for I in combinations(sorted(top), n - 1) if all(len(set(B) - set(I)) == 1 for B in s.merged.blocks)]
    assert concordant_sets(s) == brute
    brute_co = [I for I in combinations(sorted(top), n + 1) if all(len(set(B) & set(I)) == 1 for B in s.merged.blocks)]
    assert coconcordant_sets(s) == brute_co


# --- isolation and pairing --------------------------------------------------------------


def test_isolate_figure_example():
    s = P.parse("1 5|2 3 4")
    assert str(s.merged) == "1 9|2 8|3 5 7|4|6|10"
    assert str(isolate(s, 5)) == "1 9|2 8|3 7|4 6|5|10"


def test_isolate_trivial_when_isolated():
    s = P.parse("1 5|2 3 4")
    assert isolate(s, 4) == s.merged


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_isolate_left_inverse_of_merge(n):
    for s in enumerate_nc(n):
        for k in range(1, n + 1):
            for t in merges_of(s, k):
                assert isolate(t, 2 * k - 1).sigma == s
            d = s.dual
            for t in merges_of(d, k):
                assert isolate(from_dual(t), 2 * k).sigma == s


def test_pairing_examples():
    assert pairing(P.parse("1 2 3|4"), P.parse("2 4|1|3")) == 1
    assert pairing(P.parse("1 2|3 4"), P.parse("1 2|3|4")) == 0
    for n in range(1, 6):
        assert pairing(P.one_block(n), P.singletons(n)) == 1


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.sampled_from(enumerate_nc(n)), st.sampled_from(enumerate_nc(n)))))
def test_pairing_symmetric(pair):
    t, s = pair
    assert pairing(t, s) == pairing(s, t)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_isolation_invariance_of_pairing(n):
    parts = enumerate_nc(n)
    for i in range(1, 2 * n + 1):
        for t in parts:
            for s in parts:
                if t.merged.is_isolated(i) == s.merged.is_isolated(i):
                    assert pairing(isolate(t, i).sigma, s) == pairing(t, isolate(s, i).sigma)


def test_isolation_invariance_fails_when_only_one_is_isolated():
    # merged (1 3 7|2|4 6|5|8) and (1|2 4 8|3|5 7|6)
    tau, sigma = P.parse("1 2 4|3"), P.parse("1|2|3 4")
    assert str(tau.merged) == "1 3 7|2|4 6|5|8"
    assert str(sigma.merged) == "1|2 4 8|3|5 7|6"
    assert pairing(isolate(tau, 5).sigma, sigma) == 1
    assert pairing(tau, isolate(sigma, 5).sigma) == 0


# --- Lagrangian extension ---------------------------------------------------------------


def test_lagrangian_extension_by_definition():
    s = P.parse("1|2 5 8|3|4|6 7")
    # the merged block {2,16} covers 2..14; inner blocks remove 4,6 and 10,12
    assert format_extension(lagrangian_extension(s)) == "(2,8,14)(3,5,7)(4)(6)(9,13)(10,12)(11)"
    assert is_lagrangian_concordant((2, 3, 4, 6, 9, 10, 11), s)
    assert not is_lagrangian_concordant((2, 3, 5, 6, 9, 10, 11), s)
    with pytest.raises(PartitionError):
        is_lagrangian_concordant((1, 2), s)


@pytest.mark.parametrize("n", range(2, 8))
def test_one_block_extension(n):
    assert lagrangian_extension(P.one_block(n)) == [(i,) for i in range(1, 2 * n - 2, 2)]


@pytest.mark.parametrize("n", range(2, 7))
def test_extension_shape(n):
    for s in enumerate_nc(n):
        subs = lagrangian_extension(s)
        assert len(subs) == n - 1
        flat = [x for sub in subs for x in sub]
        assert len(flat) == len(set(flat))
        assert all(1 <= x <= 2 * n - 2 for x in flat)
