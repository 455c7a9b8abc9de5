import pytest
from hypothesis import given, strategies as st

from eqchern.partitions import (Dominance, GeneralizedPartition as GP, Partition, dominance,
                                generalized_partitions, partitions_of)

partitions = st.integers(0, 8).flatmap(lambda n: st.sampled_from(partitions_of(n)))
gps = st.lists(st.integers(-5, 5).filter(bool), max_size=6).map(GP)


def test_spade_cell():
    s = Partition((5, 5, 5, 2, 1)).cell_stats(2, 1)
    assert (s.leg, s.coleg, s.arm, s.coarm, s.hook, s.content) == (1, 2, 3, 1, 5, -1)
    assert Partition((5, 5, 5, 2, 1)).size == 18


def test_small_cells():
    s = Partition((1,)).cell_stats(0, 0)
    assert (s.arm, s.coarm, s.leg, s.coleg, s.hook, s.content) == (0, 0, 0, 0, 1, 0)
    s = Partition((2, 1)).cell_stats(0, 1)
    assert (s.arm, s.coarm, s.leg, s.coleg, s.hook, s.content) == (0, 1, 0, 0, 1, 1)
    with pytest.raises(ValueError):
        Partition((2, 1)).cell_stats(1, 1)


def test_partition_stats():
    assert Partition((5, 5, 5, 2, 1)).z() == 1500
    e = Partition(()).stats()
    assert (e.size, e.length, e.n, e.z, e.conjugate) == (0, 0, 0, 1, ())
    assert Partition((2, 1)).n() == 1 and Partition((2, 1)).conjugate() == (2, 1)


def test_invalid_partitions():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_gp_stats():
    s = GP.parse("(-2)^1 (1)^2").stats()
    assert (s.length, s.weight, s.factorial, s.delta, s.s) == (3, 0, 2, -1, 6)
    s = GP(()).stats()
    assert (s.length, s.weight, s.factorial, s.delta, s.plus_size, s.s) == (0, 0, 1, 0, 0, 0)
    s = GP((-1, 1)).stats()
    assert (s.weight, s.length, s.delta, s.s) == (0, 2, 0, 2)
    assert str(GP((1, -2, 1))) == "(-2)^1 (1)^2"


def test_enumeration():
    assert len(partitions_of(4)) == 5
    assert partitions_of(0) == (Partition(()),)
    assert partitions_of(4)[0] == (4,) and partitions_of(4)[-1] == (1, 1, 1, 1)
    got = generalized_partitions(0, 2, 3, min_length=2)
    assert sorted(got) == [GP((-3, 3)), GP((-2, 2)), GP((-1, 1))]
    with pytest.raises(ValueError):
        generalized_partitions(0, 2, None)


@pytest.mark.parametrize("n", range(9))
def test_partition_counts(n):
    assert len(partitions_of(n)) == [1, 1, 2, 3, 5, 7, 11, 15, 22][n]
    assert len(set(partitions_of(n))) == len(partitions_of(n))


def test_gp_enumeration_complete():
    # brute force over all multisets with parts in [-3, 3], length <= 3
    from itertools import combinations_with_replacement
    parts = [p for p in range(-3, 4) if p]
    want = {GP(c) for L in range(4) for c in combinations_with_replacement(parts, L) if sum(c) == 1}
    got = generalized_partitions(1, 3, 3)
    assert len(got) == len(set(got)) and set(got) == want


def test_dominance():
    assert dominance(Partition((2,)), Partition((1, 1))) is Dominance.GREATER
    assert dominance(Partition((2, 2)), Partition((3, 1))) is Dominance.LESS
    assert dominance(Partition((3, 1, 1, 1)), Partition((2, 2, 2))) is Dominance.INCOMPARABLE
    with pytest.raises(ValueError):
        dominance(Partition((2,)), Partition((1,)))


@given(partitions)
def test_cell_identities(lam):
    conj = lam.conjugate()
    cells = lam.all_cell_stats()
    assert len(cells) == lam.size
    assert sum(c.leg for c in cells) == lam.n()
    assert sum(c.arm for c in cells) == conj.n()
    for (i, j), c in zip(lam.cells(), cells):
        assert c.hook == c.arm + c.leg + 1
        d = conj.cell_stats(j, i)
        assert (d.arm, d.leg, d.coarm, d.coleg) == (c.leg, c.arm, c.coleg, c.coarm)
        assert c == lam.cell_stats(i, j)


@given(partitions)
def test_conjugate_involution(lam):
    assert lam.conjugate().conjugate() == lam


@given(gps)
def test_gp_negation(lam):
    assert (-lam).delta() == -lam.delta()
    assert (-lam).s() == lam.s()
    assert (-lam).weight == -lam.weight
    assert GP.parse(str(lam)) == lam
