import pytest

from eqchern.chern import (conjecture_probe, eigenvalue, fixed_point_matrix, g1_display, g2_display,
                           gk_eigen, gk_fock, gk_fock_op, leading_display, verify_fock_formula)
from eqchern.coeff import RatFunc, mat_equal, mat_mul, var
from eqchern.derivatives import a_prime_closed
from eqchern.fock import NormalOrderedOp, commutator, number_operator
from eqchern.partitions import partitions_of
from eqchern.symfunc import fixed_point_class

t1, t2 = var("t1"), var("t2")


def test_eigenvalue_examples():
    for n in range(5):
        for lam in partitions_of(n):
            assert eigenvalue(lam, 0) == n
    assert eigenvalue((2,), 1) == -t1
    assert eigenvalue((1, 1), 2) == t2 ** 2 / 2


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_eigen_operator_diagonal_on_fixed_points(k):
    op = gk_eigen(k, 4)
    for lam in partitions_of(4):
        j = fixed_point_class(lam)
        assert op.apply(j) == j * eigenvalue(lam, k)


def test_fock_examples():
    assert gk_fock_op(0, 6).equal_terms(number_operator(6))
    assert gk_fock_op(1, 6).equal_terms(g1_display(6))
    assert gk_fock_op(2, 6).equal_terms(g2_display(6))


@pytest.mark.parametrize("k,n", [(0, 6), (1, 6), (2, 5)])
def test_eigen_equals_fock(k, n):
    rep = verify_fock_formula(k, n)
    assert rep["status"] == "PASS" and rep["mismatches"] == []
    assert set(rep) >= {"k", "degree", "status", "mismatches"}


def test_commute_pairwise():
    ops = [gk_eigen(k, 5) for k in range(4)]
    for n in range(6):
        mats = [o.matrix(n) for o in ops]
        for a in mats:
            for b in mats:
                assert mat_equal(mat_mul(a, b), mat_mul(b, a))


def _swap(mat):
    return [[RatFunc.coerce(c).swap("t1", "t2") for c in row] for row in mat]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_swap_is_conjugation(k):
    for n in range(1, 6):
        f, _ = fixed_point_matrix(n)
        parts = partitions_of(n)
        perm = [[1 if parts[i] == parts[j].conjugate() else 0 for j in range(len(parts))]
                for i in range(len(parts))]
        # swapping t1, t2 sends J^lambda to J^lambda'
        assert mat_equal(_swap(f), mat_mul(f, perm))
        for lam in parts:
            assert eigenvalue(lam, k).swap("t1", "t2") == eigenvalue(lam.conjugate(), k)
        # so the conjugated operator is the swapped one, which in the p basis is itself
        mat = gk_eigen(k, n).matrix(n)
        assert mat_equal(_swap(mat), mat)


def test_boundary_specialization_matches_derivative():
    # at t1 = 1, t2 = -1, [G_1, a_-n] from the Fock side equals the closed form
    for n in (1, 2, 3):
        got = commutator(gk_fock_op(1, 9), NormalOrderedOp.mode(-n), 6)
        want = a_prime_closed(-n, 6)
        assert got.map(lambda lam, c: RatFunc.coerce(c).subs({"t1": 1, "t2": -1})).equal_terms(
            want.map(lambda lam, c: RatFunc.coerce(c).subs({"t1": 1, "t2": -1})))


def test_probe_sanity_k2():
    rep = conjecture_probe(2, 6)
    assert rep["disagree"] == 0 and rep["agree"] > 0 and rep["longer_terms"] == []
    assert rep["expansion"].equal_terms(g2_display(6))


def test_probe_k0():
    rep = conjecture_probe(0, 4)
    assert rep["disagree"] == 0
    assert leading_display(0, 4).equal_terms(number_operator(4))


def test_gk_fock_matrix_window():
    from eqchern.coeff import WindowError
    with pytest.raises(WindowError):
        gk_fock(1, 3).matrix(4)
