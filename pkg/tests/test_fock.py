from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eqchern.chern import g1_display
from eqchern.coeff import QSeries, RatFunc, WindowError, mat_mul, var
from eqchern.fock import (DegreeOperator, ExpansionError, FockVector, IdentityOperator,
                          NormalOrderedOp, apply_mode, commutator, compose, expand_in_monomials,
                          matrix_on_degree, number_operator, render_operator, trace_q)
from eqchern.partitions import GeneralizedPartition as GP, partitions_of, partitions_up_to

t1, t2 = var("t1"), var("t2")
B = FockVector.basis


def test_mode_examples():
    assert apply_mode(1, apply_mode(-1, FockVector.vacuum())) == FockVector.vacuum()
    assert apply_mode(2, B((1, 1))).is_zero()
    assert apply_mode(2, B((2, 2))) == B((2,), 4)
    assert apply_mode(3, FockVector.vacuum()).is_zero()
    with pytest.raises(ValueError):
        apply_mode(0, FockVector.vacuum())


def test_apply_op_examples():
    g0 = number_operator(6)
    for mu in partitions_up_to(6):
        assert g0.apply(B(mu)) == B(mu, mu.size)
    assert NormalOrderedOp.identity().apply(B((3, 1))) == B((3, 1))
    assert NormalOrderedOp({GP((-2, 1, 1)): 1}).apply(B((1, 1))) == B((2,), 2)


def test_compose_examples():
    assert commutator(NormalOrderedOp.mode(1), NormalOrderedOp.mode(-1), 4).equal_terms(NormalOrderedOp.identity())
    g0 = number_operator(6)
    op = g1_display(6)
    assert commutator(g0, op, 4).is_zero()


def test_compose_window_errors():
    a = NormalOrderedOp({GP((-1, 1)): 1}, 2)
    with pytest.raises(WindowError):
        compose(a, NormalOrderedOp.mode(-2), 2)
    with pytest.raises(WindowError):
        compose(g1_display(6), g1_display(6), 3, max_length=2)


def test_matrix_examples():
    assert matrix_on_degree(number_operator(3), 3) == [[3, 0, 0], [0, 3, 0], [0, 0, 3]]
    assert matrix_on_degree(NormalOrderedOp(), 2) == [[0, 0], [0, 0]]
    with pytest.raises(ValueError):
        matrix_on_degree(NormalOrderedOp.mode(-1), 2)


def test_g1_matrix_at_boundary():
    # degree 2 eigenvalues are -t1 and -t2: trace -(t1+t2), determinant t1 t2
    mat = matrix_on_degree(g1_display(2), 2)
    assert mat[0][0] + mat[1][1] == -(t1 + t2)
    assert mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0] == t1 * t2
    at = [[RatFunc.coerce(c).subs({"t1": 1, "t2": -1}) for c in row] for row in mat]
    assert at == [[0, -1], [-1, 0]]


def test_expand_examples():
    assert expand_in_monomials(number_operator(5), 5, 2).equal_terms(number_operator(5))
    assert expand_in_monomials(NormalOrderedOp(), 4).is_zero()
    assert expand_in_monomials(g1_display(6), 6, 3).equal_terms(g1_display(6))
    with pytest.raises(ExpansionError):
        expand_in_monomials(g1_display(6), 6, 2)


def test_trace_examples():
    assert trace_q(IdentityOperator(), 8) == QSeries([1, 1, 2, 3, 5, 7, 11, 15, 22], 8)
    assert trace_q(number_operator(8), 8) == QSeries([n * len(partitions_of(n)) for n in range(9)], 8)


def test_render():
    op = NormalOrderedOp({GP((-2, 1, 1)): Fraction(1, 2), GP(()): t1})
    assert render_operator(op) == "(t1)*1 + (1/2)*a(-2)a(1)^2"


@st.composite
def ops(draw):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        parts = draw(st.lists(st.integers(-3, 3).filter(bool), min_size=1, max_size=3))
        terms[GP(parts)] = draw(st.sampled_from([1, -2, Fraction(1, 3), t1, t2 - 1]))
    return NormalOrderedOp(terms)


@given(ops(), ops())
def test_compose_matches_application(a, b):
    d = 4
    ab = compose(a, b, d)
    for mu in partitions_up_to(d):
        v = B(mu)
        assert ab.apply(v) == a.apply(b.apply(v))


@given(st.integers(1, 6), st.integers(1, 6))
def test_heisenberg_relation(i, j):
    for mu in partitions_up_to(6):
        v = B(mu)
        lhs = apply_mode(i, apply_mode(-j, v)) - apply_mode(-j, apply_mode(i, v))
        assert lhs == (v * i if i == j else FockVector())


@given(ops(), ops())
def test_matrix_is_multiplicative(a, b):
    a0 = a.filter(lambda lam: lam.weight == 0) + NormalOrderedOp({GP((-1, 1)): 1})
    b0 = b.filter(lambda lam: lam.weight == 0) + NormalOrderedOp({GP((-2, 2)): t1})
    for n in range(4):
        lhs = matrix_on_degree(compose(a0, b0, n), n)
        assert lhs == mat_mul(matrix_on_degree(a0, n), matrix_on_degree(b0, n))


def test_degree_operator_roundtrip():
    op = g1_display(5)
    d = DegreeOperator(lambda n: matrix_on_degree(op, n), max_degree=5)
    assert d.apply(B((2, 1))) == op.apply(B((2, 1)))
    with pytest.raises(WindowError):
        d.matrix(6)
