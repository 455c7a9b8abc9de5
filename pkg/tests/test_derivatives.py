import pytest
from hypothesis import given, strategies as st

from eqchern.coeff import RatFunc, var
from eqchern.derivatives import (a_prime_closed, derivative, derivative_chain, epsilon,
                                 leading_coefficient, leading_term_check)
from eqchern.fock import NormalOrderedOp, number_operator
from eqchern.partitions import GeneralizedPartition as GP

t1, t2 = var("t1"), var("t2")
nonzero = st.integers(-10, 10).filter(bool)


@given(nonzero, nonzero)
def test_epsilon(i, j):
    assert epsilon(i, j) == epsilon(j, i)
    assert epsilon(i, j) == int((i * j < 0 and i + j > 0) or (i < 0 and j < 0))


def test_epsilon_zero():
    with pytest.raises(ValueError):
        epsilon(0, 1)


def test_closed_form_examples():
    op = a_prime_closed(1, 4)
    # both orders of the opposite-sign pair carry -t1 t2
    assert op.coefficient(GP((-1, 2))) == -(t1 * t2)
    assert op.coefficient(GP((1,))) == 0
    op = a_prime_closed(-1, 4)
    assert op.coefficient(GP((-2, 1))) == -1
    assert a_prime_closed(2, 4).coefficient(GP((2,))) == t1 + t2


@pytest.mark.parametrize("n", [-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])
def test_first_derivative(n):
    assert derivative(NormalOrderedOp.mode(n), 1, 8).equal_terms(a_prime_closed(n, 8))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_boundary_specialization(n):
    # t1 + t2 vanishes at (1, -1), so the linear term drops
    op = a_prime_closed(-n, 6)
    c = RatFunc.coerce(op.coefficient(GP((-n,))))
    assert c.subs({"t1": 1, "t2": -1}) == 0


def test_derivative_of_g0():
    assert derivative(number_operator(8), 1, 6).is_zero()


@pytest.mark.parametrize("n,k", [(1, 2), (2, 2)])
def test_chain_consistency(n, k):
    d = n + 2 * k + 2
    f = NormalOrderedOp.mode(-n)
    chain = derivative_chain(f, k, d)
    assert chain[k].equal_terms(derivative(f, k, d))
    assert chain[k].equal_terms(derivative(chain[k - 1], 1, d))


def test_leading_coefficient_formula():
    lam = GP((-2, -1, 1, 1))
    # 1^2 2! (-1)^2 (t1 t2)^1 / 2!
    assert leading_coefficient(1, 2, lam) == t1 * t2


@pytest.mark.parametrize("n,k", [(n, k) for n in (1, 2, 3) for k in (0, 1, 2, 3)])
def test_leading_terms(n, k):
    rep = leading_term_check(n, k)
    assert rep["status"] == "PASS" and rep["rows"]
    assert all(r["agree"] for r in rep["rows"])


def test_leading_zero_order():
    rep = leading_term_check(2, 0)
    assert [(r["monomial"], r["got"]) for r in rep["rows"]] == [("(-2)^1", "1")]


def test_reexpansion():
    assert leading_term_check(1, 1, reexpand=True)["reexpansion_matches"]
