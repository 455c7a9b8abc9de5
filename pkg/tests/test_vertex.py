from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eqchern.chern import bbar1_display, bbar2_display
from eqchern.coeff import AuxSeries, RatFunc, WindowError, var
from eqchern.fock import FockVector, matrix_on_degree, number_operator
from eqchern.partitions import Partition, partitions_of, partitions_up_to
from eqchern.symfunc import macdonald_J, transformed_H
from eqchern.vertex import (B_apply, V_apply, V_gamma_form, V_zero_mode, W_apply, bbar_apply, bbar_k,
                            gamma_apply, gamma_exchange_sides, gamma_plus_commutator_sides,
                            series_apply)

q, t, r, a, b, m = (var(n) for n in ("q", "t", "r", "a", "b", "m"))
B = FockVector.basis
vac = FockVector.vacuum()
partitions = st.integers(0, 5).flatmap(lambda n: st.sampled_from(partitions_of(n)))


def _eigen_J(lam):
    return sum((q ** s.coarm * t ** (-s.coleg) for s in Partition(lam).all_cell_stats()), RatFunc.coerce(0))


def _eigen_H(lam):
    return sum((q ** s.coarm * t ** s.coleg for s in Partition(lam).all_cell_stats()), RatFunc.coerce(0))


def test_gamma_plus_on_vacuum():
    s = gamma_apply("+", 1, r, vac)
    assert s[0] == vac and s.low == 0


def test_gamma_minus_needs_window():
    with pytest.raises(WindowError):
        gamma_apply("-", 1, r, vac)
    with pytest.raises(ValueError):
        gamma_apply("*", 1, r, vac, 2)


def test_gamma_minus_on_vacuum():
    # Gamma_-(z)^r |0> = 1 + r z a_-1 + (r^2/2 a_-1^2 + r/2 a_-2) z^2 + ...
    s = gamma_apply("-", 1, r, vac, 2)
    assert s[1] == B((1,), r)
    assert s[2] == B((1, 1), r ** 2 / 2) + B((2,), r / 2)


@given(partitions, st.integers(1, 4))
def test_gamma_plus_commutator(mu, n):
    lhs, rhs = gamma_plus_commutator_sides(B(mu), n, r)
    assert (lhs - rhs) == 0


@pytest.mark.parametrize("mu", list(partitions_up_to(4)))
def test_gamma_exchange(mu):
    lhs, rhs = gamma_exchange_sides(B(mu), a, b, 5)
    for key in set(lhs) | set(rhs):
        assert (lhs.get(key, FockVector()) - rhs.get(key, FockVector())).is_zero()


def test_v_identity_and_gamma_form():
    qt, tt = a, b
    for mu in partitions_up_to(2):
        v = B(mu)
        assert (V_apply(v, q, t, qt, tt, 3) - V_gamma_form(v, q, t, qt, tt, 3)) == 0
        ident = V_apply(v, q, t, q, t, 3)
        assert (ident - AuxSeries("z", {0: v}, ident.low, ident.high)) == 0
    with pytest.raises(WindowError):
        V_apply(vac, q, t, a, b, None)


def test_v_zero_mode_on_vacuum():
    # annihilators kill |0>, and creations carry positive z powers
    assert V_zero_mode(vac, q, t, a, b) == vac


def test_bbar_examples():
    assert bbar_apply(vac).is_zero()
    assert bbar_apply(macdonald_J((1,))) == macdonald_J((1,))
    assert bbar_apply(macdonald_J((2,))) == macdonald_J((2,)) * (1 + q)


@pytest.mark.parametrize("lam", [lam for lam in partitions_up_to(4) if lam])
def test_bbar_eigen_relation(lam):
    j = macdonald_J(lam)
    assert bbar_apply(j) == j * _eigen_J(lam)


@pytest.mark.parametrize("lam", [(), (1,), (2, 1), (2,), (1, 1), (3,)])
def test_B_eigen_relation(lam):
    h = transformed_H(lam)
    assert B_apply(h) == h * _eigen_H(lam)
    if lam == (2, 1):
        assert _eigen_H(lam) == 1 + q + t


def test_bbar_k_zero_is_number_operator():
    assert bbar_k(0, 6).equal_terms(number_operator(6))


@pytest.mark.parametrize("k,display", [(1, bbar1_display), (2, bbar2_display)])
def test_bbar_k_displays(k, display):
    got, want = bbar_k(k, 6), display(6)
    assert got.equal_terms(want)
    for n in range(7):
        assert matrix_on_degree(got, n) == matrix_on_degree(want, n)


def test_bbar1_display_shape():
    from eqchern.partitions import GeneralizedPartition as GP
    alpha = var("alpha")
    op = bbar_k(1, 4)
    # alpha^(l(lambda+) - 1) / lambda^! on length three, (i-1)/2 (alpha-1) on a_-i a_i
    assert op.coefficient(GP((-2, 1, 1))) == alpha / 2
    assert op.coefficient(GP((-1, -1, 2))) == Fraction(1, 2)
    assert op.coefficient(GP((-3, 3))) == alpha - 1


def test_w_examples():
    t1, t2 = var("t1"), var("t2")
    # m = 0: the Gamma_+ part is trivial
    w = W_apply(vac, 3, m=0)
    g = gamma_apply("-", 1, t1 + t2, vac, 3)
    assert (w - g) == 0
    for mu in partitions_up_to(2):
        v = B(mu)
        w = W_apply(v, 3, t1=1, t2=-1)
        g = gamma_apply("+", 1, -m, v, 3)
        g = series_apply(g, lambda u: gamma_apply("-", 1, m, u, 3 - g.low))
        assert (w - g.with_high(3)) == 0
