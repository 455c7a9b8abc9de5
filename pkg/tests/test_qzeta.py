from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from eqchern.coeff import QSeries, euler_function
from eqchern.qzeta import (ONE, BracketIndex, bibracket, bracket, bracket_eulerian,
                           brackets_up_to_weight, eulerian_poly, fit_in_bracket_span, tagged_bracket,
                           z_value)


def _sigma(n, e):
    return sum(d ** e for d in range(1, n + 1) if n % d == 0)


def test_eulerian_examples():
    assert eulerian_poly(1) == (1,)
    assert eulerian_poly(2) == (1,)
    assert eulerian_poly(3) == (1, 1)
    assert eulerian_poly(4) == (1, 4, 1)


@given(st.integers(1, 7))
def test_eulerian_generating_function(s):
    # t P(t) / (1-t)^s = sum d^(s-1) t^d
    p = QSeries((0,) + eulerian_poly(s), 12)
    denom = QSeries([1, -1], 12) ** s
    assert p * denom.inverse() == QSeries([0] + [d ** (s - 1) for d in range(1, 13)], 12)


def test_bracket_examples():
    assert bracket([], 5) == QSeries.one(5)
    assert bracket([2], 4).coeffs == (0, 1, 3, 4, 7)
    assert bracket([1], 3).coeffs == (0, 1, 2, 2)


@pytest.mark.parametrize("s", range(1, 7))
def test_single_bracket_divisor_sums(s):
    got = bracket([s], 20)
    for n in range(1, 21):
        assert got[n] == Fraction(_sigma(n, s - 1), factorial(s - 1))


def test_z_values():
    b2, b3, b4 = bracket([2], 30), bracket([3], 30), bracket([4], 30)
    assert z_value([2], 30) == b2
    assert z_value([3], 30) == b3 * 2
    assert z_value([4], 30) == b4 - b2 * Fraction(1, 6)
    assert z_value([], 4) == QSeries.one(4)
    with pytest.raises(ValueError):
        z_value([2, 1], 10)


@pytest.mark.parametrize("s", [(1,), (2,), (3,), (2, 1), (3, 2), (2, 1, 1)])
def test_bibracket_zero_row_is_bracket(s):
    assert bibracket(s, (0,) * len(s), 12) == bracket_eulerian(s, 12)
    assert bracket(s, 12) == bracket_eulerian(s, 12)


def test_bibracket_examples():
    # sum over (u, v) of u q^(u v) is sum sigma_1(n) q^n
    assert bibracket((1,), (1,), 3).coeffs == (0, 1, 3, 4)
    assert bibracket((), (), 3) == QSeries.one(3)


def test_bracket_index():
    i = BracketIndex((2, 1), (1, 0))
    assert (i.weight, i.depth, i.is_bracket) == (4, 2, False)
    assert BracketIndex((2, 1)).weight == 3 and str(BracketIndex((2, 1))) == "[2,1]"
    with pytest.raises(ValueError):
        BracketIndex((2, 1), (0,))
    with pytest.raises(ValueError):
        BracketIndex((0,))
    t = tagged_bracket([2, 1], q_order=6)
    assert (t.weight, t.depth) == (3, 2)


def test_fits():
    b2, b3 = bracket([2], 30), bracket([3], 30)
    res = fit_in_bracket_span(b2 + b3 * 3, [BracketIndex((2,)), BracketIndex((3,))])
    assert res.ok and res.coefficients == {BracketIndex((2,)): 1, BracketIndex((3,)): 3}
    res = fit_in_bracket_span(z_value([4], 30), [BracketIndex((4,)), BracketIndex((2,))])
    assert res.ok and res.coefficients[BracketIndex((2,))] == Fraction(-1, 6)
    cusp = euler_function(30).shift(1)
    res = fit_in_bracket_span(cusp, [BracketIndex((2,)), BracketIndex((3,))])
    assert not res.ok and res.first_bad_power is not None


def test_fit_needs_margin():
    with pytest.raises(ValueError):
        fit_in_bracket_span(bracket([2], 5), [BracketIndex((2,))])


def test_fit_with_constant():
    res = fit_in_bracket_span(bracket([2], 20) + QSeries.one(20) * 5, [ONE, BracketIndex((2,))])
    assert res.ok and res.coefficients[ONE] == 5


def test_stuffle_square():
    b2 = bracket([2], 40)
    cands = [BracketIndex((4,)), BracketIndex((2, 2)), BracketIndex((2,))]
    res = fit_in_bracket_span(b2 * b2, cands)
    assert res.ok
    assert res.coefficients == {cands[0]: 1, cands[1]: 2, cands[2]: Fraction(-1, 6)}


def test_brackets_up_to_weight():
    got = brackets_up_to_weight(3)
    assert set(map(str, got)) == {"[1]", "[2]", "[3]", "[1,1]", "[2,1]", "[1,2]", "[1,1,1]"}
    assert all(i.weight <= 3 for i in got)
    assert all(i.s[0] > 1 for i in brackets_up_to_weight(4, min_s=2))
