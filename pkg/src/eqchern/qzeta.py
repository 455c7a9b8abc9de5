"""Brackets, bi-brackets and Z-values as truncated q-series over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Any, Callable, Iterable, Sequence

from .coeff import QSeries, _is_zero, solve_least_pivots


@dataclass(frozen=True)
class BracketIndex:
    """Upper row ``s`` and lower row ``r`` of a (bi-)bracket; ``r`` defaults to zeros."""

    s: tuple[int, ...]
    r: tuple[int, ...] = ()

    def __post_init__(self):
        s = tuple(int(x) for x in self.s)
        r = tuple(int(x) for x in self.r) if self.r else (0,) * len(s)
        if len(r) != len(s):
            raise ValueError("upper and lower rows must have the same length")
        if any(x < 1 for x in s) or any(x < 0 for x in r):
            raise ValueError("need s_i >= 1 and r_i >= 0")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "r", r)

    @property
    def depth(self) -> int:
        return len(self.s)

    @property
    def weight(self) -> int:
        return sum(self.s) + sum(self.r)

    @property
    def is_bracket(self) -> bool:
        return not any(self.r)

    def __str__(self):
        if self.is_bracket:
            return "[" + ",".join(map(str, self.s)) + "]"
        return "[" + ",".join(map(str, self.s)) + ";" + ",".join(map(str, self.r)) + "]"


@dataclass(frozen=True)
class TaggedSeries:
    """A q-series with the nominal weight and depth it was built from."""

    series: QSeries
    weight: int
    depth: int


def eulerian_poly(s: int) -> tuple[int, ...]:
    """Coefficients of ``P_{s-1}(t)``, lowest degree first.

    Defined by ``t P_{s-1}(t) / (1-t)^s = sum_{d>=1} d^(s-1) t^d``.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    # t P(t) = (1-t)^s sum_d d^(s-1) t^d, a polynomial of degree <= s
    tp = []
    for n in range(s + 1):
        tp.append(sum(comb(s, i) * (-1) ** i * (n - i) ** (s - 1) for i in range(0, n)))
    while len(tp) > 1 and tp[-1] == 0:
        tp.pop()
    if tp[0] != 0:
        raise ArithmeticError("t P(t) must vanish at t = 0")
    return tuple(tp[1:])


def _nested_sum(factor: Callable[[int, int], list], depth: int, order: int) -> list:
    """``sum_{u_1 > ... > u_l >= 1} prod_i factor(i, u_i)`` as a coefficient list.

    ``factor(i, u)`` returns the q-expansion of the ``i``-th factor, which
    must start at ``q^u`` or later.
    """
    if depth == 0:
        return [1] + [0] * order
    # below[u] holds the sum over the deeper indices with all of them < u
    below = [[1] + [0] * order for _ in range(order + 2)]
    for i in range(depth - 1, -1, -1):
        level = [[0] * (order + 1) for _ in range(order + 2)]
        running = [0] * (order + 1)
        for u in range(1, order + 1):
            f = factor(i, u)
            inner = below[u]
            prod = [0] * (order + 1)
            for a, x in enumerate(f):
                if _is_zero(x):
                    continue
                for b in range(order + 1 - a):
                    y = inner[b]
                    if not _is_zero(y):
                        prod[a + b] += x * y
            running = [x + y for x, y in zip(running, prod)]
            level[u + 1] = list(running)
        level[order + 1] = list(running)
        below = level
    return below[order + 1]


def bibracket(s: Sequence[int], r: Sequence[int] | None = None, q_order: int = 12) -> QSeries:
    """The bi-bracket with rows ``s`` and ``r`` through ``q^q_order``."""
    idx = BracketIndex(tuple(s), tuple(r) if r is not None else ())

    @lru_cache(maxsize=None)
    def factor(i: int, u: int) -> list:
        si, ri = idx.s[i], idx.r[i]
        out = [Fraction(0)] * (q_order + 1)
        scale = Fraction(u ** ri, factorial(ri) * factorial(si - 1))
        v = 1
        while u * v <= q_order:
            out[u * v] += scale * v ** (si - 1)
            v += 1
        return out

    return QSeries(_nested_sum(factor, idx.depth, q_order), q_order)


def bracket(s: Sequence[int], q_order: int = 12) -> QSeries:
    """``[s_1, ..., s_l]`` through the bi-bracket double sum."""
    return bibracket(s, None, q_order)


def z_q(polys: Callable[[int], Sequence[Any]], s: Sequence[int], q_order: int) -> QSeries:
    """``sum_{n_1 > ... > n_l} prod Q_{s_i}(q^n_i) / (1 - q^n_i)^{s_i}``.

    ``polys(s)`` gives the coefficients of ``Q_s``, lowest degree first.
    """
    s = tuple(s)

    @lru_cache(maxsize=None)
    def factor(i: int, n: int) -> list:
        coeffs = polys(s[i])
        num = QSeries.monomial(0, 0, q_order)
        for d, c in enumerate(coeffs):
            if c:
                num = num + QSeries.monomial(Fraction(c), d * n, q_order)
        den = QSeries.one(q_order) - QSeries.monomial(1, n, q_order)
        return list((num * den.inverse() ** s[i]).coeffs) if s[i] else list(num.coeffs)

    return QSeries(_nested_sum(factor, len(s), q_order), q_order)


def q_eulerian(s: int) -> tuple[Fraction, ...]:
    """``Q^E_s(t) = t P_{s-1}(t) / (s-1)!``."""
    p = eulerian_poly(s)
    return (Fraction(0),) + tuple(Fraction(c, factorial(s - 1)) for c in p)


def q_odd_even(s: int) -> tuple[int, ...]:
    """``Q^O_s``: ``t^(s/2)`` for even ``s``, ``t^((s-1)/2) (t + 1)`` for odd ``s``."""
    if s < 2:
        raise ValueError("Z-values need s >= 2")
    if s % 2 == 0:
        return (0,) * (s // 2) + (1,)
    return (0,) * ((s - 1) // 2) + (1, 1)


def bracket_eulerian(s: Sequence[int], q_order: int = 12) -> QSeries:
    """The bracket computed from the Eulerian numerators, as a cross-check."""
    return z_q(q_eulerian, s, q_order)


def z_value(s: Sequence[int], q_order: int = 12) -> QSeries:
    if any(x < 2 for x in s):
        raise ValueError("Z-values need every s_i >= 2")
    return z_q(q_odd_even, s, q_order)


def tagged_bracket(s: Sequence[int], r: Sequence[int] | None = None, q_order: int = 12) -> TaggedSeries:
    idx = BracketIndex(tuple(s), tuple(r) if r is not None else ())
    return TaggedSeries(bibracket(idx.s, idx.r, q_order), idx.weight, idx.depth)


# ---------------------------------------------------------------------------
# fitting


ONE = BracketIndex(())


@dataclass
class FitResult:
    ok: bool
    coefficients: dict[BracketIndex, Fraction]
    first_bad_power: int | None = None

    def __str__(self):
        if not self.ok:
            return f"no fit (first failing power q^{self.first_bad_power})"
        parts = [f"{c}*{idx if idx.depth else '1'}" for idx, c in self.coefficients.items() if c]
        return " + ".join(parts) or "0"


def brackets_up_to_weight(weight: int, min_s: int = 1) -> list[BracketIndex]:
    """All bracket indices of weight ``<= weight`` with parts ``>= min_s``, depth 1 first."""

    def compositions(n: int) -> Iterable[tuple[int, ...]]:
        if n == 0:
            yield ()
            return
        for first in range(min_s, n + 1):
            for rest in compositions(n - first):
                yield (first,) + rest

    out = [BracketIndex(c) for w in range(1, weight + 1) for c in compositions(w)]
    return sorted(out, key=lambda b: (b.depth, b.weight, b.s))


def fit_in_bracket_span(f: QSeries, candidates: Sequence[BracketIndex], q_order: int | None = None,
                        margin: int = 10) -> FitResult:
    """Write ``f`` as a rational combination of the candidate brackets.

    ``ONE`` (the empty index) stands for the constant series.  Every available
    coefficient ``q^0 .. q^q_order`` has to match.
    """
    q_order = f.order if q_order is None else q_order
    if q_order < len(candidates) + margin:
        raise ValueError(f"q-order {q_order} is too small for {len(candidates)} candidates "
                         f"with margin {margin}")
    cols = [bibracket(c.s, c.r, q_order).coeffs if c.depth else (1,) + (0,) * q_order
            for c in candidates]
    rhs = [f.coefficient(n) for n in range(q_order + 1)]
    mat = [[col[n] for col in cols] for n in range(q_order + 1)]
    x, _ = solve_least_pivots(mat, rhs)
    if x is not None:
        return FitResult(True, dict(zip(candidates, x)))
    lo, hi = 0, q_order
    while lo < hi:
        mid = (lo + hi) // 2
        if solve_least_pivots(mat[: mid + 1], rhs[: mid + 1])[0] is None:
            hi = mid
        else:
            lo = mid + 1
    return FitResult(False, {}, lo)
