"""Symmetric functions in the power-sum basis.

A symmetric function is a :class:`~eqchern.fock.FockVector` whose key
``lambda`` stands for ``p_lambda``.  Jack and Macdonald ``P`` functions come
from Gram-Schmidt over a linear extension of dominance order, with monomial
functions obtained from the brute-force ``p -> m`` transition matrix.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Any, Callable

from .coeff import AuxSeries, RatFunc, WindowError, _is_zero, mat_inverse, var
from .fock import FockVector
from .partitions import Dominance, Partition, dominance, partitions_of

SymFunc = FockVector


# ---------------------------------------------------------------------------
# monomial <-> power sum


def _count_assignments(parts: tuple[int, ...], target: tuple[int, ...]) -> int:
    """Number of ways to send each part to a slot so slot sums equal ``target``."""

    @lru_cache(maxsize=None)
    def go(i: int, rest: tuple[int, ...]) -> int:
        if i == len(parts):
            return 1 if not any(rest) else 0
        total = 0
        p = parts[i]
        for j, r in enumerate(rest):
            if r >= p:
                total += go(i + 1, rest[:j] + (r - p,) + rest[j + 1:])
        return total

    return go(0, target)


@lru_cache(maxsize=None)
def p_to_m(n: int) -> tuple[tuple[int, ...], ...]:
    """``L[rho][mu]``: coefficient of ``m_mu`` in ``p_rho`` (integer matrix)."""
    basis = partitions_of(n)
    return tuple(tuple(_count_assignments(tuple(rho), tuple(mu)) for mu in basis) for rho in basis)


@lru_cache(maxsize=None)
def m_to_p(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """``M[mu][rho]``: coefficient of ``p_rho`` in ``m_mu``."""
    if n == 0:
        return ((Fraction(1),),)
    L = p_to_m(n)
    # p = L m, hence m = L^{-1} p
    inv = mat_inverse([[Fraction(x) for x in row] for row in L])
    return tuple(tuple(Fraction(x) for x in row) for row in inv)


def monomial(mu) -> SymFunc:
    mu = Partition(mu)
    row = m_to_p(mu.size)[partitions_of(mu.size).index(mu)]
    return FockVector(dict(zip(partitions_of(mu.size), row)))


def power_sum(rho, coeff: Any = 1) -> SymFunc:
    return FockVector.basis(rho, coeff)


# ---------------------------------------------------------------------------
# inner products


class InnerProduct:
    """A diagonal bilinear form on power sums."""

    def __init__(self, tag: str, weight: Callable[[Partition], Any]):
        self.tag = tag
        self._weight = weight
        self._cache: dict[Partition, Any] = {}

    def weight(self, rho: Partition) -> Any:
        if rho not in self._cache:
            self._cache[rho] = self._weight(rho)
        return self._cache[rho]

    def __call__(self, f: SymFunc, g: SymFunc) -> Any:
        acc = 0
        for rho, c in f.terms.items():
            d = g.terms.get(rho)
            if d is not None:
                acc = c * d * self.weight(rho) + acc
        return acc

    def __repr__(self):
        return f"InnerProduct({self.tag})"


@lru_cache(maxsize=None)
def jack_product(alpha: str = "alpha") -> InnerProduct:
    a = var(alpha)
    return InnerProduct(f"jack({alpha})", lambda rho: a ** len(rho) * rho.z())


@lru_cache(maxsize=None)
def macdonald_product(q: str = "q", t: str = "t") -> InnerProduct:
    Q, T = var(q), var(t)

    def w(rho: Partition):
        out = RatFunc.coerce(rho.z())
        for k in rho:
            out = out * (1 - Q ** k) / (1 - T ** k)
        return out

    return InnerProduct(f"macdonald({q},{t})", w)


# ---------------------------------------------------------------------------
# Gram-Schmidt


_P_CACHE: dict[tuple[str, int], dict[Partition, SymFunc]] = {}


def _p_functions(n: int, ip: InnerProduct) -> dict[Partition, SymFunc]:
    key = (ip.tag, n)
    if key in _P_CACHE:
        return _P_CACHE[key]
    out: dict[Partition, SymFunc] = {}
    norms: dict[Partition, Any] = {}
    for lam in reversed(partitions_of(n)):  # increasing lex order extends dominance
        f = monomial(lam)
        for mu, pmu in out.items():
            if dominance(mu, lam) is not Dominance.LESS:
                continue
            c = ip(f, pmu)
            if not _is_zero(c):
                f = f - pmu * (c / norms[mu])
        out[lam] = f
        norms[lam] = ip(f, f)
    _P_CACHE[key] = out
    return out


def gram_schmidt_P(lam, ip: InnerProduct) -> SymFunc:
    """``P_lambda``: ``m_lambda`` plus lower terms, orthogonal to dominated ``P_mu``."""
    lam = Partition(lam)
    return _p_functions(lam.size, ip)[lam]


def jack_P(lam, alpha: str = "alpha") -> SymFunc:
    return gram_schmidt_P(lam, jack_product(alpha))


def macdonald_P(lam, q: str = "q", t: str = "t") -> SymFunc:
    return gram_schmidt_P(lam, macdonald_product(q, t))


def jack_J(lam, alpha: str = "alpha") -> SymFunc:
    """Integral form ``J = prod_cells (alpha a + l + 1) P``."""
    lam = Partition(lam)
    a = var(alpha)
    c = prod((a * s.arm + s.leg + 1 for s in lam.all_cell_stats()), start=RatFunc.coerce(1))
    return jack_P(lam, alpha) * c


def macdonald_J(lam, q: str = "q", t: str = "t") -> SymFunc:
    """Integral form ``J = prod_cells (1 - q^a t^(l+1)) P``."""
    lam = Partition(lam)
    Q, T = var(q), var(t)
    c = prod((1 - Q ** s.arm * T ** (s.leg + 1) for s in lam.all_cell_stats()),
             start=RatFunc.coerce(1))
    return macdonald_P(lam, q, t) * c


def plethysm_scale(f: SymFunc, factor: Callable[[int], Any]) -> SymFunc:
    """``p_k -> factor(k) p_k``, extended multiplicatively."""
    cache: dict[int, Any] = {}

    def fac(k: int):
        if k not in cache:
            cache[k] = factor(k)
        return cache[k]

    out = {}
    for rho, c in f.terms.items():
        s = c
        for k in rho:
            s = s * fac(k)
        out[rho] = s
    return FockVector(out)


def substitute(f: SymFunc, mapping: dict[str, Any]) -> SymFunc:
    return f.map(lambda c: RatFunc.coerce(c).subs(mapping))


def transformed_H(lam, q: str = "q", t: str = "t") -> SymFunc:
    """``H~ = t^n(lambda) J(X/(1 - t^-1); q, t^-1)``."""
    lam = Partition(lam)
    T = var(t)
    j = substitute(macdonald_J(lam, q, t), {t: 1 / T})
    return plethysm_scale(j, lambda k: 1 / (1 - T ** (-k))) * T ** lam.n()


def J_from_H(h: SymFunc, lam, q: str = "q", t: str = "t") -> SymFunc:
    """Inverse relation ``J = t^n(lambda) H~[(1 - t)X; q, t^-1]``."""
    lam = Partition(lam)
    T = var(t)
    hs = substitute(h, {t: 1 / T})
    return plethysm_scale(hs, lambda k: 1 - T ** k) * T ** lam.n()


def fixed_point_class(lam, t1: str = "t1", t2: str = "t2") -> FockVector:
    """``t2^|lambda| t1^l(.) J^(alpha)`` at ``alpha = -t1/t2``."""
    lam = Partition(lam)
    T1, T2 = var(t1), var(t2)
    alpha = -T1 / T2
    scale = T2 ** lam.size
    out = {}
    for mu, c in jack_J(lam).terms.items():
        out[mu] = c.substitute("alpha", alpha) * scale * T1 ** len(mu)
    return FockVector(out)


def jack_J_limit(lam, window: int | None = None) -> SymFunc:
    """Jack integral form as ``(1-t)^-|lambda| J(X; t^alpha, t)`` at ``t -> 1``.

    The limit is taken with ``t = e^t0`` and ``q = e^(alpha t0)`` as series in
    ``t0``; the window grows until the ``t0^0`` coefficient is determined.
    """
    lam = Partition(lam)
    n = lam.size
    high = window or 2 * n + 4
    A = var("alpha")
    jm = macdonald_J(lam)
    while True:
        one = AuxSeries.constant("t0", RatFunc.coerce(1), high)
        Qs = AuxSeries.exp_linear("t0", A, high, RatFunc.coerce(1))
        Ts = AuxSeries.exp_linear("t0", RatFunc.coerce(1), high, RatFunc.coerce(1))
        pre = (one - Ts).inverse()
        scale = one
        for _ in range(n):
            scale = scale * pre
        try:
            out = {}
            for mu, c in jm.terms.items():
                s = c.evaluate({"q": Qs, "t": Ts}, one) * scale
                for e in range(s.low, 0):
                    if not _is_zero(s.coefficient(e)):
                        raise ArithmeticError(f"the limit diverges at p_{tuple(mu)}")
                out[mu] = s.coefficient(0)
            return FockVector(out)
        except WindowError:
            high *= 2


def schur_jacobi_trudi(lam) -> SymFunc:
    """Schur function via ``det(h_{lambda_i - i + j})`` with ``h_n`` from power sums."""
    lam = Partition(lam)
    k = len(lam)

    def h(n: int) -> SymFunc:
        if n < 0:
            return FockVector()
        return FockVector({rho: Fraction(1, rho.z()) for rho in partitions_of(n)})

    def mul(f: SymFunc, g: SymFunc) -> SymFunc:
        out: dict[Partition, Any] = {}
        for a, c in f.terms.items():
            for b, d in g.terms.items():
                key = Partition.from_multiset(list(a) + list(b))
                out[key] = out.get(key, 0) + c * d
        return FockVector(out)

    def det(rows: list[int], cols: list[int]) -> SymFunc:
        if not rows:
            return FockVector.vacuum()
        out = FockVector()
        i = rows[0]
        for pos, j in enumerate(cols):
            minor = det(rows[1:], cols[:pos] + cols[pos + 1:])
            term = mul(h(lam[i] - i + j), minor)
            out = out + (term if pos % 2 == 0 else -term)
        return out

    return det(list(range(k)), list(range(k)))
