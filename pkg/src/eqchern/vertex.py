"""Truncated vertex operators on the Fock space.

Exponentials of annihilation modes applied to a finite vector terminate and
are computed exactly.  Exponentials of creation modes never terminate, so
every such call takes an explicit window on the auxiliary variable.  Results
are :class:`~eqchern.coeff.AuxSeries` whose coefficients are Fock vectors.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any, Callable

from .coeff import AuxSeries, Matrix, RatFunc, WindowError, _is_zero, var
from .fock import FockVector, NormalOrderedOp, apply_mode
from .partitions import GeneralizedPartition, partitions_of

GP = GeneralizedPartition
Coefficient = Callable[[int], Any]


def _exp_modes(v: FockVector, coeff: Coefficient, creation: bool, top: int) -> list[FockVector]:
    """Graded pieces ``w_0..w_top`` of ``exp(sum_k coeff(k) u^k a_{-+k}) v``.

    The modes commute with each other, so ``j w_j = sum_k k coeff(k) a_{-+k} w_{j-k}``.
    """
    w = [v]
    cache: dict[int, Any] = {}
    for j in range(1, top + 1):
        acc = FockVector()
        for k in range(1, j + 1):
            prev = w[j - k]
            if prev.is_zero():
                continue
            if k not in cache:
                cache[k] = coeff(k)
            c = cache[k]
            if _is_zero(c):
                continue
            moved = apply_mode(-k if creation else k, prev)
            if moved.is_zero():
                continue
            acc = acc + moved * (c * k)
        w.append(acc * Fraction(1, j) if not acc.is_zero() else acc)
    return w


def annihilation_exp(v: FockVector, coeff: Coefficient) -> list[FockVector]:
    """``exp(sum_k coeff(k) x^k a_k) v`` graded by ``x``; exact, length ``deg v + 1``."""
    return _exp_modes(v, coeff, False, v.max_degree())


def creation_exp(v: FockVector, coeff: Coefficient, top: int) -> list[FockVector]:
    """``exp(sum_k coeff(k) x^k a_{-k}) v`` graded by ``x``, through ``x^top``."""
    return _exp_modes(v, coeff, True, top)


def _require_window(window: int | None):
    if window is None:
        raise WindowError("a window on the auxiliary variable is required")


def gamma_apply(sign: str, scalar: Any, exponent: Any, v: FockVector, window: int | None = None,
                var_name: str = "z") -> AuxSeries:
    """``Gamma_{sign}(scalar * x)^exponent v`` as a series in ``x``.

    ``Gamma_+`` terminates on ``v``: the result holds ``x^-deg .. x^0`` exactly
    (``window`` defaults to 0 there).  ``Gamma_-`` needs ``window``.
    """
    scalar = RatFunc.coerce(scalar)
    if sign == "+":
        inv = scalar.inverse()
        pieces = annihilation_exp(v, lambda k: exponent * inv ** k * Fraction(1, k))
        high = 0 if window is None else window
        return AuxSeries(var_name, {-j: w for j, w in enumerate(pieces)}, -len(pieces) + 1, high)
    if sign == "-":
        _require_window(window)
        pieces = creation_exp(v, lambda k: exponent * scalar ** k * Fraction(1, k), window)
        return AuxSeries(var_name, dict(enumerate(pieces)), 0, window)
    raise ValueError("sign must be '+' or '-'")


def series_apply(series: AuxSeries, fn: Callable[[FockVector], AuxSeries]) -> AuxSeries:
    """Apply an operator valued in series to every coefficient and collect powers."""
    out: dict[int, FockVector] = {}
    lows, highs = [], []
    for e in range(series.low, series.high + 1):
        c = series.terms.get(e)
        if c is None:
            c = FockVector()
        image = fn(c)
        lows.append(e + image.low)
        highs.append(e + image.high)
        for f, w in image.terms.items():
            out[e + f] = out[e + f] + w if e + f in out else w
    high = min(highs) if highs else series.high
    low = min(lows) if lows else series.low
    return AuxSeries(series.var, out, low, high)


def _annihilation_series(v: FockVector, coeff: Coefficient, var_name: str, high: int) -> AuxSeries:
    pieces = annihilation_exp(v, coeff)
    return AuxSeries(var_name, {-j: w for j, w in enumerate(pieces)}, -len(pieces) + 1, high)


def _creation_series(v: FockVector, coeff: Coefficient, var_name: str, top: int) -> AuxSeries:
    pieces = creation_exp(v, coeff, top)
    return AuxSeries(var_name, dict(enumerate(pieces)), 0, top)


def _two_sided(v: FockVector, create: Coefficient, annihilate: Coefficient, window: int,
               var_name: str = "z") -> AuxSeries:
    """``exp(sum create(k) x^k a_{-k}) exp(sum annihilate(k) x^-k a_k) v`` through ``x^window``."""
    pieces = annihilation_exp(v, annihilate)
    out: dict[int, FockVector] = {}
    for j, w in enumerate(pieces):
        if w.is_zero():
            continue
        top = window + j
        for i, u in enumerate(creation_exp(w, create, top)):
            e = i - j
            out[e] = out[e] + u if e in out else u
    return AuxSeries(var_name, out, -len(pieces) + 1, window)


def V_apply(v: FockVector, q: Any, t: Any, q_tilde: Any, t_tilde: Any, window: int | None) -> AuxSeries:
    """``V(z; q, t, q~, t~) v`` in the direct-exponential form."""
    _require_window(window)
    q, t, qt, tt = (RatFunc.coerce(x) for x in (q, t, q_tilde, t_tilde))
    return _two_sided(v, lambda k: (q ** k - qt ** k) * Fraction(1, k),
                      lambda k: (tt ** k - t ** k) * Fraction(1, k), window)


def V_gamma_form(v: FockVector, q: Any, t: Any, q_tilde: Any, t_tilde: Any, window: int) -> AuxSeries:
    """``Gamma_-(qz) Gamma_-(q~z)^-1 Gamma_+(t~^-1 z) Gamma_+(t^-1 z)^-1 v`` factor by factor."""
    q, t, qt, tt = (RatFunc.coerce(x) for x in (q, t, q_tilde, t_tilde))
    s = gamma_apply("+", 1 / t, -1, v, window)
    s = series_apply(s, lambda u: gamma_apply("+", 1 / tt, 1, u, window))
    low = s.low
    s = series_apply(s, lambda u: gamma_apply("-", qt, -1, u, window - low))
    s = series_apply(s, lambda u: gamma_apply("-", q, 1, u, window - low))
    return s.with_high(window)


def zero_mode(v: FockVector, create: Coefficient, annihilate: Coefficient) -> FockVector:
    """``z^0`` coefficient of the two-sided exponential applied to ``v``; exact."""
    pieces = annihilation_exp(v, annihilate)
    out = FockVector()
    for j, w in enumerate(pieces):
        if w.is_zero():
            continue
        out = out + creation_exp(w, create, j)[j]
    return out


def V_zero_mode(v: FockVector, q: Any, t: Any, q_tilde: Any, t_tilde: Any) -> FockVector:
    q, t, qt, tt = (RatFunc.coerce(x) for x in (q, t, q_tilde, t_tilde))
    return zero_mode(v, lambda k: (q ** k - qt ** k) * Fraction(1, k),
                     lambda k: (tt ** k - t ** k) * Fraction(1, k))


def bbar_apply(v: FockVector, q: Any = None, t: Any = None) -> FockVector:
    """``Bbar(q, t^-1) v = (v - V_0(z; t, t^-1, 1, q t^-1) v) / ((1-q)(1-t^-1))``."""
    q = var("q") if q is None else RatFunc.coerce(q)
    t = var("t") if t is None else RatFunc.coerce(t)
    zm = V_zero_mode(v, t, 1 / t, 1, q / t)
    return (v - zm) * (1 / ((1 - q) * (1 - 1 / t)))


@lru_cache(maxsize=None)
def bbar_matrix(n: int) -> Matrix:
    """Matrix of ``Bbar(q, t^-1)`` on degree ``n`` with symbolic ``q, t``."""
    basis = partitions_of(n)
    cols = [bbar_apply(FockVector.basis(mu)).column(n) for mu in basis]
    return [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]


def B_apply(v: FockVector, q: Any = None, t: Any = None) -> FockVector:
    """``B(q, t) v = (v - Vtilde_0(z; q, t, 1, 1) v) / ((1-q)(1-t))``."""
    q = var("q") if q is None else RatFunc.coerce(q)
    t = var("t") if t is None else RatFunc.coerce(t)
    zm = zero_mode(v, lambda k: Fraction(-1, k),
                   lambda k: (1 - q ** k) * (1 - t ** k) * Fraction(1, k))
    return (v - zm) * (1 / ((1 - q) * (1 - t)))


def W_apply(v: FockVector, window: int, m: Any = None, t1: Any = None, t2: Any = None) -> AuxSeries:
    """``Gamma_-(z)^(m+t1+t2) Gamma_+(z)^(m/(t1 t2)) v`` through ``z^window``."""
    m = var("m") if m is None else RatFunc.coerce(m)
    t1 = var("t1") if t1 is None else RatFunc.coerce(t1)
    t2 = var("t2") if t2 is None else RatFunc.coerce(t2)
    minus = m + t1 + t2
    plus = m / (t1 * t2)
    return _two_sided(v, lambda k: minus * Fraction(1, k), lambda k: plus * Fraction(1, k), window)


def W_zero_mode(v: FockVector, m: Any = None, t1: Any = None, t2: Any = None) -> FockVector:
    m = var("m") if m is None else RatFunc.coerce(m)
    t1 = var("t1") if t1 is None else RatFunc.coerce(t1)
    t2 = var("t2") if t2 is None else RatFunc.coerce(t2)
    minus = m + t1 + t2
    plus = m / (t1 * t2)
    return zero_mode(v, lambda k: minus * Fraction(1, k), lambda k: plus * Fraction(1, k))


# ---------------------------------------------------------------------------
# Bbar_k as normally ordered operators


def _series_factor(kind: str, k: int, high: int) -> AuxSeries:
    """Creation/annihilation coefficient divided by ``t0``, as a series in ``t0``.

    ``kind == "-"``: ``(t^k - 1)/k`` with ``t = e^t0``;
    ``kind == "+"``: ``(q^k - 1) t^-k / k`` with ``q = e^(alpha t0)``.
    """
    one = RatFunc.coerce(1)
    alpha = var("alpha")
    if kind == "-":
        # (e^{k t0} - 1) / (k t0) = sum_n k^n t0^n / (n+1)!
        return AuxSeries("t0", {n: one * Fraction(k ** n, factorial(n + 1)) for n in range(high + 1)},
                         0, high)
    # (e^{k(alpha-1) t0} - e^{-k t0}) / (k t0)
    a = alpha - 1
    terms = {}
    for n in range(high + 1):
        terms[n] = (a ** (n + 1) - RatFunc.coerce((-1) ** (n + 1))) * Fraction(k ** n, factorial(n + 1))
    return AuxSeries("t0", terms, 0, high)


def _prefactor(high: int) -> AuxSeries:
    """``-t0^2 / ((1 - e^(alpha t0)) (1 - e^-t0))`` as a series in ``t0``."""
    one = RatFunc.coerce(1)
    alpha = var("alpha")
    # (1 - e^{alpha t0}) / t0 = -sum alpha^{n+1} t0^n/(n+1)!
    a = AuxSeries("t0", {n: -(alpha ** (n + 1)) * Fraction(1, factorial(n + 1)) for n in range(high + 1)},
                  0, high)
    # (1 - e^{-t0}) / t0 = sum (-1)^n t0^n/(n+1)!
    b = AuxSeries("t0", {n: one * Fraction((-1) ** n, factorial(n + 1)) for n in range(high + 1)}, 0, high)
    return -(a * b).inverse()


def bbar_k(k: int, degree: int) -> NormalOrderedOp:
    """``Coeff_{t0^k}`` of ``Bbar(e^(alpha t0), e^-t0)`` exact on degrees ``<= degree``.

    Each monomial ``a_lambda`` (``|lambda| = 0``) carries
    ``-prod x_i / ((1-q)(1-t^-1) lambda^!)``, which is ``O(t0^(l(lambda) - 2))``,
    so only lengths up to ``k + 2`` contribute.
    """
    from .partitions import generalized_partitions

    if k < 0:
        raise ValueError("k must be non-negative")
    pre = _prefactor(k)
    factors: dict[tuple[str, int], AuxSeries] = {}
    out: dict[GP, Any] = {}
    for lam in generalized_partitions(0, k + 2, degree, min_length=2, max_plus_size=degree):
        need = k - (len(lam) - 2)
        if need < 0:
            continue
        s = pre.with_high(need)
        for p in lam:
            key = ("-" if p < 0 else "+", abs(p))
            if key not in factors:
                factors[key] = _series_factor(key[0], key[1], k)
            s = s * factors[key].with_high(need)
        c = s.coefficient(need)
        if not _is_zero(c):
            f = lam.factorial()
            out[lam] = c * Fraction(1, f) if f != 1 else c
    return NormalOrderedOp(out, degree)


# ---------------------------------------------------------------------------
# vertex-operator identities, evaluated on vectors


def gamma_plus_commutator_sides(v: FockVector, n: int, r: Any, z: Any = None) -> tuple[AuxSeries, AuxSeries]:
    """Both sides of ``[Gamma_+(z)^r, a_{-n}] = r z^-n Gamma_+(z)^r`` applied to ``v``."""
    z = RatFunc.coerce(1) if z is None else z
    lhs = gamma_apply("+", z, r, apply_mode(-n, v)) - series_apply(
        gamma_apply("+", z, r, v), lambda u: AuxSeries("z", {0: apply_mode(-n, u)}, 0, 0))
    rhs = gamma_apply("+", z, r, v).shift(-n) * RatFunc.coerce(r)
    return lhs, rhs


def gamma_exchange_sides(v: FockVector, a: Any, b: Any, window: int) -> tuple[dict, dict]:
    """Both sides of ``Gamma_+(z)^a Gamma_-(y)^b = (1 - y/z)^(-ab) Gamma_-(y)^b Gamma_+(z)^a``.

    Returned as dictionaries ``(i, j) -> vector`` for the coefficient of
    ``y^i z^j``, complete for ``i <= window``.
    """
    a, b = RatFunc.coerce(a), RatFunc.coerce(b)
    lhs: dict[tuple[int, int], FockVector] = {}
    for i, u in enumerate(creation_exp(v, lambda k: b * Fraction(1, k), window)):
        for j, w in enumerate(annihilation_exp(u, lambda k: a * Fraction(1, k))):
            if not w.is_zero():
                lhs[(i, -j)] = w
    inner: dict[tuple[int, int], FockVector] = {}
    for j, u in enumerate(annihilation_exp(v, lambda k: a * Fraction(1, k))):
        for i, w in enumerate(creation_exp(u, lambda k: b * Fraction(1, k), window)):
            if not w.is_zero():
                inner[(i, -j)] = w
    # (1 - y/z)^(-ab) = sum_n (ab)(ab+1)...(ab+n-1)/n! (y/z)^n
    binom = [RatFunc.coerce(1)]
    ab = a * b
    for n in range(1, window + 1):
        binom.append(binom[-1] * (ab + (n - 1)) * Fraction(1, n))
    rhs: dict[tuple[int, int], FockVector] = {}
    for (i, j), w in inner.items():
        for n in range(0, window - i + 1):
            key = (i + n, j - n)
            val = w * binom[n]
            rhs[key] = rhs[key] + val if key in rhs else val
    return lhs, rhs
