"""Trace generating series of products of Chern character operators.

The engine is the eigenvalue sum over partitions.  Closed forms and direct
Fock-space traces are kept as cross-checks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial
from typing import Any, Sequence

from .coeff import AuxSeries, QSeries, RatFunc, _exp_coeffs, _is_zero, euler_function, pochhammer, var
from .fock import FockVector
from .partitions import Partition, partitions_of
from .qzeta import ONE, BracketIndex, bracket, brackets_up_to_weight, fit_in_bracket_span

log = logging.getLogger(__name__)


@dataclass
class TraceSeries:
    series: QSeries
    klist: tuple[int, ...]
    route: str
    params: dict = field(default_factory=dict)

    @property
    def qmax(self) -> int:
        return self.series.order


def _symbols(m: Any, t1: Any, t2: Any):
    return (var("m") if m is None else m, var("t1") if t1 is None else t1,
            var("t2") if t2 is None else t2)


def a_diag(lam, m: Any = None, t1: Any = None, t2: Any = None) -> Any:
    """Diagonal coefficient ``a_{lambda,lambda}`` of the vertex operator on fixed-point classes."""
    m, t1, t2 = _symbols(m, t1, t2)
    lam = Partition(lam)
    num: Any = 1
    den: Any = 1
    for c in lam.all_cell_stats():
        u = t2 * (c.leg + 1) - t1 * c.arm
        w = t1 * (c.arm + 1) - t2 * c.leg
        num = num * (m + u) * (m + w)
        den = den * u * w
    if _is_zero(den):
        raise ZeroDivisionError(f"a_diag{tuple(lam)} has a vanishing denominator at these values")
    return num / den if not isinstance(num, int) or not isinstance(den, int) else Fraction(num, den)


def cell_power_sum(lam: Partition, k: int, t1: Any, t2: Any) -> Any:
    """``sum_cells (-1)^k/k! (a' t1 + l' t2)^k`` for any ring values ``t1, t2``."""
    acc: Any = 0
    for i, row in enumerate(lam):
        for j in range(row):
            acc = (t1 * j + t2 * i) ** k + acc
    return acc * Fraction((-1) ** k, factorial(k))


def raw_trace(klist: Sequence[int], q_order: int = 10, m: Any = None, t1: Any = None,
              t2: Any = None) -> TraceSeries:
    """``sum_lambda q^|lambda| a_{lambda,lambda} prod_j c_{lambda,k_j}`` through ``q^q_order``."""
    m, t1, t2 = _symbols(m, t1, t2)
    klist = tuple(klist)
    coeffs: list[Any] = []
    for n in range(q_order + 1):
        acc: Any = 0
        for lam in partitions_of(n):
            term: Any = 1
            for k in klist:
                term = cell_power_sum(lam, k, t1, t2) * term
                if _is_zero(term):
                    break
            if _is_zero(term):
                continue
            if not _is_zero(m):
                term = a_diag(lam, m, t1, t2) * term
            acc = term + acc
        coeffs.append(acc)
        log.debug("raw trace %s: q^%d done", klist, n)
    return TraceSeries(QSeries(coeffs, q_order), klist, "eigen", {"m": str(m)})


def vacuum_exponent(m: Any = None, t1: Any = None, t2: Any = None) -> Any:
    """``(m + t1 + t2) m / (t1 t2)``."""
    m, t1, t2 = _symbols(m, t1, t2)
    return (m + t1 + t2) * m / (t1 * t2)


def vacuum_trace(q_order: int = 10, m: Any = None, t1: Any = None, t2: Any = None) -> TraceSeries:
    """``(q;q)_inf^(-1 - (m+t1+t2) m/(t1 t2))`` via exp/log."""
    c = vacuum_exponent(m, t1, t2)
    s = euler_function(q_order).power(-1 - c) if not _is_zero(c) else euler_function(q_order).inverse()
    return TraceSeries(s, (), "closed-form", {"m": str(m)})


def reduced(klist: Sequence[int], q_order: int = 10, m: Any = None, t1: Any = None,
            t2: Any = None) -> TraceSeries:
    raw = raw_trace(klist, q_order, m, t1, t2)
    # at m = 0 the exponent vanishes; skipping it also allows t2 = 0
    c = 0 if m is not None and _is_zero(m) else vacuum_exponent(m, t1, t2)
    euler = euler_function(q_order)
    factor = euler if _is_zero(c) else euler.power(1 + c)
    return TraceSeries(raw.series * factor, raw.klist, "eigen", raw.params)


def reduced_ch0_closed(q_order: int = 10) -> QSeries:
    return bracket([2], q_order) * (1 + vacuum_exponent())


def reduced_ch1_closed(q_order: int = 10) -> QSeries:
    t1, t2 = var("t1"), var("t2")
    pre = t1 + t2 + vacuum_exponent() * (t1 + t2)
    return (bracket([2], q_order) - bracket([3], q_order) * 2) * (pre * Fraction(1, 2))


# ---------------------------------------------------------------------------
# the m = 0 one-point formula


def _product_ratio_log(k: int, q_order: int) -> QSeries:
    """``log`` of ``(q)(qt/t q)/((qt q)(q/t))`` with ``qt = e^(alpha z)``, ``t~ = e^z``.

    Equals ``-sum_N q^N sum_{r|N} (1/r)(e^(r alpha z) - 1)(e^(-r z) - 1)``;
    coefficients are series in ``z`` through ``z^(k+2)``.
    """
    high = k + 2
    one = RatFunc.coerce(1)
    alpha = var("alpha")
    coeffs: list[Any] = [AuxSeries("z", {}, 0, high)]
    cache: dict[int, AuxSeries] = {}
    for n in range(1, q_order + 1):
        acc = AuxSeries("z", {}, 0, high)
        for r in range(1, n + 1):
            if n % r:
                continue
            if r not in cache:
                a = AuxSeries.exp_linear("z", alpha * r, high, one) - AuxSeries.constant("z", one, high)
                b = AuxSeries.exp_linear("z", one * (-r), high, one) - AuxSeries.constant("z", one, high)
                cache[r] = a * b * Fraction(-1, r)
            acc = acc + cache[r]
        coeffs.append(acc)
    return QSeries(coeffs, q_order)


def reduced_m0_onepoint(k: int, q_order: int = 8) -> QSeries:
    """``t2^k Coeff_{z^k} (1 - ratio) / ((1 - qt)(1 - t~^-1))`` at ``alpha = -t1/t2``."""
    high = k + 2
    one = RatFunc.coerce(1)
    alpha = var("alpha")
    lg = _product_ratio_log(k, q_order)
    unit = AuxSeries.constant("z", one, high)
    expo = _exp_coeffs([0] + list(lg.coeffs[1:]), q_order, unit)
    # 1 / ((1 - e^(alpha z))(1 - e^(-z))) has a double pole at z = 0
    a = AuxSeries.constant("z", one, k + 4) - AuxSeries.exp_linear("z", alpha, k + 4, one)
    b = AuxSeries.constant("z", one, k + 4) - AuxSeries.exp_linear("z", -one, k + 4, one)
    pre = (a * b).inverse()
    t1, t2 = var("t1"), var("t2")
    sub = -t1 / t2
    out: list[Any] = []
    for n in range(q_order + 1):
        h = expo[n]
        val = unit - h if n == 0 else -h
        if not isinstance(val, AuxSeries):
            val = AuxSeries("z", {}, 0, high) if _is_zero(val) else val
        c = (pre * val).coefficient(k)
        out.append(RatFunc.coerce(c).substitute("alpha", sub) * t2 ** k if not _is_zero(c) else 0)
    return QSeries(out, q_order)


# ---------------------------------------------------------------------------
# direct traces on the Fock space


def fock_trace(klist: Sequence[int], q_order: int) -> QSeries:
    """``Tr q^n W(z) prod G_k`` from Fock matrices, using the ``z^0`` part of ``W``.

    Only the degree-preserving part of ``W`` contributes to the trace.
    """
    from .chern import gk_fock
    from .vertex import W_zero_mode

    ops = [gk_fock(k, q_order) for k in klist]
    coeffs: list[Any] = []
    for n in range(q_order + 1):
        acc: Any = 0
        for mu in partitions_of(n):
            v = FockVector.basis(mu)
            for op in reversed(ops):
                v = op.apply(v)
            acc = W_zero_mode(v).coefficient(mu) + acc
        coeffs.append(acc)
    return QSeries(coeffs, q_order)


def gamma_trace_sides(q_order: int = 10) -> tuple[QSeries, QSeries]:
    """Both sides of ``Tr q^n Gamma_-(y)^b Gamma_+(1)^a = (q;q)^-1 (yq;q)^(-ab)``.

    With ``x = 1`` each ``q^n`` coefficient is a polynomial in ``y``, so the
    comparison is exact with no window on ``y``.
    """
    from .vertex import annihilation_exp, creation_exp

    a, b, y = var("a"), var("b"), var("y")
    lhs: list[Any] = []
    for n in range(q_order + 1):
        acc: Any = 0
        for mu in partitions_of(n):
            pieces = annihilation_exp(FockVector.basis(mu), lambda k: a * Fraction(1, k))
            for j, w in enumerate(pieces):
                if w.is_zero():
                    continue
                up = creation_exp(w, lambda k: b * y ** k * Fraction(1, k), j)[j]
                c = up.coefficient(mu)
                if not _is_zero(c):
                    acc = c + acc
        lhs.append(acc)
    left = QSeries(lhs, q_order)
    right = euler_function(q_order).inverse() * pochhammer(y, 1, q_order).power(-a * b)
    return left, right


# ---------------------------------------------------------------------------
# structural checks


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def homogeneity_and_symmetry(klist: Sequence[int], q_order: int = 8) -> CheckResult:
    """At ``m = 0`` every coefficient is homogeneous of degree ``sum k`` and ``t1 <-> t2`` symmetric."""
    s = reduced(klist, q_order, m=0).series
    d = sum(klist)
    for n, c in enumerate(s.coeffs):
        c = RatFunc.coerce(c)
        if c.is_zero():
            continue
        deg = c.homogeneous_degree(("t1", "t2"))
        if deg != d:
            return CheckResult(f"homogeneous {tuple(klist)}", False, f"q^{n}: degree {deg}, expected {d}")
        if not (c.swap("t1", "t2") - c).is_zero():
            return CheckResult(f"symmetric {tuple(klist)}", False, f"q^{n} changes under t1 <-> t2")
    return CheckResult(f"homogeneous and symmetric {tuple(klist)}", True, f"degree {d}")


def t1_top_coefficient(k: int, q_order: int) -> QSeries:
    """Coefficient of ``t1^k`` in the one-point reduced series at ``m = 0``.

    The series is homogeneous of degree ``k`` in ``(t1, t2)``, so this is its
    value at ``(t1, t2) = (1, 0)``.
    """
    raw = raw_trace((k,), q_order, m=0, t1=Fraction(1), t2=Fraction(0)).series
    return raw * euler_function(q_order)


def top_weight_fit(k: int, q_order: int = 30) -> CheckResult:
    f = t1_top_coefficient(k, q_order)
    # s_1 = 1 brackets are not quasimodular and are left out
    cands = [ONE] + [b for b in brackets_up_to_weight(k + 2) if b.s[0] > 1]
    fit = fit_in_bracket_span(f, cands, q_order)
    if not fit.ok:
        return CheckResult(f"bracket fit t1^{k}", False, str(fit))
    target = BracketIndex((k + 2,))
    top = {idx: c for idx, c in fit.coefficients.items() if idx.weight == k + 2 and c}
    ok = top == {target: Fraction((-1) ** k)}
    return CheckResult(f"bracket fit t1^{k}", ok, str(fit))


def m_degree_bound(klist: Sequence[int], q_order: int = 6) -> CheckResult:
    s = reduced(klist, q_order).series
    bound = sum(k + 2 for k in klist)
    worst = -1
    for n, c in enumerate(s.coeffs):
        c = RatFunc.coerce(c)
        if c.is_zero():
            continue
        if RatFunc(c.den).degree_in("m") > 0:
            return CheckResult(f"m-degree {tuple(klist)}", False, f"q^{n} has m in a denominator")
        worst = max(worst, c.degree_in("m"))
    return CheckResult(f"m-degree {tuple(klist)}", worst <= bound, f"max {worst}, bound {bound}")


def reduced_structure_checks(q_order_i: int = 8, q_order_ii: int = 30, q_order_iii: int = 6) -> list[CheckResult]:
    out = [homogeneity_and_symmetry(kl, q_order_i) for kl in [(2,), (3,), (1, 1), (0, 2)]]
    out += [top_weight_fit(k, q_order_ii) for k in (2, 3)]
    for n in (0, 1, 2):
        for kl in combinations_with_replacement((0, 1, 2), n):
            out.append(m_degree_bound(kl, q_order_iii))
    return out
