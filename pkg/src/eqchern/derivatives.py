"""Equivariant derivatives ``f' = [G_1, f]`` of normally ordered operators."""

from __future__ import annotations

import logging
from fractions import Fraction
from math import factorial
from typing import Any

from .chern import g1_display
from .coeff import RatFunc, var
from .fock import NormalOrderedOp, commutator, expand_in_monomials
from .partitions import GeneralizedPartition, generalized_partitions

log = logging.getLogger(__name__)

GP = GeneralizedPartition


def epsilon(i: int, j: int) -> int:
    if i == 0 or j == 0:
        raise ValueError("epsilon is defined on nonzero integers")
    return 1 if (i * j < 0 and i + j > 0) or (i < 0 and j < 0) else 0


def a_prime_closed(n: int, degree: int) -> NormalOrderedOp:
    """Closed form of ``[G_1, a_n]``, exact on degrees ``<= degree``.

    ``(n/2) sum_{i+j=n} (-t1 t2)^eps(i,j) a_i a_j + n(|n|-1)/2 (t1+t2) a_n``,
    keeping the pairs whose positive parts do not exceed ``degree``.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    t1, t2 = var("t1"), var("t2")
    neg = -(t1 * t2)
    terms: dict[GP, Any] = {}
    lo = min(n, 0) - degree
    hi = max(n, 0) + degree
    for i in range(lo, hi + 1):
        j = n - i
        if i == 0 or j == 0:
            continue
        lam = GP((i, j))
        if lam.plus_size() > degree:
            continue
        c = (neg if epsilon(i, j) else RatFunc.coerce(1)) * Fraction(n, 2)
        terms[lam] = terms[lam] + c if lam in terms else c
    lin = Fraction(n * (abs(n) - 1), 2)
    if lin and (n < 0 or n <= degree):
        key = GP((n,))
        terms[key] = terms.get(key, 0) + (t1 + t2) * lin
    return NormalOrderedOp(terms, degree)


def derivative(f: NormalOrderedOp, k: int, degree: int, max_length: int | None = None) -> NormalOrderedOp:
    """``ad(G_1)^k f``, exact on degrees ``<= degree``.

    ``G_1`` is truncated at ``degree`` plus the largest degree increase of
    ``f``; every iterate keeps the weight of ``f``, so this suffices.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    g1 = g1_display(degree + max(f.raise_degree(), 0))
    out = f.restrict(degree)
    for step in range(k):
        out = commutator(g1, out, degree, max_length)
        log.debug("derivative step %d: %d terms", step + 1, len(out.terms))
    return out


def derivative_chain(f: NormalOrderedOp, k: int, degree: int) -> list[NormalOrderedOp]:
    """``[f, f', ..., f^(k)]`` with a shared window."""
    g1 = g1_display(degree + max(f.raise_degree(), 0))
    out = [f.restrict(degree)]
    for _ in range(k):
        out.append(commutator(g1, out[-1], degree))
    return out


def leading_coefficient(n: int, k: int, lam: GP) -> RatFunc:
    """``n^k k! (-1)^l(lam+) (t1 t2)^(l(lam-)-1) / lam^!``."""
    t12 = var("t1") * var("t2")
    return (t12 ** (len(lam.minus) - 1) * Fraction(n ** k * factorial(k) * (-1) ** len(lam.plus),
                                                    lam.factorial()))


def leading_term_check(n: int, k: int, degree: int | None = None, reexpand: bool = False) -> dict:
    """Compare the length ``k+1`` part of ``ad(G_1)^k a_{-n}`` with the leading-term law.

    With ``reexpand`` the operator is also recovered from its matrices and
    compared with the commutator result.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    degree = n + 2 * k + 2 if degree is None else degree
    op = derivative(NormalOrderedOp.mode(-n), k, degree)
    rows = []
    for lam in generalized_partitions(-n, k + 1, degree + n, min_length=k + 1, max_plus_size=degree):
        want = leading_coefficient(n, k, lam)
        got = op.coefficient(lam)
        rows.append({"monomial": str(lam), "expected": str(want), "got": str(got),
                     "agree": (RatFunc.coerce(got) - want).is_zero()})
    longer = sorted(str(lam) for lam in op.terms if len(lam) > k + 1)
    lower = {str(lam): str(c) for lam, c in sorted(op.terms.items()) if len(lam) < k + 1}
    report = {"n": n, "k": k, "degree": degree, "rows": rows,
              "status": "PASS" if all(r["agree"] for r in rows) and not longer else "FAIL",
              "longer_terms": longer, "lower": lower}
    if reexpand:
        again = expand_in_monomials(op, degree, weight=-n)
        report["reexpansion_matches"] = again.equal_terms(op)
        if not report["reexpansion_matches"]:
            report["status"] = "FAIL"
    return report
