"""Equivariant Chern character operators ``G_k(t1, t2)``.

Two constructions are kept side by side.  The eigen construction is the
definition: ``G_k`` is diagonal on the fixed-point classes with eigenvalue
``sum_cells (-1)^k/k! (a' t1 + l' t2)^k``.  The Fock construction twists and
specializes the normally ordered ``Bbar_k``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any

from .coeff import Matrix, RatFunc, mat_equal, mat_inverse, mat_mul, var
from .fock import FockVector, NormalOrderedOp, expand_in_monomials
from .partitions import GeneralizedPartition, Partition, generalized_partitions, partitions_of
from .symfunc import fixed_point_class
from .vertex import bbar_k

log = logging.getLogger(__name__)

GP = GeneralizedPartition


def eigenvalue(lam, k: int, t1: Any = None, t2: Any = None) -> RatFunc:
    """``c_{lambda,k} = sum_cells (-1)^k/k! (a' t1 + l' t2)^k``."""
    t1 = var("t1") if t1 is None else RatFunc.coerce(t1)
    t2 = var("t2") if t2 is None else RatFunc.coerce(t2)
    lam = Partition(lam)
    acc = RatFunc.coerce(0)
    for s in lam.all_cell_stats():
        acc = acc + (t1 * s.coarm + t2 * s.coleg) ** k
    return acc * Fraction((-1) ** k, factorial(k))


@lru_cache(maxsize=None)
def fixed_point_matrix(n: int) -> tuple[Matrix, Matrix]:
    """Columns are the classes ``J^lambda`` for ``lambda |- n``; returns ``(F, F^-1)``."""
    basis = partitions_of(n)
    cols = [fixed_point_class(lam).column(n) for lam in basis]
    f = [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
    try:
        inv = mat_inverse(f)
    except ZeroDivisionError as exc:  # pragma: no cover - generic t1, t2
        raise ArithmeticError(f"fixed-point classes of degree {n} are not a basis") from exc
    return f, inv


@dataclass
class CherOp:
    """A degree-preserving operator known through its matrices up to ``degree``."""

    k: int
    representation: str
    degree: int
    op: NormalOrderedOp | None = None
    _cache: dict[int, Matrix] = field(default_factory=dict, repr=False)

    def weight(self) -> int:
        return 0

    def action_matrix(self, n: int) -> Matrix:
        if n > self.degree:
            from .coeff import WindowError
            raise WindowError(f"G_{self.k} is known only up to degree {self.degree}")
        if n not in self._cache:
            if self.representation == "eigen":
                self._cache[n] = _eigen_matrix(self.k, n)
            else:
                self._cache[n] = self.op.matrix(n)
        return self._cache[n]

    matrix = action_matrix

    def apply(self, v: FockVector) -> FockVector:
        out = FockVector()
        for n in sorted(v.degrees()):
            col = v.degree_part(n).column(n)
            mat = self.matrix(n)
            out = out + FockVector.from_column(n, [sum((r[j] * col[j] for j in range(len(col))), 0)
                                                   for r in mat])
        return out


def _eigen_matrix(k: int, n: int) -> Matrix:
    f, inv = fixed_point_matrix(n)
    diag = [eigenvalue(lam, k) for lam in partitions_of(n)]
    scaled = [[f[i][j] * diag[j] for j in range(len(diag))] for i in range(len(diag))]
    return mat_mul(scaled, inv)


def gk_eigen(k: int, degree: int) -> CherOp:
    return CherOp(k, "eigen", degree)


def twist_and_specialize(op: NormalOrderedOp, k: int) -> NormalOrderedOp:
    """``t2^k t1^delta(.) op`` with ``alpha = -t1/t2``."""
    t1, t2 = var("t1"), var("t2")
    alpha = -t1 / t2
    pre = t2 ** k
    return op.map(lambda lam, c: RatFunc.coerce(c).substitute("alpha", alpha) * pre * t1 ** lam.delta())


def gk_fock_op(k: int, degree: int) -> NormalOrderedOp:
    return twist_and_specialize(bbar_k(k, degree), k)


def gk_fock(k: int, degree: int) -> CherOp:
    return CherOp(k, "fock", degree, gk_fock_op(k, degree))


# ---------------------------------------------------------------------------
# printed closed forms


def _zero_weight(length: int, degree: int) -> list[GP]:
    return generalized_partitions(0, length, degree, min_length=length, max_plus_size=degree)


def leading_display(k: int, degree: int) -> NormalOrderedOp:
    """``sum_{l(lambda)=k+2, |lambda|=0} (-1)^(l+ - 1) (t1 t2)^(l- - 1) a_lambda / lambda^!``."""
    t12 = var("t1") * var("t2")
    scaled = {}
    for lam in _zero_weight(k + 2, degree):
        lp, lm = len(lam.plus), len(lam.minus)
        scaled[lam] = t12 ** (lm - 1) * (-1) ** (lp - 1)
    return NormalOrderedOp.from_scaled(scaled, degree)


def g1_display(degree: int) -> NormalOrderedOp:
    t1, t2 = var("t1"), var("t2")
    t12 = t1 * t2
    terms: dict[GP, Any] = {}
    for i in range(1, degree + 1):
        for j in range(1, degree + 1 - i):
            a = GP((-i, -j, i + j))
            terms[a] = terms.get(a, 0) + t12 * Fraction(1, 2)
            b = GP((-i - j, i, j))
            terms[b] = terms.get(b, 0) - Fraction(1, 2)
        terms[GP((-i, i))] = -(t1 + t2) * Fraction(i - 1, 2)
    return NormalOrderedOp(terms, degree)


def g2_display(degree: int) -> NormalOrderedOp:
    t1, t2 = var("t1"), var("t2")
    t12, s = t1 * t2, t1 + t2
    scaled: dict[GP, Any] = {}
    for lam in _zero_weight(4, degree):
        scaled[lam] = t12 ** (len(lam.minus) - 1) * (-1) ** (len(lam.plus) - 1)
    for lam in _zero_weight(3, degree):
        scaled[lam] = (t12 ** (len(lam.minus) - 1) * s
                       * Fraction((lam.plus_size() - 1) * (-1) ** len(lam.plus), 2))
    for i in range(1, degree + 1):
        scaled[GP((-i, i))] = s ** 2 * Fraction(2 * i * i - 3 * i + 1, 12) + t12 * Fraction(1 - i * i, 12)
    return NormalOrderedOp.from_scaled(scaled, degree)


def bbar1_display(degree: int) -> NormalOrderedOp:
    alpha = var("alpha")
    scaled: dict[GP, Any] = {}
    for lam in _zero_weight(3, degree):
        scaled[lam] = alpha ** (len(lam.plus) - 1)
    for i in range(1, degree + 1):
        scaled[GP((-i, i))] = (alpha - 1) * Fraction(i - 1, 2)
    return NormalOrderedOp.from_scaled(scaled, degree)


def bbar2_display(degree: int) -> NormalOrderedOp:
    alpha = var("alpha")
    scaled: dict[GP, Any] = {}
    for lam in _zero_weight(4, degree):
        scaled[lam] = alpha ** (len(lam.plus) - 1)
    for lam in _zero_weight(3, degree):
        scaled[lam] = alpha ** (len(lam.plus) - 1) * (alpha - 1) * Fraction(lam.plus_size() - 1, 2)
    for i in range(1, degree + 1):
        scaled[GP((-i, i))] = ((alpha - 1) ** 2 * (Fraction(1, 12) - Fraction(i, 4) + Fraction(i * i, 8))
                               + (alpha ** 2 * (i * i) - alpha * 2 + i * i) * Fraction(1, 24))
    return NormalOrderedOp.from_scaled(scaled, degree)


# ---------------------------------------------------------------------------
# verification


def compare_matrices(a, b, degree: int) -> list[dict]:
    """Entries where two degree-preserving operators differ, degree by degree."""
    bad = []
    for n in range(degree + 1):
        ma, mb = a.matrix(n), b.matrix(n)
        if mat_equal(ma, mb):
            continue
        basis = partitions_of(n)
        for i, row in enumerate(ma):
            for j, x in enumerate(row):
                if not (x == mb[i][j] or (x - mb[i][j]) == 0):
                    bad.append({"degree": n, "row": str(basis[i]), "col": str(basis[j]),
                                "left": str(x), "right": str(mb[i][j])})
    return bad


def verify_fock_formula(k: int, degree: int) -> dict:
    """Compare the eigen and Fock constructions of ``G_k`` on every degree up to ``degree``."""
    log.info("comparing G_%d constructions up to degree %d", k, degree)
    mismatches = compare_matrices(gk_eigen(k, degree), gk_fock(k, degree), degree)
    return {"k": k, "degree": degree, "status": "PASS" if not mismatches else "FAIL",
            "mismatches": mismatches}


def term_differences(a: NormalOrderedOp, b: NormalOrderedOp) -> list[dict]:
    out = []
    for lam in sorted(set(a.terms) | set(b.terms)):
        x, y = a.coefficient(lam), b.coefficient(lam)
        if not (x - y) == 0:
            out.append({"monomial": str(lam), "left": str(x), "right": str(y)})
    return out


@dataclass
class ProbeRow:
    monomial: GP
    expected: Any
    got: Any

    @property
    def agrees(self) -> bool:
        return (RatFunc.coerce(self.got) - RatFunc.coerce(self.expected)).is_zero()


def conjecture_probe(k: int, degree: int, max_length: int | None = None) -> dict:
    """Expand ``G_k`` from its eigen construction and test the conjectured leading term.

    Every length ``k + 2`` coefficient is compared against the conjectured
    value; the lower-length remainder is returned without any claim.
    """
    log.info("expanding G_%d from eigen matrices up to degree %d", k, degree)
    expansion = expand_in_monomials(gk_eigen(k, degree), degree, max_length)
    top = k + 2
    expected = leading_display(k, degree)
    rows = []
    for lam in _zero_weight(top, degree):
        rows.append(ProbeRow(lam, expected.coefficient(lam), expansion.coefficient(lam)))
    longer = sorted(lam for lam in expansion.terms if len(lam) > top)
    lower = {lam: c for lam, c in expansion.terms.items() if len(lam) < top}
    return {
        "k": k,
        "degree": degree,
        "rows": [{"monomial": str(r.monomial), "expected": str(r.expected), "got": str(r.got),
                  "agree": r.agrees} for r in rows],
        "agree": sum(r.agrees for r in rows),
        "disagree": sum(not r.agrees for r in rows),
        "longer_terms": [str(lam) for lam in longer],
        "lower": {str(lam): str(c) for lam, c in sorted(lower.items())},
        "expansion": expansion,
    }
