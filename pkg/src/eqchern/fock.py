"""Fock space, Heisenberg modes and normally ordered operators.

The Fock space is identified with symmetric functions in power sums:
``a_{-lambda}|0>`` is ``p_lambda``.  The creation mode ``a_{-k}`` multiplies by
``p_k`` and the annihilation mode ``a_k`` acts as ``k d/dp_k``, so
``[a_k, a_l] = k delta_{k,-l}``.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Any, Callable, Iterable, Mapping, Protocol

from .coeff import Matrix, QSeries, WindowError, _is_zero
from .partitions import GeneralizedPartition, Partition, partitions_of

GP = GeneralizedPartition


class FockVector:
    """Finite linear combination of basis vectors ``a_{-lambda}|0>``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Partition, Any] | None = None):
        self.terms: dict[Partition, Any] = {}
        if terms:
            for lam, c in terms.items():
                if not _is_zero(c):
                    self.terms[Partition(lam) if not isinstance(lam, Partition) else lam] = c

    @staticmethod
    def basis(lam, coeff: Any = 1) -> "FockVector":
        return FockVector({Partition(lam): coeff})

    @staticmethod
    def vacuum(coeff: Any = 1) -> "FockVector":
        return FockVector({Partition(()): coeff})

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def coefficient(self, lam) -> Any:
        return self.terms.get(Partition(lam), 0)

    def degree_part(self, n: int) -> "FockVector":
        return FockVector({lam: c for lam, c in self.terms.items() if lam.size == n})

    def degrees(self) -> set[int]:
        return {lam.size for lam in self.terms}

    def max_degree(self) -> int:
        return max((lam.size for lam in self.terms), default=0)

    def map(self, fn: Callable[[Any], Any]) -> "FockVector":
        return FockVector({lam: fn(c) for lam, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, FockVector):
            out = dict(self.terms)
            for lam, c in other.terms.items():
                out[lam] = out[lam] + c if lam in out else c
            return FockVector(out)
        if _is_zero(other):
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return FockVector({lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, FockVector):
            return NotImplemented
        if _is_zero(c):
            return FockVector()
        return FockVector({lam: v * c for lam, v in self.terms.items()})

    def __rmul__(self, c):
        if _is_zero(c):
            return FockVector()
        return FockVector({lam: c * v for lam, v in self.terms.items()})

    def __truediv__(self, c):
        return FockVector({lam: v / c for lam, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, FockVector):
            return (self - other).is_zero()
        if _is_zero(other):
            return self.is_zero()
        return NotImplemented

    __hash__ = None

    def column(self, n: int) -> list[Any]:
        """Coordinates in the degree-``n`` basis."""
        return [self.terms.get(lam, 0) for lam in partitions_of(n)]

    @staticmethod
    def from_column(n: int, col: Iterable[Any]) -> "FockVector":
        return FockVector(dict(zip(partitions_of(n), col)))

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (kv[0].size, tuple(-x for x in kv[0])))
        return " + ".join(f"({c})*p[{','.join(map(str, lam))}]" for lam, c in items)

    def __repr__(self):
        return f"FockVector({self})"


@lru_cache(maxsize=None)
def _counts(lam: Partition) -> Counter:
    return Counter(lam)


def apply_mode(k: int, v: FockVector) -> FockVector:
    """Apply the single Heisenberg mode ``a_k``."""
    if k == 0:
        raise ValueError("the zero mode a_0 is not part of the calculus")
    out: dict[Partition, Any] = {}
    if k < 0:
        for lam, c in v.terms.items():
            new = Partition.from_multiset(list(lam) + [-k])
            out[new] = out[new] + c if new in out else c
    else:
        for lam, c in v.terms.items():
            mult = _counts(lam).get(k, 0)
            if not mult:
                continue
            parts = list(lam)
            parts.remove(k)
            new = Partition(parts)
            val = c * (k * mult)
            out[new] = out[new] + val if new in out else val
    return FockVector(out)


def _monomial_on_basis(lam: GP, mu: Partition) -> tuple[int, Partition] | None:
    """``a_lam p_mu = coeff * p_result`` or ``None`` when it vanishes."""
    have = _counts(mu)
    need = Counter(p for p in lam if p > 0)
    coeff = 1
    for k, n in need.items():
        m = have.get(k, 0)
        if m < n:
            return None
        coeff *= k ** n * factorial(m) // factorial(m - n)
    rest = list((have - need).elements()) + [-p for p in lam if p < 0]
    return coeff, Partition.from_multiset(rest)


class DegreeWise(Protocol):
    def action_matrix(self, n: int) -> Matrix: ...


class NormalOrderedOp:
    """``sum_lambda c_lambda a_lambda`` with creations to the left.

    ``degree_bound`` records the degrees on which the stored finite sum is the
    whole operator: terms with ``|lambda^+|`` beyond the bound were dropped,
    and those kill every vector of degree at most the bound.  ``None`` means
    nothing was dropped.
    """

    __slots__ = ("terms", "degree_bound")

    def __init__(self, terms: Mapping[Any, Any] | None = None, degree_bound: int | None = None):
        self.terms: dict[GP, Any] = {}
        if terms:
            for lam, c in terms.items():
                if not _is_zero(c):
                    key = lam if isinstance(lam, GP) else GP(lam)
                    self.terms[key] = c
        self.degree_bound = degree_bound

    @staticmethod
    def from_scaled(scaled: Mapping[Any, Any], degree_bound: int | None = None) -> "NormalOrderedOp":
        """Build ``sum g_lambda a_lambda / lambda^!``."""
        terms = {}
        for lam, g in scaled.items():
            lam = lam if isinstance(lam, GP) else GP(lam)
            f = lam.factorial()
            terms[lam] = g if f == 1 else g * Fraction(1, f)
        return NormalOrderedOp(terms, degree_bound)

    @staticmethod
    def mode(k: int, coeff: Any = 1) -> "NormalOrderedOp":
        if k == 0:
            raise ValueError("the zero mode a_0 is not part of the calculus")
        return NormalOrderedOp({GP((k,)): coeff})

    @staticmethod
    def identity(coeff: Any = 1) -> "NormalOrderedOp":
        return NormalOrderedOp({GP(()): coeff})

    def scaled(self) -> dict[GP, Any]:
        """Coefficients ``g_lambda`` in ``sum g_lambda a_lambda / lambda^!``."""
        return {lam: c * lam.factorial() if lam.factorial() != 1 else c for lam, c in self.terms.items()}

    def coefficient(self, lam) -> Any:
        return self.terms.get(lam if isinstance(lam, GP) else GP(lam), 0)

    def weights(self) -> set[int]:
        return {lam.weight for lam in self.terms}

    def weight(self) -> int:
        ws = self.weights()
        if len(ws) > 1:
            raise ValueError(f"operator mixes conformal weights {sorted(ws)}")
        return ws.pop() if ws else 0

    def raise_degree(self) -> int:
        """Largest degree increase produced by any term."""
        return max((max(-lam.weight, 0) for lam in self.terms), default=0)

    def max_length(self) -> int:
        return max((len(lam) for lam in self.terms), default=0)

    def map(self, fn: Callable[[GP, Any], Any]) -> "NormalOrderedOp":
        return NormalOrderedOp({lam: fn(lam, c) for lam, c in self.terms.items()}, self.degree_bound)

    def restrict(self, degree: int) -> "NormalOrderedOp":
        """Drop terms that vanish on every vector of degree at most ``degree``."""
        bound = degree if self.degree_bound is None else min(degree, self.degree_bound)
        return NormalOrderedOp({lam: c for lam, c in self.terms.items() if lam.plus_size() <= degree},
                               bound)

    def filter(self, pred: Callable[[GP], bool]) -> "NormalOrderedOp":
        return NormalOrderedOp({lam: c for lam, c in self.terms.items() if pred(lam)}, self.degree_bound)

    @staticmethod
    def _bound(a: int | None, b: int | None) -> int | None:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other):
        if isinstance(other, NormalOrderedOp):
            out = dict(self.terms)
            for lam, c in other.terms.items():
                out[lam] = out[lam] + c if lam in out else c
            return NormalOrderedOp(out, self._bound(self.degree_bound, other.degree_bound))
        if _is_zero(other):
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return NormalOrderedOp({lam: -c for lam, c in self.terms.items()}, self.degree_bound)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, NormalOrderedOp):
            return NotImplemented
        return NormalOrderedOp({lam: v * c for lam, v in self.terms.items()}, self.degree_bound)

    def __rmul__(self, c):
        return NormalOrderedOp({lam: c * v for lam, v in self.terms.items()}, self.degree_bound)

    def is_zero(self) -> bool:
        return not self.terms

    def equal_terms(self, other: "NormalOrderedOp") -> bool:
        """Coefficient-wise equality, ignoring the recorded degree bounds."""
        keys = set(self.terms) | set(other.terms)
        return all(_is_zero(self.terms.get(k, 0) - other.terms.get(k, 0)) for k in keys)

    def __eq__(self, other):
        if isinstance(other, NormalOrderedOp):
            return self.degree_bound == other.degree_bound and self.equal_terms(other)
        return NotImplemented

    __hash__ = None

    # action -----------------------------------------------------------
    def _check_degree(self, n: int):
        if self.degree_bound is not None and n > self.degree_bound:
            raise WindowError(f"operator is exact only up to degree {self.degree_bound}, asked for {n}")

    def apply(self, v: FockVector) -> FockVector:
        for n in v.degrees():
            self._check_degree(n)
        out: dict[Partition, Any] = {}
        for mu, cv in v.terms.items():
            for lam, c in self.terms.items():
                hit = _monomial_on_basis(lam, mu)
                if hit is None:
                    continue
                k, nu = hit
                val = c * cv * k if k != 1 else c * cv
                out[nu] = out[nu] + val if nu in out else val
        return FockVector(out)

    def action_matrix(self, n: int) -> Matrix:
        """Matrix from degree ``n`` to degree ``n - weight`` (rows: target basis)."""
        self._check_degree(n)
        w = self.weight()
        src = partitions_of(n)
        if n - w < 0:
            return []
        tgt = partitions_of(n - w)
        index = {lam: i for i, lam in enumerate(tgt)}
        mat: Matrix = [[0] * len(src) for _ in tgt]
        for j, mu in enumerate(src):
            col = self.apply(FockVector.basis(mu))
            for nu, c in col.terms.items():
                mat[index[nu]][j] = c
        return mat

    def matrix(self, n: int) -> Matrix:
        if self.weight() != 0:
            raise ValueError("matrix_on_degree needs a degree-preserving operator")
        return self.action_matrix(n)

    def __str__(self):
        return render_operator(self)

    def __repr__(self):
        return f"NormalOrderedOp({self})"


def monomial_name(lam: GP) -> str:
    if not lam:
        return "1"
    return "".join(f"a({k})" + (f"^{m}" if m > 1 else "")
                   for k, m in sorted(Counter(lam).items()))


def render_operator(op: NormalOrderedOp) -> str:
    if not op.terms:
        return "0"
    lines = []
    for lam in sorted(op.terms, key=lambda g: (len(g), g.plus_size(), tuple(g))):
        lines.append(f"({op.terms[lam]})*{monomial_name(lam)}")
    return " + ".join(lines)


class DegreeOperator:
    """An operator known only through its matrices on each degree."""

    def __init__(self, builder: Callable[[int], Matrix], weight: int = 0, max_degree: int | None = None):
        self._builder = builder
        self._cache: dict[int, Matrix] = {}
        self.weight_ = weight
        self.max_degree = max_degree

    def weight(self) -> int:
        return self.weight_

    def action_matrix(self, n: int) -> Matrix:
        if self.max_degree is not None and n > self.max_degree:
            raise WindowError(f"operator known only up to degree {self.max_degree}")
        if n not in self._cache:
            self._cache[n] = self._builder(n)
        return self._cache[n]

    def matrix(self, n: int) -> Matrix:
        if self.weight_ != 0:
            raise ValueError("matrix_on_degree needs a degree-preserving operator")
        return self.action_matrix(n)

    def apply(self, v: FockVector) -> FockVector:
        out = FockVector()
        for n in sorted(v.degrees()):
            col = v.column(n)
            mat = self.action_matrix(n)
            tgt = n - self.weight_
            res = [sum((mat[i][j] * col[j] for j in range(len(col)) if not _is_zero(col[j])), 0)
                   for i in range(len(mat))]
            out = out + FockVector.from_column(tgt, res)
        return out


def matrix_on_degree(op, n: int) -> Matrix:
    return op.matrix(n)


# ---------------------------------------------------------------------------
# composition by Wick's theorem


def _wick_pairs(ann: Counter, cre: Counter):
    """Yield ``(coeff, removed)`` for moving ``prod a_k^{n_k}`` past ``prod a_{-k}^{c_k}``.

    Uses ``a_k^n a_{-k}^c = sum_j j! C(n,j) C(c,j) k^j a_{-k}^{c-j} a_k^{n-j}``;
    different ``k`` commute.
    """
    common = sorted(k for k in ann if k in cre)
    ranges = [range(min(ann[k], cre[k]) + 1) for k in common]
    for js in product(*ranges):
        coeff = 1
        removed = {}
        for k, j in zip(common, js):
            if j:
                coeff *= factorial(j) * comb(ann[k], j) * comb(cre[k], j) * k ** j
                removed[k] = j
        yield coeff, removed


def compose(a: NormalOrderedOp, b: NormalOrderedOp, degree: int,
            max_length: int | None = None) -> NormalOrderedOp:
    """Normally ordered form of ``a . b``, exact on degrees at most ``degree``.

    Terms with ``|lambda^+| > degree`` are dropped, and the result records
    ``degree`` as its bound.  Inputs must themselves be exact where they are
    used: ``b`` up to ``degree`` and ``a`` up to ``degree`` plus the largest
    degree increase of ``b``.  A kept term longer than ``max_length`` raises
    :class:`WindowError`.
    """
    need_a = degree + b.raise_degree()
    if a.degree_bound is not None and a.degree_bound < need_a:
        raise WindowError(f"left factor exact to degree {a.degree_bound}, needs {need_a}")
    if b.degree_bound is not None and b.degree_bound < degree:
        raise WindowError(f"right factor exact to degree {b.degree_bound}, needs {degree}")
    out: dict[GP, Any] = {}
    overflow: list[GP] = []
    b_split = [(Counter(-p for p in mu if p < 0), [p for p in mu if p > 0], mu, cb)
               for mu, cb in b.terms.items()]
    for lam, ca in a.terms.items():
        ann = Counter(p for p in lam if p > 0)
        lam_neg = [p for p in lam if p < 0]
        for cre, mu_pos, mu, cb in b_split:
            base = None
            for k, removed in _wick_pairs(ann, cre):
                plus = list((ann - Counter(removed)).elements()) + mu_pos
                if sum(plus) > degree:
                    continue
                minus = lam_neg + [-p for p in (cre - Counter(removed)).elements()]
                key = GP(minus + plus)
                if max_length is not None and len(key) > max_length:
                    overflow.append(key)
                    continue
                if base is None:
                    base = ca * cb
                val = base * k if k != 1 else base
                out[key] = out[key] + val if key in out else val
    if overflow:
        shown = ", ".join(sorted({str(g) for g in overflow})[:8])
        raise WindowError(f"{len(overflow)} term(s) exceed max length {max_length}: {shown}")
    return NormalOrderedOp(out, degree)


def commutator(a: NormalOrderedOp, b: NormalOrderedOp, degree: int,
               max_length: int | None = None) -> NormalOrderedOp:
    return compose(a, b, degree, max_length) - compose(b, a, degree, max_length)


# ---------------------------------------------------------------------------
# expansion of an abstract operator in normally ordered monomials


class ExpansionError(ValueError):
    def __init__(self, message: str, residual: dict[GP, Any]):
        super().__init__(message)
        self.residual = residual


def expand_in_monomials(op, max_degree: int, max_length: int | None = None,
                        weight: int = 0) -> NormalOrderedOp:
    """Recover ``sum c_lambda a_lambda`` from the action of ``op`` on degrees ``<= max_degree``.

    Degrees are peeled in increasing order: on ``p_mu`` only the monomials with
    ``lambda^+ = mu`` act nontrivially once lower ones are subtracted, and they
    contribute ``z_mu c_lambda p_{-lambda^-}``.  Monomials longer than
    ``max_length`` that are forced by the data raise :class:`ExpansionError`.
    """
    found: dict[GP, Any] = {}
    residual: dict[GP, Any] = {}
    partial = NormalOrderedOp()
    for d in range(max_degree + 1):
        if d - weight < 0:
            continue
        mat = op.action_matrix(d)
        src = partitions_of(d)
        tgt = partitions_of(d - weight)
        new: dict[GP, Any] = {}
        for j, mu in enumerate(src):
            known = partial.apply(FockVector.basis(mu)) if partial.terms else FockVector()
            z = mu.z()
            for i, nu in enumerate(tgt):
                r = mat[i][j] - known.coefficient(nu)
                if _is_zero(r):
                    continue
                lam = GP(list(mu) + [-p for p in nu])
                c = r * Fraction(1, z) if z != 1 else r
                if max_length is not None and len(lam) > max_length:
                    residual[lam] = c
                else:
                    new[lam] = c
        found.update(new)
        if new:
            partial = NormalOrderedOp(found)
    if residual:
        shown = ", ".join(str(g) for g in list(residual)[:8])
        raise ExpansionError(
            f"monomials of length > {max_length} are needed ({shown}); "
            f"raise the length bound or check the degree range", residual)
    return NormalOrderedOp(found, max_degree)


# ---------------------------------------------------------------------------
# traces


def trace_q(op, q_order: int) -> QSeries:
    """``sum_n q^n tr(op on degree n)`` through ``q^q_order``."""
    coeffs = []
    for n in range(q_order + 1):
        mat = op.matrix(n)
        acc = 0
        for i in range(len(mat)):
            if not _is_zero(mat[i][i]):
                acc = mat[i][i] + acc
        coeffs.append(acc)
    return QSeries(coeffs, q_order)


class IdentityOperator:
    def weight(self) -> int:
        return 0

    def action_matrix(self, n: int) -> Matrix:
        k = len(partitions_of(n))
        return [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    matrix = action_matrix

    def apply(self, v: FockVector) -> FockVector:
        return v


def number_operator(degree: int) -> NormalOrderedOp:
    """``sum_{i>0} a_{-i} a_i`` truncated to act exactly up to ``degree``."""
    return NormalOrderedOp({GP((-i, i)): 1 for i in range(1, degree + 1)}, degree)


def basis_vectors(max_degree: int) -> Iterable[FockVector]:
    for n in range(max_degree + 1):
        for lam in partitions_of(n):
            yield FockVector.basis(lam)
