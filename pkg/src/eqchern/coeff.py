"""Exact coefficient arithmetic.

Three value types live here:

* :class:`RatFunc`, a reduced quotient of multivariate polynomials over the
  rationals.  Polynomial arithmetic and gcds are delegated to FLINT through
  ``python-flint``; this module only keeps the quotient canonical.
* :class:`QSeries`, a power series in ``q`` truncated at a fixed order.
* :class:`AuxSeries`, a truncated Laurent series in an auxiliary variable
  (``z``, ``t0``, ``s``, ``w`` or ``y``) with coefficients in any ring.

A handful of dense linear-algebra helpers over exact fields close the module.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Any, Callable, Iterable, Mapping, Sequence

import flint

VARIABLES = ("t1", "t2", "alpha", "m", "q", "t", "a", "b", "r", "y", "z")
_CTX = flint.fmpq_mpoly_ctx.get(VARIABLES, "deglex")
_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_GENS = _CTX.gens()
_ONE = _CTX.constant(1)
_ZERO = _CTX.constant(0)


class ArithmeticError_(ArithmeticError):
    """Raised for exact-arithmetic precondition failures."""


class WindowError(ValueError):
    """Raised when a truncated object is asked for data it does not hold."""


def _fmpq(x: int | Fraction) -> flint.fmpq:
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    return flint.fmpq(x)


def _poly_of(x: Any):
    if isinstance(x, (int, Fraction)):
        return _CTX.constant(_fmpq(x))
    if isinstance(x, flint.fmpq):
        return _CTX.constant(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a polynomial")


def _poly_str(p) -> str:
    return str(p).replace(" ", "")


class RatFunc:
    """A rational function ``num/den`` over Q in the fixed variable set.

    The pair is kept canonical: ``gcd(num, den) = 1`` and the leading
    coefficient of ``den`` in graded lexicographic order is 1.  Equality is
    therefore structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        if not isinstance(num, flint.fmpq_mpoly):
            num = _poly_of(num)
        if den is None:
            den = _ONE
            _canonical = True
        elif not isinstance(den, flint.fmpq_mpoly):
            den = _poly_of(den)
        if not _canonical:
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if num.is_zero():
                num, den = _ZERO, _ONE
            else:
                if not den.is_constant():
                    g = num.gcd(den)
                    if not g.is_one():
                        num = num / g
                        den = den / g
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den
        self._hash = None

    # construction -------------------------------------------------------
    @staticmethod
    def var(name: str) -> "RatFunc":
        return RatFunc(_GENS[_INDEX[name]], _ONE, _canonical=True)

    @staticmethod
    def coerce(x: Any) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return RatFunc(_poly_of(x), _ONE, _canonical=True)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        if self.num.is_zero():
            return Fraction(0)
        c = self.num.coeffs()[0]
        return Fraction(int(c.p), int(c.q))

    def variables(self) -> set[str]:
        used = set()
        for p in (self.num, self.den):
            for i, d in enumerate(p.degrees()):
                if d > 0:
                    used.add(VARIABLES[i])
        return used

    def degree_in(self, var: str) -> int:
        """Degree of the numerator minus degree of the denominator in ``var``."""
        i = _INDEX[var]
        if self.num.is_zero():
            return -1
        return self.num.degrees()[i] - self.den.degrees()[i]

    def homogeneous_degree(self, names: Sequence[str]) -> int | None:
        """Total degree in ``names`` if numerator and denominator are both
        homogeneous in them, else ``None``.  Zero counts as homogeneous of any
        degree and reports ``-1``."""
        idx = [_INDEX[n] for n in names]

        def degree(p):
            ds = {sum(m[i] for i in idx) for m in p.monoms()}
            return ds.pop() if len(ds) == 1 else None

        if self.num.is_zero():
            return -1
        a, b = degree(self.num), degree(self.den)
        if a is None or b is None:
            return None
        return a - b

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction, flint.fmpq)):
                if other == 0:
                    return self
                c = other if isinstance(other, flint.fmpq) else _fmpq(other)
                return RatFunc(self.num + self.den * c, self.den, _canonical=True)
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num + other.num, _ONE, _canonical=True)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        if g.is_one():
            return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)
        sd = self.den / g
        od = other.den / g
        return RatFunc(self.num * od + other.num * sd, sd * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return self + (-other)
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction, flint.fmpq)):
                if other == 0:
                    return RatFunc(_ZERO, _ONE, _canonical=True)
                c = other if isinstance(other, flint.fmpq) else _fmpq(other)
                return RatFunc(self.num * c, self.den, _canonical=True)
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, _ONE, _canonical=True)
        # cross-cancel to keep the gcds small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1 = self.num / g1 if not g1.is_one() else self.num
        d2 = other.den / g1 if not g1.is_one() else other.den
        n2 = other.num / g2 if not g2.is_one() else other.num
        d1 = self.den / g2 if not g2.is_one() else self.den
        den = d1 * d2
        num = n1 * n2
        if num.is_zero():
            return RatFunc(_ZERO, _ONE, _canonical=True)
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return RatFunc(num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, RatFunc):
            return self * other.inverse()
        if isinstance(other, (int, Fraction, flint.fmpq)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other) if not isinstance(other, flint.fmpq)
                           else 1 / other)
        return NotImplemented

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e >= 0:
            return RatFunc(self.num ** e, self.den ** e, _canonical=True)
        return self.inverse() ** (-e)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.is_one() and self.num == _poly_of(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    # substitution -------------------------------------------------------
    def substitute(self, var: str, value: Any) -> "RatFunc":
        """Exact value of ``self`` at ``var = value``."""
        value = RatFunc.coerce(value)
        i = _INDEX[var]
        num = _poly_subs(self.num, i, value)
        den = _poly_subs(self.den, i, value)
        if den.is_zero():
            bad = [str(f) for f, _ in self.den.factor()[1] if _poly_subs(f, i, value).is_zero()]
            raise ArithmeticError_(
                f"denominator vanishes after {var} -> {value}; offending factor(s): {', '.join(bad)}")
        return num / den

    def subs(self, mapping: Mapping[str, Any]) -> "RatFunc":
        """Sequential substitution, one variable at a time."""
        out = self
        for var, value in mapping.items():
            out = out.substitute(var, value)
        return out

    def swap(self, u: str, v: str) -> "RatFunc":
        gens = list(_GENS)
        i, j = _INDEX[u], _INDEX[v]
        gens[i], gens[j] = gens[j], gens[i]
        return RatFunc(self.num.compose(*gens), self.den.compose(*gens))

    def evaluate(self, mapping: Mapping[str, Any], one: Any) -> Any:
        """Evaluate at ring elements (series, for instance) with ``/`` available."""
        return _poly_eval(self.num, mapping, one) / _poly_eval(self.den, mapping, one)

    def coefficients_in(self, var: str) -> dict[int, "RatFunc"]:
        """Coefficients of a polynomial dependence on ``var`` (denominator must be free of it)."""
        i = _INDEX[var]
        if self.den.degrees()[i] > 0:
            raise ValueError(f"denominator depends on {var}")
        groups: dict[int, dict] = {}
        for mon, c in zip(self.num.monoms(), self.num.coeffs()):
            e = mon[i]
            rest = tuple(0 if k == i else x for k, x in enumerate(mon))
            groups.setdefault(e, {})[rest] = c
        return {e: RatFunc(_CTX.from_dict(d), self.den) for e, d in sorted(groups.items())}

    # rendering ----------------------------------------------------------
    def __str__(self):
        if self.den.is_one():
            return _poly_str(self.num)
        n = _poly_str(self.num)
        d = _poly_str(self.den)
        if len(self.num) > 1 or "/" in n:
            n = f"({n})"
        if len(self.den) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


def _poly_subs(p, i: int, value: RatFunc) -> RatFunc:
    if p.degrees()[i] == 0:
        return RatFunc(p, _ONE, _canonical=True)
    if value.den.is_one():
        gens = list(_GENS)
        gens[i] = value.num
        return RatFunc(p.compose(*gens), _ONE, _canonical=True)
    groups: dict[int, dict] = {}
    for mon, c in zip(p.monoms(), p.coeffs()):
        rest = tuple(0 if k == i else x for k, x in enumerate(mon))
        groups.setdefault(mon[i], {})[rest] = c
    top = max(groups)
    vn, vd = value.num, value.den
    acc = _ZERO
    for e, d in groups.items():
        acc = acc + _CTX.from_dict(d) * vn ** e * vd ** (top - e)
    return RatFunc(acc, vd ** top)


def _poly_eval(p, mapping: Mapping[str, Any], one: Any) -> Any:
    cache: dict[tuple[int, int], Any] = {}

    def power(i: int, e: int):
        key = (i, e)
        if key not in cache:
            base = mapping[VARIABLES[i]]
            cache[key] = base if e == 1 else power(i, e - 1) * base
        return cache[key]

    total = one * 0
    for mon, c in zip(p.monoms(), p.coeffs()):
        term = one * Fraction(int(c.p), int(c.q))
        for i, e in enumerate(mon):
            if e:
                term = term * power(i, e)
        total = total + term
    return total


def var(name: str) -> RatFunc:
    return RatFunc.var(name)


def const(x: int | Fraction) -> RatFunc:
    return RatFunc.coerce(x)


def _is_zero(c: Any) -> bool:
    return c == 0


def _inv(c: Any) -> Any:
    return Fraction(1) / c


def _scale(c: Any, n: int) -> Any:
    """Divide by a nonzero integer exactly."""
    return c * Fraction(1, n)


# ---------------------------------------------------------------------------
# truncated q-series


class QSeries:
    """A power series in ``q`` known through ``q^order``.

    Coefficients are any exact ring values (``Fraction``, :class:`RatFunc`,
    :class:`AuxSeries`, ...).  Products and sums keep the smaller order.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Any], order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = list(coeffs)[: order + 1]
        cs.extend([0] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order

    @staticmethod
    def one(order: int, unit: Any = 1) -> "QSeries":
        return QSeries([unit], order)

    @staticmethod
    def monomial(c: Any, n: int, order: int) -> "QSeries":
        cs = [0] * (order + 1)
        if n <= order:
            cs[n] = c
        return QSeries(cs, order)

    def __getitem__(self, n: int):
        return self.coefficient(n)

    def coefficient(self, n: int):
        if n < 0:
            return 0
        if n > self.order:
            raise WindowError(f"q^{n} is beyond the truncation order {self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise WindowError(f"cannot extend a series known to q^{self.order} up to q^{order}")
        return QSeries(self.coeffs, order)

    def map(self, fn: Callable[[Any], Any]) -> "QSeries":
        return QSeries([fn(c) for c in self.coeffs], self.order)

    def __add__(self, other):
        if isinstance(other, QSeries):
            n = min(self.order, other.order)
            return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)
        cs = list(self.coeffs)
        cs[0] = cs[0] + other
        return QSeries(cs, self.order)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QSeries):
            n = min(self.order, other.order)
            a, b = self.coeffs, other.coeffs
            out = []
            for k in range(n + 1):
                acc = 0
                for i in range(k + 1):
                    x = a[i]
                    if _is_zero(x):
                        continue
                    y = b[k - i]
                    if _is_zero(y):
                        continue
                    acc = x * y + acc
                out.append(acc)
            return QSeries(out, n)
        return QSeries([c * other for c in self.coeffs], self.order)

    def __rmul__(self, other):
        return QSeries([other * c for c in self.coeffs], self.order)

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.order == other.order and all(
                _is_zero(x - y) for x, y in zip(self.coeffs, other.coeffs))
        return NotImplemented

    __hash__ = None

    def shift(self, j: int) -> "QSeries":
        """Multiply by ``q^j`` (``j >= 0``)."""
        return QSeries([0] * j + list(self.coeffs[: self.order + 1 - j]), self.order)

    def inverse(self) -> "QSeries":
        c0 = self.coeffs[0]
        if _is_zero(c0):
            raise ArithmeticError_("series with zero constant term is not invertible")
        inv0 = _inv(c0)
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = 0
            for i in range(1, n + 1):
                if not _is_zero(self.coeffs[i]):
                    acc = acc + self.coeffs[i] * out[n - i]
            out.append(-(acc * inv0))
        return QSeries(out, self.order)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.inverse()
        return QSeries([c / other for c in self.coeffs], self.order)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def log(self) -> "QSeries":
        if not _is_zero(self.coeffs[0] - 1):
            raise ArithmeticError_("log needs constant term 1")
        return QSeries(_log_coeffs(self.coeffs, self.order), self.order)

    def exp(self) -> "QSeries":
        if not _is_zero(self.coeffs[0]):
            raise ArithmeticError_("exp needs constant term 0")
        return QSeries(_exp_coeffs(self.coeffs, self.order, 1), self.order)

    def power(self, c: Any) -> "QSeries":
        """``exp(c * log(self))`` for a constant-term-1 series."""
        if not _is_zero(self.coeffs[0] - 1):
            raise ArithmeticError_("power needs constant term 1")
        if _is_zero(c):
            return QSeries.one(self.order)
        return (self.log() * c).exp()

    def __pow__(self, e):
        if isinstance(e, int) and e >= 0:
            out = QSeries.one(self.order)
            for _ in range(e):
                out = out * self
            return out
        return self.power(e)

    def __str__(self):
        return _render_series(self.coeffs, "q", self.order)

    def __repr__(self):
        return f"QSeries({self})"


def _log_coeffs(f: Sequence[Any], order: int) -> list[Any]:
    # g' = f'/f with f_0 = 1
    g: list[Any] = [0] * (order + 1)
    for n in range(1, order + 1):
        acc = f[n] * n
        for k in range(1, n):
            if _is_zero(g[k]) or _is_zero(f[n - k]):
                continue
            acc = acc - g[k] * f[n - k] * k
        g[n] = _scale(acc, n)
    return g


def _exp_coeffs(g: Sequence[Any], order: int, unit: Any) -> list[Any]:
    h: list[Any] = [unit] + [0] * order
    for n in range(1, order + 1):
        acc = 0
        for k in range(1, n + 1):
            if _is_zero(g[k]) or _is_zero(h[n - k]):
                continue
            acc = g[k] * h[n - k] * k + acc
        h[n] = _scale(acc, n) if not _is_zero(acc) else 0
    return h


def _term_str(c: Any, mono: str) -> tuple[str, str]:
    s = str(c)
    neg = s.startswith("-") and not any(op in s[1:] for op in "+-")
    if neg:
        s = s[1:]
    sign = "-" if neg else "+"
    if not mono:
        return sign, s
    if s == "1":
        return sign, mono
    if any(op in s for op in "+-/") and not (isinstance(c, (int, Fraction)) or
                                            (isinstance(c, RatFunc) and c.is_constant())):
        s = f"({s})"
    return sign, f"{s}*{mono}"


def _render_series(coeffs: Sequence[Any], name: str, order: int, low: int = 0) -> str:
    parts: list[str] = []
    for i, c in enumerate(coeffs):
        if _is_zero(c):
            continue
        e = i + low
        mono = "" if e == 0 else (name if e == 1 else f"{name}^{e}")
        sign, body = _term_str(c, mono)
        if not parts:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    tail = f"O({name}^{order + 1})"
    if not parts:
        return tail
    return "".join(parts) + f" + {tail}"


def pochhammer(a: Any, j: int, order: int) -> QSeries:
    """``(a q^j; q)_inf = prod_{n >= 0} (1 - a q^(n+j))`` through ``q^order``."""
    if j < 0:
        raise ValueError("j must be non-negative")
    cs: list[Any] = [1] + [0] * order
    if _is_zero(a):
        return QSeries(cs, order)
    for e in range(j, order + 1):
        if e == 0:
            cs = [c - c * a if not _is_zero(c) else 0 for c in cs]
            continue
        for i in range(order, e - 1, -1):
            if not _is_zero(cs[i - e]):
                cs[i] = cs[i] - a * cs[i - e]
    return QSeries(cs, order)


def euler_function(order: int) -> QSeries:
    """``(q; q)_inf`` with integer coefficients."""
    return pochhammer(1, 1, order)


# ---------------------------------------------------------------------------
# auxiliary Laurent series

AUX_VARIABLES = ("z", "t0", "s", "w", "y")


class AuxSeries:
    """Truncated Laurent series ``sum c_e x^e`` in an auxiliary variable.

    Coefficients are known exactly for ``low <= e <= high`` and are zero below
    ``low``.  Asking for anything outside ``[low, high]`` raises
    :class:`WindowError`.
    """

    __slots__ = ("var", "low", "high", "terms")

    def __init__(self, var: str, terms: Mapping[int, Any], low: int, high: int):
        if var not in AUX_VARIABLES:
            raise ValueError(f"unknown auxiliary variable {var!r}")
        if high < low - 1:
            raise ValueError("empty window")
        self.var = var
        self.low = low
        self.high = high
        kept = {}
        for e, c in terms.items():
            if e < low and not _is_zero(c):
                raise ValueError(f"coefficient at {var}^{e} lies below the window")
            if low <= e <= high and not _is_zero(c):
                kept[e] = c
        self.terms = kept

    @staticmethod
    def constant(var: str, c: Any, high: int) -> "AuxSeries":
        return AuxSeries(var, {0: c}, 0, high)

    @staticmethod
    def exp_linear(var: str, c: Any, high: int, unit: Any = 1) -> "AuxSeries":
        """``exp(c * x)`` through ``x^high``."""
        terms = {}
        p = unit
        for n in range(high + 1):
            terms[n] = p * Fraction(1, factorial(n))
            p = p * c
        return AuxSeries(var, terms, 0, high)

    def coefficient(self, e: int):
        if e < self.low or e > self.high:
            raise WindowError(f"{self.var}^{e} is outside the window [{self.low}, {self.high}]")
        return self.terms.get(e, 0)

    def __getitem__(self, e: int):
        return self.coefficient(e)

    def valuation(self) -> int | None:
        return min(self.terms) if self.terms else None

    def _check(self, other: "AuxSeries"):
        if other.var != self.var:
            raise ValueError(f"mixing series in {self.var} and {other.var}")

    def with_high(self, high: int) -> "AuxSeries":
        if high > self.high:
            raise WindowError(f"series known only through {self.var}^{self.high}")
        return AuxSeries(self.var, self.terms, self.low, high)

    def __add__(self, other):
        if isinstance(other, AuxSeries):
            self._check(other)
            low = min(self.low, other.low)
            high = min(self.high, other.high)
            terms = dict(self.terms)
            for e, c in other.terms.items():
                terms[e] = terms[e] + c if e in terms else c
            return AuxSeries(self.var, terms, low, high)
        if _is_zero(other):
            return self
        return self + AuxSeries(self.var, {0: other}, min(0, self.low), self.high)

    __radd__ = __add__

    def __neg__(self):
        return AuxSeries(self.var, {e: -c for e, c in self.terms.items()}, self.low, self.high)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AuxSeries):
            self._check(other)
            low = self.low + other.low
            high = min(self.low + other.high, other.low + self.high)
            terms: dict[int, Any] = {}
            for e1, c1 in self.terms.items():
                if e1 + other.low > high:
                    continue
                for e2, c2 in other.terms.items():
                    e = e1 + e2
                    if e > high:
                        continue
                    p = c1 * c2
                    terms[e] = terms[e] + p if e in terms else p
            return AuxSeries(self.var, terms, low, high)
        return AuxSeries(self.var, {e: c * other for e, c in self.terms.items()}, self.low, self.high)

    def __rmul__(self, other):
        return AuxSeries(self.var, {e: other * c for e, c in self.terms.items()}, self.low, self.high)

    def shift(self, k: int) -> "AuxSeries":
        """Multiply by ``x^k``."""
        return AuxSeries(self.var, {e + k: c for e, c in self.terms.items()},
                         self.low + k, self.high + k)

    def inverse(self) -> "AuxSeries":
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("inverse of a series that vanishes on its window")
        a0 = self.terms[v]
        inv0 = _inv(a0)
        n_max = self.high - v
        b = [inv0]
        for n in range(1, n_max + 1):
            acc = 0
            for i in range(1, n + 1):
                c = self.terms.get(v + i)
                if c is not None:
                    acc = acc + c * b[n - i]
            b.append(-(acc * inv0))
        return AuxSeries(self.var, {-v + n: c for n, c in enumerate(b)}, -v, -v + n_max)

    def __truediv__(self, other):
        if isinstance(other, AuxSeries):
            return self * other.inverse()
        return AuxSeries(self.var, {e: c / other for e, c in self.terms.items()}, self.low, self.high)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def exp(self, unit: Any = 1) -> "AuxSeries":
        if any(e <= 0 for e in self.terms):
            raise ArithmeticError_("exp needs positive valuation")
        g = [self.terms.get(e, 0) for e in range(self.high + 1)]
        return AuxSeries(self.var, dict(enumerate(_exp_coeffs(g, self.high, unit))), 0, self.high)

    def __eq__(self, other):
        if isinstance(other, AuxSeries):
            if (self.var, self.low, self.high) != (other.var, other.low, other.high):
                return False
            keys = set(self.terms) | set(other.terms)
            return all(_is_zero(self.terms.get(e, 0) - other.terms.get(e, 0)) for e in keys)
        if _is_zero(other):
            return all(_is_zero(c) for c in self.terms.values())
        return NotImplemented

    __hash__ = None

    def __str__(self):
        cs = [self.terms.get(e, 0) for e in range(self.low, self.high + 1)]
        return _render_series(cs, self.var, self.high, self.low)

    def __repr__(self):
        return f"AuxSeries({self})"


# ---------------------------------------------------------------------------
# dense exact linear algebra

Matrix = list[list[Any]]


def identity(n: int, unit: Any = 1) -> Matrix:
    return [[unit if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = 0
            for k in range(inner):
                x = row[k]
                if _is_zero(x):
                    continue
                y = b[k][j]
                if _is_zero(y):
                    continue
                acc = x * y + acc
            new.append(acc)
        out.append(new)
    return out


def mat_equal(a: Matrix, b: Matrix) -> bool:
    if len(a) != len(b):
        return False
    return all(len(r) == len(s) and all(_is_zero(x - y) for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_inverse(a: Matrix) -> Matrix:
    n = len(a)
    work = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not _is_zero(work[r][col])), None)
        if piv is None:
            raise ArithmeticError_("singular matrix")
        work[col], work[piv] = work[piv], work[col]
        inv = _inv(work[col][col])
        work[col] = [x * inv if not _is_zero(x) else 0 for x in work[col]]
        for r in range(n):
            if r == col or _is_zero(work[r][col]):
                continue
            f = work[r][col]
            work[r] = [x - f * y if not _is_zero(y) else x for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def solve_least_pivots(a: Matrix, b: Sequence[Any]) -> tuple[list[Any] | None, int | None]:
    """Solve ``a x = b`` exactly by Gaussian elimination with column pivots in order.

    Free columns are set to zero.  Returns ``(x, None)`` on success and
    ``(None, row)`` where ``row`` is the first inconsistent equation otherwise.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    work = [list(a[i]) + [b[i]] for i in range(rows)]
    origin = list(range(rows))
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not _is_zero(work[i][c])), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        origin[r], origin[piv] = origin[piv], origin[r]
        inv = _inv(work[r][c])
        work[r] = [x * inv for x in work[r]]
        for i in range(rows):
            if i != r and not _is_zero(work[i][c]):
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    bad = [origin[i] for i in range(r, rows) if not _is_zero(work[i][cols])]
    if bad:
        return None, min(bad)
    x: list[Any] = [0] * cols
    for i, c in enumerate(pivots):
        x[c] = work[i][cols]
    return x, None
