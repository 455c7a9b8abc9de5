"""Partitions, generalized partitions and Young-diagram statistics.

Diagrams use the English convention: row ``i`` (from 0) holds ``parts[i]``
cells, and a cell is addressed as ``(row, column)``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import factorial, prod
from typing import Iterator


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_multiset(cls, parts) -> "Partition":
        return cls(sorted(parts, reverse=True))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        return cls(int(x) for x in text.split(","))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    def conjugate(self) -> "Partition":
        if not self:
            return Partition(())
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def n(self) -> int:
        """``n(lambda) = sum (i-1) lambda_i``."""
        return sum(i * p for i, p in enumerate(self))

    def z(self) -> int:
        return prod(k ** m * factorial(m) for k, m in Counter(self).items())

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, p in enumerate(self):
            for j in range(p):
                yield (i, j)

    def cell_stats(self, i: int, j: int) -> "CellStats":
        if not (0 <= i < len(self) and 0 <= j < self[i]):
            raise ValueError(f"cell ({i}, {j}) is not in the diagram of {tuple(self)}")
        conj = self.conjugate()
        arm = self[i] - j - 1
        leg = conj[j] - i - 1
        return CellStats(arm=arm, coarm=j, leg=leg, coleg=i, hook=arm + leg + 1, content=j - i)

    def all_cell_stats(self) -> list["CellStats"]:
        conj = self.conjugate()
        return [CellStats(arm=self[i] - j - 1, coarm=j, leg=conj[j] - i - 1, coleg=i,
                          hook=self[i] - j + conj[j] - i - 1, content=j - i)
                for i, j in self.cells()]

    def stats(self) -> "PartitionStats":
        return PartitionStats(self.size, self.length, self.n(), self.z(), self.conjugate())

    def __repr__(self):
        return f"Partition({tuple(self)})"

    def __str__(self):
        return ",".join(map(str, self))


@dataclass(frozen=True)
class CellStats:
    arm: int
    coarm: int
    leg: int
    coleg: int
    hook: int
    content: int


@dataclass(frozen=True)
class PartitionStats:
    size: int
    length: int
    n: int
    z: int
    conjugate: Partition


class GeneralizedPartition(tuple):
    """A finite multiset of nonzero integers, stored in ascending order.

    The tuple order matches the normally ordered monomial: the most negative
    parts first, positive parts last.
    """

    def __new__(cls, parts=()):
        parts = tuple(sorted(int(p) for p in parts))
        if any(p == 0 for p in parts):
            raise ValueError("generalized partitions have nonzero parts")
        return super().__new__(cls, parts)

    @classmethod
    def from_multiplicities(cls, mult: dict[int, int]) -> "GeneralizedPartition":
        if any(m < 0 for m in mult.values()):
            raise ValueError("multiplicities must be non-negative")
        return cls([i for i, m in mult.items() for _ in range(m)])

    @classmethod
    def parse(cls, text: str) -> "GeneralizedPartition":
        """Read ``"(-2)^1 (1)^2"``; the exponent may be omitted."""
        text = text.strip()
        if not text or text in ("()", "∅"):
            return cls(())
        mult: dict[int, int] = {}
        pos = 0
        for m in re.finditer(r"\(\s*(-?\d+)\s*\)(?:\^(\d+))?|(-?\d+)(?:\^(\d+))?", text):
            if text[pos:m.start()].strip(" ,"):
                raise ValueError(f"cannot parse generalized partition {text!r}")
            part = int(m.group(1) or m.group(3))
            e = int(m.group(2) or m.group(4) or 1)
            mult[part] = mult.get(part, 0) + e
            pos = m.end()
        if text[pos:].strip(" ,"):
            raise ValueError(f"cannot parse generalized partition {text!r}")
        return cls.from_multiplicities(mult)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    @property
    def length(self) -> int:
        return len(self)

    @property
    def weight(self) -> int:
        """``|lambda| = sum i m_i``."""
        return sum(self)

    def factorial(self) -> int:
        """``lambda^! = prod m_i!``."""
        return prod(factorial(m) for m in Counter(self).values())

    @property
    def plus(self) -> "GeneralizedPartition":
        return GeneralizedPartition(p for p in self if p > 0)

    @property
    def minus(self) -> "GeneralizedPartition":
        return GeneralizedPartition(p for p in self if p < 0)

    def __neg__(self) -> "GeneralizedPartition":
        return GeneralizedPartition(-p for p in self)

    def delta(self) -> int:
        return sum(1 for p in self if p < 0) - sum(1 for p in self if p > 0)

    def plus_size(self) -> int:
        return sum(p for p in self if p > 0)

    def s(self) -> int:
        return sum(p * p for p in self)

    def creation_partition(self) -> Partition:
        """The partition formed by the absolute values of the negative parts."""
        return Partition.from_multiset(-p for p in self if p < 0)

    def annihilation_partition(self) -> Partition:
        return Partition.from_multiset(p for p in self if p > 0)

    def stats(self) -> "GPStats":
        return GPStats(length=self.length, weight=self.weight, factorial=self.factorial(),
                       plus=self.plus, minus=self.minus, negated=-self, delta=self.delta(),
                       plus_size=self.plus_size(), s=self.s())

    def __repr__(self):
        return f"GeneralizedPartition({tuple(self)})"

    def __str__(self):
        if not self:
            return "()"
        return " ".join(f"({i})^{m}" for i, m in sorted(Counter(self).items()))


@dataclass(frozen=True)
class GPStats:
    length: int
    weight: int
    factorial: int
    plus: GeneralizedPartition
    minus: GeneralizedPartition
    negated: GeneralizedPartition
    delta: int
    plus_size: int
    s: int


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in lexicographically descending order."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def gen(rest: int, cap: int):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, cap), 0, -1):
            for tail in gen(rest - k, k):
                yield (k,) + tail

    return tuple(Partition(p) for p in gen(n, n))


def partitions_up_to(n: int) -> Iterator[Partition]:
    for d in range(n + 1):
        yield from partitions_of(d)


def _bounded_partitions(total: int, max_len: int, max_part: int) -> Iterator[tuple[int, ...]]:
    def gen(rest: int, cap: int, slots: int):
        if rest == 0:
            yield ()
            return
        if slots == 0:
            return
        for k in range(min(rest, cap), 0, -1):
            for tail in gen(rest - k, k, slots - 1):
                yield (k,) + tail

    yield from gen(total, max_part, max_len)


def generalized_partitions(weight: int, max_length: int, bound: int | None,
                           min_length: int = 0,
                           max_plus_size: int | None = None) -> list[GeneralizedPartition]:
    """Generalized partitions with ``|lambda| = weight``, length in
    ``[min_length, max_length]`` and every part in ``[-bound, bound]``
    (optionally also ``|lambda^+| <= max_plus_size``).

    The order is lexicographically descending on the ascending-part tuples of
    the positive part, then of the negative part.
    """
    if bound is None:
        raise ValueError("enumerating generalized partitions needs a part bound")
    if max_length < 0 or bound < 0:
        raise ValueError("bounds must be non-negative")
    out: list[GeneralizedPartition] = []
    max_pos = bound * max_length
    if max_plus_size is not None:
        max_pos = min(max_pos, max_plus_size)
    for pos_size in range(max_pos, -1, -1):
        neg_size = pos_size - weight
        if neg_size < 0:
            continue
        for plus in _bounded_partitions(pos_size, max_length, bound):
            room = max_length - len(plus)
            for minus in _bounded_partitions(neg_size, room, bound):
                gp = GeneralizedPartition(list(plus) + [-p for p in minus])
                if len(gp) >= min_length:
                    out.append(gp)
    return out


# ---------------------------------------------------------------------------
# dominance


class Dominance(Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def dominance(lam: Partition, mu: Partition) -> Dominance:
    if sum(lam) != sum(mu):
        raise ValueError("dominance compares partitions of the same size")
    if tuple(lam) == tuple(mu):
        return Dominance.EQUAL
    a = b = 0
    le = ge = True
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a > b:
            le = False
        if a < b:
            ge = False
    if le:
        return Dominance.LESS
    if ge:
        return Dominance.GREATER
    return Dominance.INCOMPARABLE


def dominated_by(mu: Partition, lam: Partition) -> bool:
    """``mu <= lam`` in dominance order."""
    return dominance(mu, lam) in (Dominance.LESS, Dominance.EQUAL)
