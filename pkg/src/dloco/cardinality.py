"""Cardinality tables for q-ary codes with bounded runs of identical symbols.

Everything downstream (rank, unrank, rates, adder sizes) is driven by the
sequence ``S(i) = (q - 1) * N(i) / q`` where ``N(i)`` is the number of length-``i``
words over a ``q``-ary alphabet with no run longer than ``ell``.  Storing ``S``
instead of ``N`` keeps every entry an exact integer: the formal value
``N(0) = q / (q - 1)`` becomes ``S(0) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path


@dataclass(frozen=True)
class CodeParams:
    """Code family selector: alphabet size, run limit and codeword length."""

    q: int = 4
    ell: int = 3
    m: int = 9

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"alphabet size q must be >= 2, got {self.q}")
        if self.ell < 1:
            raise ValueError(f"run limit ell must be >= 1, got {self.ell}")
        if self.m < 1:
            raise ValueError(f"codeword length m must be >= 1, got {self.m}")


@dataclass(frozen=True)
class CardinalityTable:
    q: int
    ell: int
    s_values: tuple[int, ...]
    # running prefix sums of s_values, _prefix[j] = S(0) + ... + S(j - 1)
    _prefix: tuple[int, ...] = field(repr=False, compare=False, default=())

    def __post_init__(self):
        if not self._prefix:
            acc = [0]
            for s in self.s_values:
                acc.append(acc[-1] + s)
            object.__setattr__(self, "_prefix", tuple(acc))

    @property
    def m_max(self) -> int:
        return len(self.s_values) - 1

    @property
    def params(self) -> CodeParams:
        return CodeParams(self.q, self.ell, self.m_max)

    def s(self, i: int) -> int:
        """``S(i)``, with ``S(i) = 0`` for negative ``i``."""
        if i < 0:
            return 0
        if i > self.m_max:
            raise ValueError(f"index {i} beyond table horizon {self.m_max}")
        return self.s_values[i]

    def s_sum(self, lo: int, hi: int) -> int:
        """``S(lo) + ... + S(hi)`` (inclusive); negative indices contribute 0."""
        lo = max(lo, 0)
        if hi < lo:
            return 0
        if hi > self.m_max:
            raise ValueError(f"index {hi} beyond table horizon {self.m_max}")
        return self._prefix[hi + 1] - self._prefix[lo]

    @cached_property
    def completion_rows(self) -> tuple[tuple[int, ...], ...]:
        """``rows[i][k]``: completions of length ``i + 1`` whose leading run is at most ``ell - k``.

        Row ``i`` holds ``S(i) + ... + S(i - ell + k + 1)`` for ``k = 0..ell``.
        """
        ell = self.ell
        return tuple(
            tuple(self.s_sum(i - ell + k + 1, i) for k in range(ell + 1))
            for i in range(self.m_max + 1)
        )

    def extended(self, m_max: int) -> CardinalityTable:
        """Return a table with a larger horizon, reusing the existing entries."""
        if m_max <= self.m_max:
            return self
        values = list(self.s_values)
        _grow(values, self.q, self.ell, m_max)
        return CardinalityTable(self.q, self.ell, tuple(values))

    def dump(self, path) -> None:
        lines = [f"{self.q} {self.ell} {self.m_max}"]
        lines.extend(str(s) for s in self.s_values)
        Path(path).write_text("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path) -> CardinalityTable:
        header, *rows = Path(path).read_text().splitlines()
        q, ell, m_max = (int(x) for x in header.split())
        values = tuple(int(r) for r in rows if r.strip())
        if len(values) != m_max + 1:
            raise ValueError(f"expected {m_max + 1} entries, found {len(values)}")
        table = cls(q, ell, values)
        if table != build_cardinality_table(q, ell, m_max):
            raise ValueError("table entries do not satisfy the run-length recursion")
        return table


def _grow(values: list[int], q: int, ell: int, m_max: int) -> None:
    while len(values) <= m_max:
        i = len(values)
        if i == 0:
            values.append(1)
        elif i <= ell:
            values.append((q - 1) * q ** (i - 1))
        else:
            values.append((q - 1) * sum(values[i - ell:i]))


def build_cardinality_table(q: int, ell: int, m_max: int) -> CardinalityTable:
    """Build ``S(0..m_max)`` for the ``(q, ell)`` run-length constraint."""
    if q < 2:
        raise ValueError(f"alphabet size q must be >= 2, got {q}")
    if ell < 1:
        raise ValueError(f"run limit ell must be >= 1, got {ell}")
    if m_max < 1:
        raise ValueError(f"table horizon must be >= 1, got {m_max}")
    values: list[int] = []
    _grow(values, q, ell, m_max)
    return CardinalityTable(q, ell, tuple(values))


def _check_m(table: CardinalityTable, m: int) -> None:
    if m < 1:
        raise ValueError("N(m) is only a codebook size for m >= 1")
    if m > table.m_max:
        raise ValueError(f"m={m} beyond table horizon {table.m_max}")


def cardinality(table: CardinalityTable, m: int) -> int:
    """Number of length-``m`` words with no run longer than ``table.ell``."""
    _check_m(table, m)
    return table.q * table.s_values[m] // (table.q - 1)


def floor_log2(x: int) -> int:
    if x < 1:
        raise ValueError("log2 of a non-positive integer")
    return x.bit_length() - 1


def ceil_log2(x: int) -> int:
    if x < 1:
        raise ValueError("log2 of a non-positive integer")
    return (x - 1).bit_length()


def storage_overhead_bits(table: CardinalityTable, m: int) -> int:
    """Bits needed to store ``S(0), ..., S(m-1)`` offline, entry by entry.

    Each entry costs ``ceil(log2(S(i)))`` bits, except that ``S(0) = 1`` still
    occupies one bit.  For ``i >= 1`` and ``q = 4`` no entry is a power of two,
    so this is the bit length of every entry.
    """
    _check_m(table, m)
    return sum(max(1, ceil_log2(table.s_values[i])) for i in range(m))


def adder_size_bits(table: CardinalityTable, m: int) -> int:
    """``floor(log2(N(m) / 2))``: the message length when balancing is on."""
    n = cardinality(table, m)
    # floor(log2(n / 2)) == floor(log2(n)) - 1 for every integer n >= 2
    return floor_log2(n) - 1
