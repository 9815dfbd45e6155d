"""Binary run-length codes from binary GD-LOCO words, and the q = 16 DNA mapping.

A binary word with no run longer than ``ell`` turns into a word with no
``ell`` consecutive zeros by XOR-ing neighbouring bits.  Complementing a
binary word leaves its difference vector unchanged, and the 0-leading words
are exactly the indices ``[0, N/2)``, so ranking the RLL word through its
0-leading preimage is a bijection onto ``[0, N/2)``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .cardinality import CardinalityTable, CodeParams, cardinality
from .codec import ConstraintViolation, Codeword, max_run, rank, table_for, unrank


def _bits(v: str | Sequence[int]) -> tuple[int, ...]:
    if isinstance(v, str):
        if set(v.strip()) - {"0", "1"}:
            raise ValueError("binary sequences are written with 0 and 1")
        return tuple(int(ch) for ch in v.strip())
    out = tuple(int(b) for b in v)
    if any(b not in (0, 1) for b in out):
        raise ValueError("binary sequences contain only 0 and 1")
    return out


def format_bits(v: Sequence[int]) -> str:
    return "".join(str(b) for b in v)


def difference_vector(c: str | Sequence[int]) -> tuple[int, ...]:
    """XOR of each pair of neighbouring bits, ``len(c) - 1`` entries."""
    c = _bits(c)
    if len(c) < 2:
        raise ValueError("need a word of length >= 2")
    return tuple(a ^ b for a, b in zip(c, c[1:]))


def integrate(v: Sequence[int], first: int = 0) -> tuple[int, ...]:
    """Inverse of :func:`difference_vector` for a given leading bit."""
    out = [first]
    for b in v:
        out.append(out[-1] ^ b)
    return tuple(out)


def longest_zero_run(v: Sequence[int]) -> int:
    best = run = 0
    for b in v:
        run = run + 1 if b == 0 else 0
        best = max(best, run)
    return best


@dataclass(frozen=True)
class RllCode:
    """Binary words of length ``m - 1`` with at most ``ell - 1`` consecutive zeros."""

    m: int
    ell: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("source length m must be >= 2")
        if self.ell < 1:
            raise ValueError("ell must be >= 1")

    @property
    def n(self) -> int:
        return self.m - 1

    @property
    def k_constraint(self) -> int:
        return self.ell - 1

    @property
    def source_params(self) -> CodeParams:
        return CodeParams(2, self.ell, self.m)

    @property
    def table(self) -> CardinalityTable:
        return table_for(2, self.ell, self.m)

    @property
    def cardinality(self) -> int:
        return cardinality(self.table, self.m) // 2

    def is_valid(self, v: Sequence[int]) -> bool:
        return len(v) == self.n and all(b in (0, 1) for b in v) and longest_zero_run(v) <= self.k_constraint


def rll_unrank(code: RllCode, index: int) -> tuple[int, ...]:
    if not 0 <= index < code.cardinality:
        raise ValueError(f"index {index} outside [0, {code.cardinality})")
    return difference_vector(unrank(code.table, index, code.source_params))


def rll_rank(code: RllCode, v: str | Sequence[int]) -> int:
    v = _bits(v)
    if len(v) != code.n:
        raise ValueError(f"expected {code.n} bits, got {len(v)}")
    if longest_zero_run(v) > code.k_constraint:
        raise ConstraintViolation(f"more than {code.k_constraint} consecutive zeros")
    return rank(code.table, integrate(v, 0))


def q16_tandem_map(c: Sequence[int]) -> Codeword:
    """Write each 16-ary symbol as two base-4 digits (high digit first).

    Input words must have no two equal neighbours.
    """
    c = tuple(c)
    if any(not 0 <= s < 16 for s in c):
        raise ValueError("symbols must lie in [0, 15]")
    if max_run(c) > 1:
        raise ConstraintViolation("neighbouring 16-ary symbols must differ")
    out: list[int] = []
    for s in c:
        out.extend(divmod(s, 4))
    return tuple(out)


def has_alternating_pattern(seq: Sequence[int], length: int = 5) -> bool:
    """Whether ``seq`` contains ``a b a b a`` (``length`` symbols) with ``a != b``."""
    for i in range(len(seq) - length + 1):
        a, b = seq[i], seq[i + 1]
        if a != b and all(seq[i + j] == (a if j % 2 == 0 else b) for j in range(length)):
            return True
    return False
