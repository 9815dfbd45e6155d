"""Rates, capacity and the reference tables for ``ell = 3`` DNA codes.

Rates are exact :class:`~fractions.Fraction` values and are only rounded when
rendered.  Capacity comes from the largest root of the characteristic
polynomial ``x**ell - (q-1) * (x**(ell-1) + ... + 1)`` of the run-length
state graph, cross-checked against power iteration on its adjacency matrix.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import ROUND_DOWN, ROUND_HALF_EVEN, Decimal
from fractions import Fraction

import numpy as np

from .bridging import Scheme, bridge_arity
from .cardinality import (
    CardinalityTable,
    adder_size_bits,
    build_cardinality_table,
    cardinality,
    floor_log2,
    storage_overhead_bits,
)

RATE_TABLE_M = (9, 13, 21, 33, 51, 99)
RATE_TABLE_MPRIME = (5, 7, 11, 17, 21, 33)
ADDER_TABLE_M = (9, 21, 33, 51, 99)
ADDER_TABLE_MPRIME = (5, 11, 17, 21, 33)
STORAGE_M = (27, 17, 33)


def fstd_adjacency(q: int, ell: int) -> np.ndarray:
    """Adjacency matrix of the ``ell``-state run-length graph.

    State ``j`` means the current run has length ``j + 1``.  Any of the
    ``q - 1`` other symbols returns to state 0; repeating the symbol moves on.
    """
    if q < 2 or ell < 1:
        raise ValueError("need q >= 2 and ell >= 1")
    f = np.zeros((ell, ell), dtype=np.int64)
    f[:, 0] = q - 1
    for j in range(ell - 1):
        f[j, j + 1] = 1
    return f


def characteristic(x: float, q: int, ell: int) -> float:
    return x**ell - (q - 1) * sum(x**j for j in range(ell))


def beta_max(q: int, ell: int, tol: float = 1e-12) -> float:
    """Largest real root of the characteristic polynomial, by bisection on ``[q-1, q]``."""
    if q < 2 or ell < 1:
        raise ValueError("need q >= 2 and ell >= 1")
    lo, hi = float(q - 1), float(q)
    if ell == 1:
        return lo  # x - (q - 1) vanishes at the bracket edge
    # negative at q-1, positive at q
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if characteristic(mid, q, ell) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def beta_power_iteration(q: int, ell: int, tol: float = 1e-13, max_iter: int = 100_000) -> float:
    """Dominant eigenvalue of :func:`fstd_adjacency` by power iteration."""
    f = fstd_adjacency(q, ell).astype(float)
    v = np.ones(ell)
    est = 0.0
    for _ in range(max_iter):
        w = f @ v
        new = float(np.linalg.norm(w) / np.linalg.norm(v))
        v = w / np.linalg.norm(w)
        if abs(new - est) < tol:
            return new
        est = new
    return est


def capacity(q: int, ell: int) -> float:
    """Normalized capacity ``log2(beta_max) / log2(q)``."""
    return math.log2(beta_max(q, ell)) / math.log2(q)


def capacity_power_iteration(q: int, ell: int) -> float:
    return math.log2(beta_power_iteration(q, ell)) / math.log2(q)


@dataclass(frozen=True)
class CapacityModel:
    q: int
    ell: int

    @property
    def adjacency(self) -> np.ndarray:
        return fstd_adjacency(self.q, self.ell)

    @property
    def beta_max(self) -> float:
        return beta_max(self.q, self.ell)

    @property
    def normalized_capacity(self) -> float:
        return capacity(self.q, self.ell)


def finite_length_rate(table: CardinalityTable, m: int) -> float:
    """``log2(N(m)) / (m * log2(q))``, which tends to the capacity."""
    # math.log2 accepts integers of any size
    return math.log2(cardinality(table, m)) / (m * math.log2(table.q))


def frame_length(scheme: Scheme, m: int) -> int:
    return m + bridge_arity(scheme)[0]


def rate(scheme: Scheme | str, table: CardinalityTable, m: int, balancing: bool = True) -> Fraction:
    """Normalized rate (message bits per frame over ``2 * frame symbols``).

    With balancing the codeword carries ``floor(log2(N(m))) - 1`` bits, which
    gives the balanced forms of every scheme.  ``m`` is the full codeword
    length, so Scheme III at ``m'`` is ``rate(III, table, 3 * m')``.
    """
    scheme = Scheme.parse(scheme)
    if table.q != 4:
        raise ValueError("rates are defined for DNA codes (q = 4)")
    if scheme is Scheme.III and m % 3:
        raise ValueError("scheme III needs m divisible by 3")
    bits = floor_log2(cardinality(table, m)) - (1 if balancing else 0) + bridge_arity(scheme)[1]
    return Fraction(bits, 2 * frame_length(scheme, m))


def render(x: Fraction | float, digits: int = 4, mode: str = "half-even") -> str:
    """Fixed-point text for ``x``; ``mode`` is ``"half-even"`` or ``"truncate"``."""
    rounding = {"half-even": ROUND_HALF_EVEN, "truncate": ROUND_DOWN}[mode]
    if isinstance(x, Fraction):
        value = Decimal(x.numerator) / Decimal(x.denominator)
    else:
        value = Decimal(repr(x))
    return str(value.quantize(Decimal(1).scaleb(-digits), rounding=rounding))


@dataclass(frozen=True)
class RateRow:
    m: int
    r1: Fraction
    r2: Fraction
    r3: Fraction
    m_prime: int
    r4: Fraction


def rate_table(
    table: CardinalityTable | None = None,
    ms: tuple[int, ...] = RATE_TABLE_M,
    m_primes: tuple[int, ...] = RATE_TABLE_MPRIME,
) -> list[RateRow]:
    """Balanced rates for Schemes I, II-A, II-B at ``ms`` and III at ``m_primes``."""
    if len(ms) != len(m_primes):
        raise ValueError("m and m' lists must have equal length")
    horizon = max(max(ms), 3 * max(m_primes))
    table = table.extended(horizon) if table is not None else build_cardinality_table(4, 3, horizon)
    return [
        RateRow(
            m,
            rate(Scheme.I, table, m),
            rate(Scheme.IIA, table, m),
            rate(Scheme.IIB, table, m),
            mp,
            rate(Scheme.III, table, 3 * mp),
        )
        for m, mp in zip(ms, m_primes)
    ]


@dataclass(frozen=True)
class OverheadRow:
    scheme: Scheme
    m: int
    strand_length: int
    frames: int
    gc_low: int
    gc_high: int
    detects_single: bool
    rate: Fraction
    storage_bits: int


def disparity_bound(scheme: Scheme, m: int, frames: int) -> int:
    """Largest global disparity a balanced stream of ``frames`` frames can reach."""
    if scheme is Scheme.IIA:
        return m + 2 * frames + 1
    return m + 1


def comparison_row(scheme: Scheme | str, m: int, frames: int, table: CardinalityTable | None = None) -> OverheadRow:
    """Strand length, guaranteed GC-content range, rate and storage of one design."""
    scheme = Scheme.parse(scheme)
    table = table.extended(m) if table is not None else build_cardinality_table(4, 3, m)
    length = frames * frame_length(scheme, m)
    frac = Fraction(disparity_bound(scheme, m, frames), length)
    # GC fraction lies in 1/2 -/+ frac/2; shown as whole percent
    low = round((Fraction(1, 2) - frac / 2) * 100)
    high = round((Fraction(1, 2) + frac / 2) * 100)
    return OverheadRow(
        scheme, m, length, frames, low, high, scheme is not Scheme.I,
        rate(scheme, table, m), storage_overhead_bits(table, m),
    )


COMPARISON_DESIGNS = ((Scheme.III, 27, 9), (Scheme.IIB, 21, 10), (Scheme.I, 17, 10), (Scheme.IIA, 33, 9), (Scheme.I, 21, 10))


def comparison_table(table: CardinalityTable | None = None) -> list[OverheadRow]:
    return [comparison_row(s, m, k, table) for s, m, k in COMPARISON_DESIGNS]


def adder_table(table: CardinalityTable | None = None) -> list[tuple[int, int, int, int]]:
    """``(m, adder bits, m', adder bits)`` rows for ``ell = 3``."""
    horizon = max(max(ADDER_TABLE_M), 3 * max(ADDER_TABLE_MPRIME))
    table = table.extended(horizon) if table is not None else build_cardinality_table(4, 3, horizon)
    return [
        (m, adder_size_bits(table, m), mp, adder_size_bits(table, 3 * mp))
        for m, mp in zip(ADDER_TABLE_M, ADDER_TABLE_MPRIME)
    ]


def storage_table(table: CardinalityTable | None = None, ms: tuple[int, ...] = STORAGE_M) -> list[tuple[int, int]]:
    table = table.extended(max(ms)) if table is not None else build_cardinality_table(4, 3, max(ms))
    return [(m, storage_overhead_bits(table, m)) for m in ms]


# -- rendering ---------------------------------------------------------------

ROUNDING_NOTE = (
    "note: rates are exact fractions rounded half-even to 4 decimals; "
    "R3(21) = 41/48 = 0.854166... is shown as 0.8542"
)


def _csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _aligned(rows: list[list[str]]) -> str:
    widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows) + "\n"


def _emit(rows: list[list[str]], fmt: str) -> str:
    if fmt == "csv":
        return _csv(rows)
    if fmt == "text":
        return _aligned(rows)
    raise ValueError(f"unknown format {fmt!r}")


def format_rate_table(rows: list[RateRow], fmt: str = "text", mode: str = "half-even") -> str:
    cap = render(capacity(4, 3), 4, "half-even")
    out = [["m", "R1", "m", "R2", "m", "R3", "m'", "R4"]]
    for r in rows:
        out.append([
            str(r.m), render(r.r1, mode=mode), str(r.m), render(r.r2, mode=mode),
            str(r.m), render(r.r3, mode=mode), str(r.m_prime), render(r.r4, mode=mode),
        ])
    out.append(["capacity", cap] * 4)
    text = _emit(out, fmt)
    return text + ROUNDING_NOTE + "\n" if fmt == "text" and mode == "half-even" else text


def format_adder_table(rows, fmt: str = "text") -> str:
    out = [["m", "adder_bits", "m'", "adder_bits"]]
    out += [[str(c) for c in r] for r in rows]
    return _emit(out, fmt)


def format_storage_table(rows, fmt: str = "text") -> str:
    out = [["m", "storage_bits"]] + [[str(m), str(b)] for m, b in rows]
    return _emit(out, fmt)


def format_comparison_table(rows: list[OverheadRow], fmt: str = "text") -> str:
    out = [["length", "gc_content", "single_detect", "rate", "storage_bits", "design"]]
    for r in rows:
        m_label = f"m'={r.m // 3}" if r.scheme is Scheme.III else f"m={r.m}"
        out.append([
            str(r.strand_length), f"{r.gc_low}%-{r.gc_high}%", "yes" if r.detects_single else "no",
            render(r.rate), f"{r.storage_bits}", f"{m_label} K={r.frames} {r.scheme.label}",
        ])
    return _emit(out, fmt)
