"""Bridging symbols between consecutive DNA codewords.

The outer bridge symbols always differ from the codeword symbols next to them,
so no run can grow across a codeword boundary.  The sequence order around a
bridge is::

    I      L1  B         L2
    II-A   L1  L4 L3 L5  L2
    II-B   L1  L4 L3 L5  L2
    III    L1  L4 L31 L32 L33 L5  L2

where ``L1`` ends the codeword being bridged and ``L2`` starts the next one
(absent at the end of a stream, in which case its exclusion is dropped).
"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass

from .cardinality import CodeParams

ALPHABET = (0, 1, 2, 3)
AT = (0, 1)
GC = (2, 3)


class Scheme(str, enum.Enum):
    I = "i"
    IIA = "iia"
    IIB = "iib"
    III = "iii"

    @classmethod
    def parse(cls, value: str | Scheme) -> Scheme:
        if isinstance(value, Scheme):
            return value
        key = value.strip().lower().replace("-", "").replace("_", "")
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown bridging scheme {value!r}") from None

    @property
    def label(self) -> str:
        return {"i": "I", "iia": "II-A", "iib": "II-B", "iii": "III"}[self.value]


class Flag(str, enum.Enum):
    CHECKSUM_MISMATCH = "checksum_mismatch"
    INVALID_BRIDGE_SYMBOL = "invalid_bridge_symbol"
    CLASS_VIOLATION = "class_violation"


_ARITY = {Scheme.I: (1, 1), Scheme.IIA: (3, 2), Scheme.IIB: (3, 1), Scheme.III: (5, 0)}


def bridge_arity(scheme: Scheme) -> tuple[int, int]:
    """``(bridge symbols, carried message bits)`` for a scheme."""
    return _ARITY[Scheme.parse(scheme)]


@dataclass(frozen=True)
class Bridge:
    scheme: Scheme
    symbols: tuple[int, ...]
    bits: tuple[int, ...]


def check_scheme(scheme: Scheme, params: CodeParams) -> None:
    """Raise ``ValueError`` if ``scheme`` cannot bridge codewords of ``params``."""
    if params.q != 4:
        raise ValueError("bridging schemes are defined for DNA (q = 4) only")
    if scheme in (Scheme.IIA, Scheme.IIB) and params.ell < 3:
        raise ValueError(f"scheme {scheme.label} needs ell >= 3")
    if scheme is Scheme.III:
        if params.ell != 3:
            raise ValueError("scheme III needs ell = 3")
        if params.m % 3:
            raise ValueError("scheme III needs m divisible by 3")


def checksum(seq: Sequence[int]) -> int:
    """Sum of the symbols mod 4 under ``A=0, T=1, G=2, C=3``."""
    if not len(seq):
        raise ValueError("checksum of an empty sequence")
    return sum(seq) % 4


def _extremes(exclude: Sequence[int | None]) -> list[int]:
    return [s for s in ALPHABET if s not in exclude]


def _pick(candidates: list[int], bit: int) -> int:
    return candidates[-1] if bit else candidates[0]


def _read(candidates: list[int], symbol: int) -> int | None:
    """Bit carried by ``symbol``, or ``None`` if it is not an extreme candidate."""
    if symbol == candidates[0]:
        return 0
    if symbol == candidates[-1]:
        return 1
    return None


def _class_partner(anchor: int, neighbour: int | None) -> int:
    """Highest symbol of the opposite GC class to ``anchor``, avoiding ``neighbour``."""
    pool = AT if anchor in GC else GC
    return max(s for s in pool if s != neighbour)


def _thirds(codeword: Sequence[int]) -> list[Sequence[int]]:
    n = len(codeword) // 3
    return [codeword[:n], codeword[n:2 * n], codeword[2 * n:]]


def bridge_encode(
    scheme: Scheme,
    left_end: int,
    right_start: int | None,
    codeword: Sequence[int],
    bits: Sequence[int] = (),
) -> Bridge:
    """Bridging symbols that follow ``codeword``.

    ``left_end`` is the last symbol of ``codeword`` and ``right_start`` the first
    symbol of the next codeword (``None`` at the end of a stream).
    """
    scheme = Scheme.parse(scheme)
    bits = tuple(int(b) for b in bits)
    n_bits = _ARITY[scheme][1]
    if len(bits) != n_bits or any(b not in (0, 1) for b in bits):
        raise ValueError(f"scheme {scheme.label} carries exactly {n_bits} bits, got {bits}")
    l1, l2 = left_end, right_start

    if scheme is Scheme.I:
        symbols = (_pick(_extremes((l1, l2)), bits[0]),)
    elif scheme is Scheme.IIA:
        b1, b2 = bits
        l3 = (checksum(codeword) + 2 * b1 + b2) % 4
        l4 = _pick(_extremes((l1, l3)), b1)
        l5 = _pick(_extremes((l2, l3)), b2)
        symbols = (l4, l3, l5)
    elif scheme is Scheme.IIB:
        (b,) = bits
        l3 = (checksum(codeword) + 2 * b) % 4
        l4 = _pick(_extremes((l1, l3)), b)
        l5 = _class_partner(l3, l2)
        symbols = (l4, l3, l5)
    else:
        if len(codeword) % 3:
            raise ValueError("scheme III needs a codeword length divisible by 3")
        middle = tuple(checksum(part) for part in _thirds(codeword))
        l4 = _class_partner(middle[0], l1)
        l5 = _class_partner(middle[2], l2)
        symbols = (l4, *middle, l5)
    return Bridge(scheme, symbols, bits)


def bridge_decode(
    scheme: Scheme,
    bridge_symbols: Sequence[int],
    codeword: Sequence[int],
    left_end: int,
    right_start: int | None,
) -> tuple[tuple[int, ...], list[Flag]]:
    """Recover the carried bits and list every violated bridge relation.

    Bits are returned best effort (an unreadable bit is reported as 0 and
    flagged); detections are flags, never exceptions.
    """
    scheme = Scheme.parse(scheme)
    n_sym, _ = _ARITY[scheme]
    if len(bridge_symbols) != n_sym:
        raise ValueError(f"scheme {scheme.label} uses {n_sym} bridge symbols, got {len(bridge_symbols)}")
    l1, l2 = left_end, right_start
    flags: list[Flag] = []

    def read(candidates: list[int], symbol: int) -> int:
        bit = _read(candidates, symbol)
        if bit is None:
            if Flag.INVALID_BRIDGE_SYMBOL not in flags:
                flags.append(Flag.INVALID_BRIDGE_SYMBOL)
            return 0
        return bit

    if scheme is Scheme.I:
        (b,) = bridge_symbols
        return (read(_extremes((l1, l2)), b),), flags

    if scheme is Scheme.III:
        l4, *middle, l5 = bridge_symbols
        if len(codeword) % 3 or tuple(middle) != tuple(checksum(p) for p in _thirds(codeword)):
            flags.append(Flag.CHECKSUM_MISMATCH)
        if l4 != _class_partner(middle[0], l1) or l5 != _class_partner(middle[2], l2):
            flags.append(Flag.CLASS_VIOLATION)
        return (), flags

    l4, l3, l5 = bridge_symbols
    if scheme is Scheme.IIA:
        b1 = read(_extremes((l1, l3)), l4)
        b2 = read(_extremes((l2, l3)), l5)
        bits: tuple[int, ...] = (b1, b2)
        expected = (checksum(codeword) + 2 * b1 + b2) % 4
    else:
        b = read(_extremes((l1, l3)), l4)
        bits = (b,)
        expected = (checksum(codeword) + 2 * b) % 4
        if l5 != _class_partner(l3, l2):
            flags.append(Flag.CLASS_VIOLATION)
    if expected != l3:
        flags.insert(0, Flag.CHECKSUM_MISMATCH)
    return bits, flags
