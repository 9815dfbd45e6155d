"""GC-content balancing by choosing each codeword or its complement.

Every odd-length DNA word has nonzero disparity, and complementing a word
negates it.  Choosing the member of ``{c, complement(c)}`` whose disparity sign
opposes the running disparity keeps the running value within one frame of
zero, independent of how many frames have been written.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .codec import Codeword, complement, disparity, parse_word


@dataclass(frozen=True)
class DisparityState:
    running: int = 0
    frames_seen: int = 0
    symbols_seen: int = 0

    def commit(self, symbols: Sequence[int], frames: int = 0) -> DisparityState:
        return DisparityState(
            self.running + disparity(symbols),
            self.frames_seen + frames,
            self.symbols_seen + len(symbols),
        )


def select_balanced(
    c: Sequence[int], state: DisparityState, pending: int = 0
) -> tuple[Codeword, bool]:
    """Pick ``c`` or its complement so its disparity opposes the running total.

    ``pending`` is disparity already fixed but not yet committed to ``state``
    (a bridge whose symbols do not depend on the choice).  A running total of
    zero keeps ``c``.
    """
    if len(c) % 2 == 0:
        raise ValueError("balancing needs odd-length codewords")
    running = state.running + pending
    p = disparity(c)
    if running == 0 or (p > 0) != (running > 0):
        return tuple(c), False
    return complement(c), True


def _symbols(dna: Sequence[int] | str) -> Sequence[int]:
    return parse_word(dna) if isinstance(dna, str) else dna


def signed_disparity(dna: Sequence[int] | str) -> int:
    return disparity(_symbols(dna))


def global_disparity(dna: Sequence[int] | str) -> int:
    """``|#G + #C - #A - #T|`` over a whole sequence."""
    return abs(signed_disparity(dna))


def gc_content(dna: Sequence[int] | str) -> float:
    seq = _symbols(dna)
    if not len(seq):
        raise ValueError("GC-content of an empty sequence")
    gc = sum(1 for s in seq if s >= 2)
    return gc / len(seq)
