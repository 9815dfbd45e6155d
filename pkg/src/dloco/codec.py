"""Lexicographic rank/unrank for run-length-limited q-ary codewords.

A codeword is a tuple of integer symbols written left to right, so element 0
is the most significant symbol ``c_{m-1}`` and element ``m-1`` is ``c_0``.
For q = 4 the symbols render as ``A=0, T=1, G=2, C=3``; the ordering
``A < T < G < C`` is the integer ordering.

Ranking walks the word once, keeping only the trailing run (last symbol and
its run length).  At position ``i`` every smaller symbol ``d`` contributes the
number of valid completions of length ``i + 1`` that begin with ``d``:

* ``d`` differs from the trailing symbol: ``S(i) + S(i-1) + ... + S(i-ell+1)``
* ``d`` extends a run of length ``k < ell``: ``S(i) + ... + S(i-ell+k+1)``
* ``d`` would extend a run of length ``ell``: 0
"""

from __future__ import annotations

from collections.abc import Sequence
from functools import lru_cache

from .cardinality import CardinalityTable, CodeParams, build_cardinality_table, cardinality

DNA = "ATGC"
_DNA_INDEX = {ch: i for i, ch in enumerate(DNA)}
_DNA_SYMBOLS = frozenset(range(4))

Codeword = tuple[int, ...]


class ConstraintViolation(ValueError):
    """A word contains a run longer than the code allows."""


def parse_word(text: str, q: int = 4) -> Codeword:
    """Parse ``"ATGC"`` (q = 4) or a digit string (q <= 10) into symbols."""
    text = text.strip()
    if q == 4 and text and not text.isdigit():
        try:
            return tuple(_DNA_INDEX[ch] for ch in text.upper())
        except KeyError as exc:
            raise ValueError(f"not a DNA symbol: {exc.args[0]!r}") from None
    if q > 10:
        raise ValueError("digit strings only cover q <= 10")
    word = tuple(int(ch) for ch in text)
    if any(s >= q for s in word):
        raise ValueError(f"symbol out of range for q={q}: {text!r}")
    return word


def format_word(word: Sequence[int], q: int = 4) -> str:
    if q == 4:
        return "".join(DNA[s] for s in word)
    if q > 10:
        raise ValueError("digit strings only cover q <= 10")
    return "".join(str(s) for s in word)


def max_run(word: Sequence[int]) -> int:
    best = run = 0
    prev = None
    for s in word:
        if s == prev:
            run += 1
            if run > best:
                best = run
        else:
            run = 1
            prev = s
    return best or run


def is_valid(word: Sequence[int], params: CodeParams) -> bool:
    return (
        len(word) == params.m
        and all(0 <= s < params.q for s in word)
        and max_run(word) <= params.ell
    )


@lru_cache(maxsize=64)
def table_for(q: int, ell: int, m: int) -> CardinalityTable:
    """Shared, cached table with horizon at least ``m``."""
    return build_cardinality_table(q, ell, max(m, 1))


def _completions(table: CardinalityTable, i: int, run: int) -> int:
    """Completions of length ``i + 1`` whose leading run may be at most ``ell - run``."""
    return table.s_sum(i - table.ell + run + 1, i)


def symbol_contribution(
    table: CardinalityTable,
    prefix_run: tuple[int | None, int],
    candidate: int,
    i: int,
) -> int:
    """Number of valid words that agree with the prefix and have a smaller symbol at ``i``.

    ``prefix_run`` is ``(last_symbol, run_length)`` of the already fixed prefix,
    ``(None, 0)`` when the prefix is empty.  ``i`` counts the symbols after
    this one, so the leading symbol of a length-``m`` word has ``i = m - 1``.
    """
    last, k = prefix_run
    if last is None:
        if k != 0:
            raise ValueError("empty prefix must have run length 0")
    elif not 1 <= k <= table.ell:
        raise ValueError(f"run length {k} outside [1, {table.ell}]")
    if not 0 <= candidate < table.q:
        raise ValueError(f"symbol {candidate} outside alphabet of size {table.q}")
    if i < 0:
        raise ValueError("position must be non-negative")

    full = _completions(table, i, 0)
    if last is None or last >= candidate:
        return candidate * full
    return (candidate - 1) * full + _completions(table, i, k)


def rank(table: CardinalityTable, word: Sequence[int]) -> int:
    """Lexicographic index of ``word`` among all valid words of its length."""
    m = len(word)
    if m < 1:
        raise ValueError("empty word")
    if m > table.m_max:
        raise ValueError(f"word length {m} beyond table horizon {table.m_max}")
    q, ell = table.q, table.ell
    rows = table.completion_rows
    index = 0
    last, k = None, 0
    for pos, c in enumerate(word):
        if not 0 <= c < q:
            raise ValueError(f"symbol {c} outside alphabet of size {q}")
        if c:
            row = rows[m - 1 - pos]
            if last is None or last >= c:
                index += c * row[0]
            else:
                index += (c - 1) * row[0] + row[k]
        k = k + 1 if c == last else 1
        if k > ell:
            raise ConstraintViolation(f"run longer than {ell} ending at symbol {pos}")
        last = c
    return index


def unrank(table: CardinalityTable, index: int, params: CodeParams) -> Codeword:
    """The valid word of length ``params.m`` whose lexicographic index is ``index``."""
    if (table.q, table.ell) != (params.q, params.ell):
        raise ValueError("table and code parameters disagree")
    m, q = params.m, params.q
    n = cardinality(table, m)
    if not 0 <= index < n:
        raise ValueError(f"index {index} outside [0, {n})")
    rows = table.completion_rows
    residual = index
    word = []
    last, k = None, 0
    for i in range(m - 1, -1, -1):
        row = rows[i]
        full = row[0]
        for d in range(q):
            count = row[k] if d == last else full
            # saturated runs give count 0 and are skipped, which is the tie-break
            # toward the larger of two equal cumulative contributions
            if residual < count:
                break
            residual -= count
        else:  # pragma: no cover - unreachable for in-range indices
            raise AssertionError("residual exhausted the alphabet")
        k = k + 1 if d == last else 1
        last = d
        word.append(d)
    return tuple(word)


def complement(word: Sequence[int], q: int = 4) -> Codeword:
    """Symbol-wise ``v -> q - 1 - v``; swaps A<->C and T<->G for DNA."""
    return tuple(q - 1 - s for s in word)


def disparity(word: Sequence[int] | str) -> int:
    """``#G + #C - #A - #T`` of a DNA word (symbols 2 and 3 count as GC)."""
    if isinstance(word, str):
        word = parse_word(word)
    if not set(word) <= _DNA_SYMBOLS:
        raise ValueError("disparity is defined for DNA (q = 4) symbols only")
    return 2 * (word.count(2) + word.count(3)) - len(word)
