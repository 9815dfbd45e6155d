"""Binary message stream <-> framed, bridged, optionally balanced DNA.

A frame is one codeword followed by its bridge.  Message bits are consumed in
stream order: the codeword index (most significant bit first), then the
bits carried by the bridge that follows it.  Scheme I bridges exist only
between codewords, so the last frame of a Scheme I stream has no bridge.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from .balancing import DisparityState, select_balanced
from .bridging import Flag, Scheme, bridge_arity, bridge_decode, bridge_encode, check_scheme
from .cardinality import CardinalityTable, CodeParams, cardinality, floor_log2
from .codec import DNA, ConstraintViolation, disparity, parse_word, rank, table_for, unrank


@dataclass(frozen=True)
class StreamConfig:
    params: CodeParams = field(default_factory=lambda: CodeParams(4, 3, 21))
    scheme: Scheme = Scheme.IIB
    balancing: bool = True

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme.parse(self.scheme))
        check_scheme(self.scheme, self.params)
        if self.balancing and self.params.m % 2 == 0:
            raise ValueError("balancing needs an odd codeword length")

    @property
    def table(self) -> CardinalityTable:
        p = self.params
        return table_for(p.q, p.ell, p.m)

    @property
    def codebook_size(self) -> int:
        return cardinality(self.table, self.params.m)

    @property
    def codeword_bits(self) -> int:
        return floor_log2(self.codebook_size) - (1 if self.balancing else 0)

    @property
    def message_bits_per_frame(self) -> int:
        return self.codeword_bits + bridge_arity(self.scheme)[1]


@dataclass(frozen=True)
class FrameLayout:
    scheme: Scheme
    codeword_symbols: int
    bridge_symbols: int
    codeword_bits: int
    bridge_bits: int

    @property
    def frame_symbols(self) -> int:
        return self.codeword_symbols + self.bridge_symbols

    @property
    def frame_bits(self) -> int:
        return self.codeword_bits + self.bridge_bits

    @property
    def codeword_slice(self) -> slice:
        return slice(0, self.codeword_symbols)

    @property
    def bridge_slice(self) -> slice:
        return slice(self.codeword_symbols, self.frame_symbols)

    @property
    def trailing_bridge(self) -> bool:
        """Whether the final frame of a stream carries a bridge."""
        return self.scheme is not Scheme.I

    def stream_bits(self, frames: int) -> int:
        if self.trailing_bridge:
            return frames * self.frame_bits
        return frames * self.frame_bits - self.bridge_bits

    def stream_symbols(self, frames: int) -> int:
        if self.trailing_bridge:
            return frames * self.frame_symbols
        return frames * self.frame_symbols - self.bridge_symbols

    def frames_for_bits(self, n_bits: int) -> int:
        if n_bits < 1:
            raise ValueError("empty message")
        k = -(-n_bits // self.frame_bits)
        while self.stream_bits(k) < n_bits:
            k += 1
        return k

    def frames_for_symbols(self, n_symbols: int) -> int:
        extra = 0 if self.trailing_bridge else self.bridge_symbols
        k, rem = divmod(n_symbols + extra, self.frame_symbols)
        if rem or k < 1:
            raise ValueError(
                f"{n_symbols} symbols is not a whole number of {self.frame_symbols}-symbol frames"
            )
        return k


def frame_layout(config: StreamConfig) -> FrameLayout:
    n_sym, n_bits = bridge_arity(config.scheme)
    return FrameLayout(config.scheme, config.params.m, n_sym, config.codeword_bits, n_bits)


@dataclass(frozen=True)
class FrameReport:
    index: int
    flags: tuple[Flag, ...] = ()
    index_out_of_range: bool = False
    run_violation: bool = False

    @property
    def flagged(self) -> bool:
        return bool(self.flags) or self.index_out_of_range or self.run_violation

    def describe(self) -> list[str]:
        names = [f.value for f in self.flags]
        if self.run_violation:
            names.insert(0, "run_violation")
        if self.index_out_of_range:
            names.insert(0, "index_out_of_range")
        return names


@dataclass
class DecodeReport:
    frames: list[FrameReport] = field(default_factory=list)

    @property
    def total_frames(self) -> int:
        return len(self.frames)

    @property
    def flagged_frames(self) -> int:
        return sum(f.flagged for f in self.frames)

    @property
    def clean(self) -> bool:
        return self.flagged_frames == 0

    def to_text(self) -> str:
        lines = [
            f"frame {f.index}: {', '.join(f.describe())}" for f in self.frames if f.flagged
        ]
        lines.append(f"frames={self.total_frames} flagged={self.flagged_frames}")
        return "\n".join(lines)

    def to_records(self) -> str:
        lines = [
            f"frame={f.index} flags={','.join(f.describe())}" for f in self.frames if f.flagged
        ]
        lines.append(f"total_frames={self.total_frames} flagged_frames={self.flagged_frames}")
        return "\n".join(lines)


def _as_bits(bits: str | Sequence[int]) -> list[int]:
    if isinstance(bits, str):
        bits = bits.strip()
        if set(bits) - {"0", "1"}:
            raise ValueError("bit strings may only contain 0 and 1")
        return [int(b) for b in bits]
    out = [int(b) for b in bits]
    if any(b not in (0, 1) for b in out):
        raise ValueError("bits must be 0 or 1")
    return out


def _bits_to_int(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


def _int_to_bits(value: int, width: int) -> str:
    return format(value, f"0{width}b") if width else ""


def split_frames(bits: str | Sequence[int], config: StreamConfig) -> list[tuple[int, tuple[int, ...]]]:
    """Zero-pad ``bits`` to whole frames; return ``(codeword index, bridge bits)`` per frame."""
    layout = frame_layout(config)
    bits = _as_bits(bits)
    k = layout.frames_for_bits(len(bits))
    bits = bits + [0] * (layout.stream_bits(k) - len(bits))
    frames = []
    pos = 0
    for j in range(k):
        idx = _bits_to_int(bits[pos:pos + layout.codeword_bits])
        pos += layout.codeword_bits
        if j < k - 1 or layout.trailing_bridge:
            extra = tuple(bits[pos:pos + layout.bridge_bits])
            pos += layout.bridge_bits
        else:
            extra = ()
        frames.append((idx, extra))
    return frames


def encode_frames(
    frames: Sequence[tuple[int, tuple[int, ...]]], config: StreamConfig
) -> list[int]:
    """Encode pre-split ``(index, bridge bits)`` frames into DNA symbols."""
    layout = frame_layout(config)
    params, scheme, table = config.params, config.scheme, config.table
    limit = 1 << layout.codeword_bits
    out: list[int] = []
    state = DisparityState()
    prev: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def bridge_after(prev_cw, prev_bits, nxt):
        return bridge_encode(scheme, prev_cw[-1], nxt, prev_cw, prev_bits)

    for idx, extra in frames:
        if not 0 <= idx < limit:
            raise ValueError(f"codeword index {idx} needs more than {layout.codeword_bits} bits")
        c = unrank(table, idx, params)
        bridge = bridge_after(*prev, c[0]) if prev is not None else None
        if config.balancing:
            pending = 0
            alt = None
            if prev is not None:
                alt = bridge_after(*prev, params.q - 1 - c[0])
                # count the pending bridge only when the choice cannot change it
                d_keep, d_flip = disparity(bridge.symbols), disparity(alt.symbols)
                if d_keep == d_flip:
                    pending = d_keep
            c, flipped = select_balanced(c, state, pending)
            if flipped:
                bridge = alt
        if bridge is not None:
            out.extend(bridge.symbols)
            state = state.commit(bridge.symbols)
        out.extend(c)
        state = state.commit(c, frames=1)
        prev = (c, extra)
    if prev is not None and layout.trailing_bridge:
        out.extend(bridge_after(*prev, None).symbols)
    return out


def encode_stream(bits: str | Sequence[int], config: StreamConfig) -> str:
    """Encode a binary message into an uppercase DNA string.

    The final partial frame is zero-padded; pass the original bit count to
    :func:`decode_stream` to trim the padding.
    """
    symbols = encode_frames(split_frames(bits, config), config)
    return "".join(DNA[s] for s in symbols)


def _dna_symbols(dna: str | Sequence[int]) -> tuple[int, ...]:
    if isinstance(dna, str):
        return parse_word("".join(dna.split()).upper()) if dna.strip() else ()
    return tuple(dna)


def decode_frame(
    config: StreamConfig,
    symbols: Sequence[int],
    start: int,
    index: int,
    with_bridge: bool,
) -> tuple[str, tuple[int, ...], FrameReport]:
    """Decode the frame beginning at ``symbols[start]``.

    Returns the codeword's message bits, the bridge bits and the frame report.
    The first symbol of the following codeword, if any, is read from ``symbols``.
    """
    layout = frame_layout(config)
    m = layout.codeword_symbols
    table = config.table
    cw = tuple(symbols[start:start + m])
    if len(cw) != m:
        raise ValueError(f"frame {index} is truncated")
    run_violation = False
    out_of_range = False
    width = layout.codeword_bits
    message = "0" * width
    try:
        g = rank(table, cw)
    except ConstraintViolation:
        run_violation = True
    else:
        if config.balancing and g >= 1 << width:
            g = config.codebook_size - 1 - g
        if g >= 1 << width:
            out_of_range = True
        else:
            message = _int_to_bits(g, width)

    bits: tuple[int, ...] = ()
    flags: list[Flag] = []
    if with_bridge:
        b0 = start + m
        bridge = symbols[b0:b0 + layout.bridge_symbols]
        nxt = b0 + layout.bridge_symbols
        right = symbols[nxt] if nxt < len(symbols) else None
        bits, flags = bridge_decode(config.scheme, bridge, cw, cw[-1], right)
    report = FrameReport(index, tuple(flags), out_of_range, run_violation)
    return message, bits, report


def decode_stream(
    dna: str | Sequence[int], config: StreamConfig, n_bits: int | None = None
) -> tuple[str, DecodeReport]:
    """Decode DNA back to message bits plus a per-frame detection report.

    Flagged codewords contribute zero bits; ``n_bits`` trims tail padding.
    """
    symbols = _dna_symbols(dna)
    if any(not 0 <= s < 4 for s in symbols):
        raise ValueError("DNA symbols must lie in [0, 3]")
    layout = frame_layout(config)
    k = layout.frames_for_symbols(len(symbols))
    parts: list[str] = []
    report = DecodeReport()
    for j in range(k):
        with_bridge = layout.trailing_bridge or j < k - 1
        message, bits, frame = decode_frame(config, symbols, j * layout.frame_symbols, j, with_bridge)
        parts.append(message)
        parts.append("".join(str(b) for b in bits))
        report.frames.append(frame)
    out = "".join(parts)
    if n_bits is not None:
        if n_bits > len(out):
            raise ValueError(f"stream carries only {len(out)} bits, {n_bits} requested")
        out = out[:n_bits]
    return out, report
