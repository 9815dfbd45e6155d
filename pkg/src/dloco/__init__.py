"""Lexicographically ordered run-length-limited codes for DNA storage."""

from .balancing import DisparityState, gc_content, global_disparity, select_balanced
from .bridging import Flag, Scheme, bridge_decode, bridge_encode, checksum
from .cardinality import (
    CardinalityTable,
    CodeParams,
    adder_size_bits,
    build_cardinality_table,
    cardinality,
    storage_overhead_bits,
)
from .codec import complement, disparity, format_word, parse_word, rank, unrank
from .stream import DecodeReport, StreamConfig, decode_stream, encode_stream, frame_layout

__all__ = [
    "CardinalityTable",
    "CodeParams",
    "DecodeReport",
    "DisparityState",
    "Flag",
    "Scheme",
    "StreamConfig",
    "adder_size_bits",
    "bridge_decode",
    "bridge_encode",
    "build_cardinality_table",
    "cardinality",
    "checksum",
    "complement",
    "decode_stream",
    "disparity",
    "encode_stream",
    "format_word",
    "frame_layout",
    "gc_content",
    "global_disparity",
    "parse_word",
    "rank",
    "select_balanced",
    "storage_overhead_bits",
    "unrank",
]
