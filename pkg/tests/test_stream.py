import random

import pytest
from hypothesis import given, settings, strategies as st

from dloco.bridging import Flag, Scheme
from dloco.cardinality import CodeParams
from dloco.codec import parse_word
from dloco.stream import (
    DecodeReport,
    FrameReport,
    StreamConfig,
    decode_stream,
    encode_stream,
    frame_layout,
    split_frames,
)

import oracles

BITS = "10101000110011111010101011011010011111"


def cfg(m=9, scheme="iia", balancing=False):
    return StreamConfig(CodeParams(4, 3, m), scheme, balancing)


def test_frame_layouts():
    lay = frame_layout(cfg(9, "iia"))
    assert (lay.frame_symbols, lay.frame_bits) == (12, 19)
    lay = frame_layout(cfg(9, "iii"))
    assert (lay.frame_symbols, lay.frame_bits) == (14, 17)
    lay = frame_layout(cfg(21, "i", True))
    assert (lay.frame_symbols, lay.frame_bits) == (22, 41)
    assert lay.stream_bits(3) == 3 * 41 - 1
    assert lay.stream_symbols(3) == 3 * 22 - 1
    lay = frame_layout(cfg(21, "iib", True))
    assert (lay.frame_symbols, lay.frame_bits) == (24, 41)


def test_config_validation():
    with pytest.raises(ValueError):
        StreamConfig(CodeParams(4, 3, 10), "iib", True)
    with pytest.raises(ValueError):
        StreamConfig(CodeParams(4, 3, 10), "iii", False)
    with pytest.raises(ValueError):
        StreamConfig(CodeParams(4, 2, 9), "iia", False)
    assert StreamConfig().params == CodeParams(4, 3, 21)


def test_example_streams():
    assert encode_stream(BITS, cfg()) == "TTGCGTCGCACGAGCCAACTTCAC"
    assert encode_stream(BITS[:18] + BITS[19:37], cfg(9, "iib")) == "TTGCGTCGCAGTAGCCAACTTGCT"
    assert encode_stream(BITS[:17] + BITS[19:36], cfg(9, "iii")) == "TTGCGTCGCGAGACAGCCAACTTCTCTC"


def test_split_frames_pads():
    frames = split_frames("1" * 20, cfg())
    assert len(frames) == 2
    assert frames[0] == (2**17 - 1, (1, 1))
    assert frames[1] == (2**16, (0, 0))


def test_decode_flags_only_corrupted_frame():
    dna = list(encode_stream(BITS, cfg()))
    dna[3] = "A" if dna[3] != "A" else "T"
    bits, report = decode_stream("".join(dna), cfg())
    assert report.frames[0].flagged and not report.frames[1].flagged
    assert Flag.CHECKSUM_MISMATCH in report.frames[0].flags or report.frames[0].run_violation
    assert report.flagged_frames == 1


def test_run_violation_zero_fills():
    config = cfg()
    dna = "AAAACGTCG" + "ACG" + "AGCCAACTTCAC"
    bits, report = decode_stream(dna, config)
    assert report.frames[0].run_violation
    assert bits[:17] == "0" * 17


def test_decode_accepts_lowercase_and_whitespace():
    bits, report = decode_stream("ttgcgtcgc acg\nagccaactt cac", cfg())
    assert bits == BITS and report.clean


def test_decode_length_errors():
    with pytest.raises(ValueError):
        decode_stream("TTGCGTCGCAC", cfg())
    with pytest.raises(ValueError):
        decode_stream("TTGCGTCGCACGAGCCAACTTCAC", cfg(), n_bits=100)
    with pytest.raises(ValueError):
        encode_stream("", cfg())
    with pytest.raises(ValueError):
        encode_stream("0120", cfg())


def test_out_of_range_fold_is_flagged():
    config = cfg(9, "iib", True)
    # the largest index folds to 0: fine; an index just above the lower half folds too high
    from dloco.codec import format_word, unrank

    n = config.codebook_size
    mid = unrank(config.table, 2**config.codeword_bits, config.params)
    from dloco.bridging import bridge_encode

    bridge = bridge_encode("iib", mid[-1], None, mid, (0,)).symbols
    _, report = decode_stream(format_word(mid + bridge), config)
    assert 2**config.codeword_bits < n - 1 - 2**config.codeword_bits
    assert report.frames[0].index_out_of_range


def test_report_rendering():
    report = DecodeReport([FrameReport(0), FrameReport(1, (Flag.CLASS_VIOLATION,), run_violation=True)])
    assert report.to_text().splitlines() == ["frame 1: run_violation, class_violation", "frames=2 flagged=1"]
    assert report.to_records().splitlines()[-1] == "total_frames=2 flagged_frames=1"
    assert not report.clean


CONFIGS = [
    (scheme, m, bal)
    for scheme in ("i", "iia", "iib", "iii")
    for m in (9, 21, 33)
    for bal in (False, True)
]


@pytest.mark.parametrize("scheme, m, balancing", CONFIGS)
def test_round_trip_and_run_limit(scheme, m, balancing):
    config = cfg(m, scheme, balancing)
    layout = frame_layout(config)
    rng = random.Random(hash((scheme, m, balancing)) & 0xFFFF)
    for _ in range(15):
        n_bits = rng.randint(1, 12 * layout.frame_bits)
        bits = format(rng.getrandbits(n_bits), f"0{n_bits}b")
        dna = encode_stream(bits, config)
        assert oracles.longest_run(dna) <= 3
        back, report = decode_stream(dna, config, n_bits)
        assert back == bits
        assert report.clean


@pytest.mark.parametrize("scheme", ["i", "iia", "iib", "iii"])
def test_rate_realization(scheme):
    from fractions import Fraction

    from dloco.analysis import rate

    config = cfg(21, scheme, True)
    layout = frame_layout(config)
    assert Fraction(layout.frame_bits, 2 * layout.frame_symbols) == rate(scheme, config.table, 21)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["i", "iia", "iib", "iii"]), st.binary(min_size=1, max_size=40))
def test_round_trip_property(scheme, payload):
    bits = "".join(format(b, "08b") for b in payload)
    config = cfg(21, scheme, True)
    back, report = decode_stream(encode_stream(bits, config), config, len(bits))
    assert back == bits and report.clean


def test_complemented_frames_decode():
    config = cfg(21, "iib", True)
    layout = frame_layout(config)
    bits = "0" * layout.stream_bits(10)
    dna = encode_stream(bits, config)
    # every frame carries index 0, a heavily AT-rich word, so balancing must flip some
    words = {dna[j * 24 : j * 24 + 21] for j in range(10)}
    assert len(words) == 2
    assert decode_stream(dna, config, len(bits))[0] == bits
    assert parse_word(dna)
