import random

import pytest
from hypothesis import given, strategies as st

from dloco.balancing import DisparityState, gc_content, global_disparity, select_balanced, signed_disparity
from dloco.bridging import Scheme
from dloco.cardinality import CodeParams
from dloco.codec import complement, disparity, parse_word
from dloco.stream import StreamConfig, encode_stream, frame_layout

REFERENCE_IIA = "TTGCGTCGCACGAGCCAACTTCAC"


def test_sequence_measures():
    assert global_disparity(REFERENCE_IIA) == 4
    assert gc_content(REFERENCE_IIA) == pytest.approx(14 / 24)
    assert gc_content("GGCC") == 1.0
    assert global_disparity("") == 0
    with pytest.raises(ValueError):
        gc_content("")


@given(st.lists(st.integers(0, 3), min_size=1, max_size=40))
def test_word_plus_complement_cancels(word):
    assert global_disparity(list(word) + list(complement(word))) == 0


def test_select_rules():
    c = parse_word("GGCAT")  # disparity +1
    assert disparity(c) == 1
    assert select_balanced(c, DisparityState(running=5)) == (complement(c), True)
    assert select_balanced(c, DisparityState(running=-5)) == (c, False)
    assert select_balanced(c, DisparityState(running=0)) == (c, False)
    # pending bridge disparity is counted before choosing
    assert select_balanced(c, DisparityState(running=-1), pending=3) == (complement(c), True)
    with pytest.raises(ValueError):
        select_balanced(parse_word("GGCA"), DisparityState())


def test_state_commit_is_pure():
    s = DisparityState()
    s2 = s.commit(parse_word("GGC"), frames=1)
    assert s == DisparityState()
    assert (s2.running, s2.frames_seen, s2.symbols_seen) == (3, 1, 3)


def _check_prefix_bounds(config: StreamConfig, frames: int, rng: random.Random, bound) -> None:
    layout = frame_layout(config)
    n_bits = layout.stream_bits(frames)
    dna = encode_stream(format(rng.getrandbits(n_bits), f"0{n_bits}b"), config)
    fs = layout.frame_symbols
    for k in range(1, frames + 1):
        prefix = dna[: k * fs] if k < frames or layout.trailing_bridge else dna
        assert abs(signed_disparity(prefix)) <= bound(k), (config.scheme, k)


@pytest.mark.parametrize("scheme", [Scheme.I, Scheme.IIB, Scheme.III])
def test_disparity_stays_within_m_plus_1_after_every_frame(scheme):
    rng = random.Random(14)
    m = 21
    config = StreamConfig(CodeParams(4, 3, m), scheme, True)
    for _ in range(40):
        _check_prefix_bounds(config, rng.randint(1, 100), rng, lambda k: m + 1)


def test_scheme_iia_disparity_bound():
    rng = random.Random(15)
    m = 9
    config = StreamConfig(CodeParams(4, 3, m), Scheme.IIA, True)
    for _ in range(100):
        _check_prefix_bounds(config, rng.randint(1, 40), rng, lambda k: m + 2 * k + 1)


def test_message_indices_stay_in_lower_half():
    config = StreamConfig(CodeParams(4, 3, 21), Scheme.IIB, True)
    assert 2 ** config.codeword_bits <= config.codebook_size // 2
