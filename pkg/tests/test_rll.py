import itertools

import pytest
from hypothesis import given, strategies as st

from dloco.codec import ConstraintViolation, format_word
from dloco.rll import (
    RllCode,
    difference_vector,
    format_bits,
    has_alternating_pattern,
    integrate,
    longest_zero_run,
    q16_tandem_map,
    rll_rank,
    rll_unrank,
)

import oracles


def test_difference_and_integrate():
    assert difference_vector("0110") == (1, 0, 1)
    assert integrate((1, 0, 1)) == (0, 1, 1, 0)
    assert integrate((1, 0, 1), first=1) == (1, 0, 0, 1)
    assert longest_zero_run((1, 0, 0, 0, 1, 0)) == 3
    assert longest_zero_run(()) == 0


@given(st.lists(st.integers(0, 1), min_size=2, max_size=30))
def test_integrate_inverts_difference(bits):
    assert difference_vector(integrate(bits, 0)) == tuple(bits)
    assert integrate(difference_vector(bits), bits[0]) == tuple(bits)


def test_small_code():
    code = RllCode(4, 2)
    assert (code.n, code.k_constraint, code.cardinality) == (3, 1, 5)
    assert format_bits(rll_unrank(code, 0)) == "011"
    assert {rll_unrank(code, i) for i in range(5)} == set(oracles.rll_words(3, 1))


@pytest.mark.parametrize("m, ell", [(4, 2), (6, 3), (8, 3), (10, 2), (9, 4)])
def test_bijection_onto_rll_words(m, ell):
    code = RllCode(m, ell)
    words = {rll_unrank(code, i) for i in range(code.cardinality)}
    assert words == set(oracles.rll_words(m - 1, ell - 1))
    for i in range(code.cardinality):
        assert rll_rank(code, rll_unrank(code, i)) == i


def test_rll_errors():
    code = RllCode(6, 3)
    with pytest.raises(ConstraintViolation):
        rll_rank(code, "10001")
    with pytest.raises(ValueError):
        rll_rank(code, "1010")
    with pytest.raises(ValueError):
        rll_unrank(code, code.cardinality)
    with pytest.raises(ValueError):
        RllCode(1, 3)


def test_q16_map():
    assert format_word(q16_tandem_map([0, 7])) == "AATC"
    with pytest.raises(ConstraintViolation):
        q16_tandem_map([5, 5])
    with pytest.raises(ValueError):
        q16_tandem_map([16])


def test_q16_map_runs_and_patterns():
    worst_run = 0
    for a, b, c in itertools.product(range(16), repeat=3):
        if a == b or b == c:
            continue
        out = q16_tandem_map([a, b, c])
        worst_run = max(worst_run, oracles.longest_run(out))
    assert worst_run == 4
    # distinct 16-ary symbols can still give an alternating base-4 pattern
    assert has_alternating_pattern(q16_tandem_map([1, 2]), 3)
    assert has_alternating_pattern((0, 1, 0, 1, 0))
    assert not has_alternating_pattern((0, 1, 0, 1, 1))
