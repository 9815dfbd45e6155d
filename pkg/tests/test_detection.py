import math

import pytest
from hypothesis import given, strategies as st

from dloco.bridging import Scheme
from dloco.cardinality import CodeParams
from dloco.detection import (
    DEFAULT_P_GRID,
    MonteCarloStats,
    analytic_bound,
    bound_I,
    bound_II,
    emit_bound_curves,
    monte_carlo_detection,
    monte_carlo_sweep,
    p_un_scheme_III,
    p_un_scheme_IIB,
    substitute_channel,
    undetected_pattern_count,
)
from dloco.stream import StreamConfig

import oracles


def test_channel_extremes():
    dna = "ACGTACGTTTGA"
    assert substitute_channel(dna, 0.0) == dna
    hit = substitute_channel(dna, 1.0, seed=3)
    assert all(a != b for a, b in zip(hit, dna))
    assert substitute_channel((0, 1, 2), 0.0) == (0, 1, 2)
    with pytest.raises(ValueError):
        substitute_channel(dna, 1.5)


def test_channel_statistics_and_determinism():
    dna = "ACGT" * 250_000
    out = substitute_channel(dna, 0.01, seed=9)
    changed = [a for a, b in zip(out, dna) if a != b]
    assert abs(len(changed) / len(dna) - 0.01) < 0.0005
    assert out == substitute_channel(dna, 0.01, seed=9)
    assert out != substitute_channel(dna, 0.01, seed=10)


def test_undetected_pattern_count_matches_enumeration():
    for r in range(2, 9):
        assert undetected_pattern_count(r) == oracles.zero_sum_patterns(r)
    for r in range(2, 31):
        assert undetected_pattern_count(r) * 4 == 3**r - 3 * (-1) ** (r - 1)
    with pytest.raises(ValueError):
        undetected_pattern_count(1)


def test_bound_values():
    # direct evaluation of the formula
    assert bound_I(14, 0.01) == pytest.approx(0.00280041467, rel=1e-8)
    # leading term of bound II is C(n, 2) p^2 / 3
    n, p = 23, 1e-5
    assert bound_II(n, p) == pytest.approx(math.comb(n, 2) * p**2 / 3, rel=1e-3)
    assert bound_II(n, 0.05, terms=2) < bound_II(n, 0.05)
    assert bound_II(n, 0.0) == 0.0
    with pytest.raises(ValueError):
        bound_II(1, 0.1)


@given(st.integers(2, 60), st.floats(1e-4, 0.3))
def test_bound_II_below_bound_I_and_monotone(n, p):
    # each miss fraction is at most 1/3, with equality at r = 2
    assert bound_II(n, p) <= bound_I(n, p) * (1 + 1e-9) + 1e-15
    assert bound_II(n, p * 0.9) <= bound_II(n, p)


def test_scheme_bounds():
    assert p_un_scheme_IIB(21, 0.01) == bound_II(23, 0.01)
    p1 = bound_II(8, 0.1)
    q = 0.9**8
    assert p_un_scheme_III(7, 0.1) == pytest.approx(3 * p1 * q * q + 3 * p1 * p1 * q + p1**3)
    iii = StreamConfig(CodeParams(4, 3, 21), Scheme.III, True)
    assert analytic_bound(iii, 0.02) == p_un_scheme_III(7, 0.02)
    with pytest.raises(ValueError):
        analytic_bound(StreamConfig(CodeParams(4, 3, 21), Scheme.IIA, True), 0.02)
    # slope 2 on a log-log plot at small p
    for f in (lambda p: p_un_scheme_III(7, p), lambda p: p_un_scheme_IIB(21, p)):
        slope = math.log(f(2e-4) / f(1e-4)) / math.log(2)
        assert slope == pytest.approx(2.0, abs=0.01)


def test_stats_helpers():
    a = MonteCarloStats(frames=100, errored=10, detected=8, undetected=2)
    b = a.merge(a)
    assert (b.frames, b.undetected) == (200, 4)
    assert b.undetected_rate == 0.02
    assert b.undetected_given_errored == 0.2
    assert b.half_width() == pytest.approx(3 * math.sqrt(0.02 * 0.98 / 200))
    assert "undetected=4" in b.summary()
    assert MonteCarloStats().undetected_rate == 0.0


def test_noiseless_channel_has_no_errors():
    config = StreamConfig(CodeParams(4, 3, 21), Scheme.IIB, True)
    s = monte_carlo_detection(config, 0.0, 500)
    assert (s.frames, s.errored, s.detected, s.undetected, s.false_alarms) == (500, 0, 0, 0, 0)


def test_monte_carlo_within_bound_scheme_iii():
    config = StreamConfig(CodeParams(4, 3, 21), Scheme.III, True)
    s = monte_carlo_detection(config, 0.1, 20_000, seed=4)
    bound = p_un_scheme_III(7, 0.1)
    assert s.undetected_rate <= bound + 3 * s.standard_error(bound)
    assert s.errored == s.detected + s.undetected


def test_sweep_is_deterministic_and_chunked():
    config = StreamConfig(CodeParams(4, 3, 9), Scheme.IIB, True)
    a = monte_carlo_sweep(config, [0.05, 0.1], 2500, seed=1)
    b = monte_carlo_sweep(config, [0.05, 0.1], 2500, seed=1)
    assert a == b
    assert a[0].frames == 2500
    assert a[0].errored < a[1].errored


def test_sweep_workers_do_not_change_results():
    config = StreamConfig(CodeParams(4, 3, 9), Scheme.IIB, True)
    assert monte_carlo_sweep(config, [0.05], 4100, seed=2, workers=2) == monte_carlo_sweep(config, [0.05], 4100, seed=2)


def test_sweep_rejects_bad_input():
    with pytest.raises(ValueError):
        monte_carlo_sweep(StreamConfig(CodeParams(4, 3, 9), Scheme.I, True), [0.1], 10)
    with pytest.raises(ValueError):
        monte_carlo_sweep(StreamConfig(CodeParams(4, 3, 9), Scheme.IIB, True), [0.1], 0)


def test_bound_curve_csv():
    text = emit_bound_curves(13, 21, DEFAULT_P_GRID)
    lines = text.strip().splitlines()
    assert lines[0] == "p,bound_III,pun_III,bound_IIB"
    assert len(lines) == 1 + len(DEFAULT_P_GRID)
    values = [[float(x) for x in line.split(",")] for line in lines[1:]]
    assert all(a[0] < b[0] for a, b in zip(values, values[1:]))
    assert all(a[3] <= b[3] for a, b in zip(values, values[1:]))
    with_mc = emit_bound_curves(13, 21, [0.1], [0.01], [0.02])
    assert with_mc.splitlines()[0].endswith(",mc_III,mc_IIB")
