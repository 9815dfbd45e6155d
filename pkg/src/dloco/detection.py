"""Symmetric substitution channel, Monte-Carlo detection runs and analytic bounds.

The channel keeps each DNA symbol with probability ``1 - p`` and otherwise
replaces it by one of the three other symbols uniformly.  A check-sum over
``n`` symbols misses ``r`` substitutions exactly when their mod-4 offsets sum
to zero, which happens for ``C(r) = (3**r - 3 * (-1)**(r - 1)) / 4`` of the
``3**r`` offset patterns.
"""

from __future__ import annotations

import math
import random
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .bridging import Scheme
from .codec import DNA, parse_word
from .stream import StreamConfig, decode_frame, encode_frames, frame_layout

DEFAULT_P_GRID = tuple(float(p) for p in np.geomspace(1e-3, 0.2, 24))
BOUND_CASES = ((13, 21), (21, 33))


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"substitution probability must lie in [0, 1], got {p}")


def _substitute(symbols: np.ndarray, p: float, rng: np.random.Generator) -> np.ndarray:
    hit = rng.random(symbols.shape[0]) < p
    offset = rng.integers(1, 4, size=symbols.shape[0])
    return (symbols + offset * hit) % 4


def substitute_channel(dna: str | Sequence[int], p: float, seed: int | None = 0):
    """Pass DNA through the ``(1-p, p/3, p/3, p/3)`` substitution channel.

    Strings come back as strings, symbol sequences as tuples.
    """
    _check_p(p)
    as_text = isinstance(dna, str)
    symbols = np.asarray(parse_word(dna) if as_text else tuple(dna), dtype=np.int64)
    out = _substitute(symbols, p, np.random.default_rng(seed))
    if as_text:
        return "".join(DNA[s] for s in out)
    return tuple(int(s) for s in out)


def undetected_pattern_count(r: int) -> int:
    """Nonzero mod-4 offset patterns on ``r`` fixed symbols that sum to 0 mod 4."""
    if r < 2:
        raise ValueError("defined for r >= 2")
    return (3**r - 3 * (-1) ** (r - 1)) // 4


def bound_I(n: int, p: float) -> float:
    """One third of the probability of two or more substitutions among ``n`` symbols."""
    _check_p(p)
    if n < 2:
        raise ValueError("a check-sum span covers at least 2 symbols")
    return (1.0 - (1 - p) ** n - n * p * (1 - p) ** (n - 1)) / 3.0


def bound_II(n: int, p: float, terms: int | None = None) -> float:
    """Miss probability of a mod-4 check-sum over ``n`` symbols.

    Sums ``r = 2 .. min(terms, n)``; ``terms=None`` keeps every term.
    """
    _check_p(p)
    if n < 2:
        raise ValueError("a check-sum span covers at least 2 symbols")
    top = n if terms is None else min(terms, n)
    if top < 2:
        raise ValueError("need at least the r = 2 term")
    total = 0.0
    for r in range(2, top + 1):
        miss = (1.0 - (-1.0 / 3.0) ** (r - 1)) / 4.0
        total += miss * math.comb(n, r) * p**r * (1 - p) ** (n - r)
    return total


def p_un_scheme_III(m_prime: int, p: float) -> float:
    """Frame-level no-detection probability for three check-summed thirds."""
    if m_prime < 1:
        raise ValueError("m' must be >= 1")
    p1 = bound_II(m_prime + 1, p)
    q = (1 - p) ** (m_prime + 1)
    return 3 * p1 * q * q + 3 * p1**2 * q + p1**3


def p_un_scheme_IIB(m: int, p: float) -> float:
    """Bound for Scheme II-B: one check-sum over the codeword, ``L4`` and ``L3``."""
    return bound_II(m + 2, p)


def analytic_bound(config: StreamConfig, p: float) -> float:
    if config.scheme is Scheme.III:
        return p_un_scheme_III(config.params.m // 3, p)
    if config.scheme is Scheme.IIB:
        return p_un_scheme_IIB(config.params.m, p)
    raise ValueError(f"no analytic bound for scheme {config.scheme.label}")


@dataclass
class MonteCarloStats:
    frames: int = 0
    errored: int = 0
    detected: int = 0
    undetected: int = 0
    # clean frames flagged because a neighbouring codeword was hit
    false_alarms: int = 0
    # same counts restricted to the symbols the analytic bound covers
    errored_core: int = 0
    undetected_core: int = 0

    def merge(self, other: MonteCarloStats) -> MonteCarloStats:
        return MonteCarloStats(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    @property
    def undetected_rate(self) -> float:
        """Errored-and-unflagged frames per frame sent."""
        return self.undetected / self.frames if self.frames else 0.0

    @property
    def undetected_given_errored(self) -> float:
        return self.undetected / self.errored if self.errored else 0.0

    @property
    def undetected_core_rate(self) -> float:
        return self.undetected_core / self.frames if self.frames else 0.0

    def standard_error(self, rate: float | None = None) -> float:
        r = self.undetected_rate if rate is None else rate
        return math.sqrt(r * (1 - r) / self.frames) if self.frames else 0.0

    def half_width(self, z: float = 3.0) -> float:
        return z * self.standard_error()

    def summary(self) -> str:
        return (
            f"frames={self.frames} errored={self.errored} detected={self.detected} "
            f"undetected={self.undetected} false_alarms={self.false_alarms} "
            f"undetected_rate={self.undetected_rate:.6g} +/- {self.half_width():.3g} (3 sigma) "
            f"undetected_given_errored={self.undetected_given_errored:.6g} "
            f"undetected_core_rate={self.undetected_core_rate:.6g}"
        )


def _core_mask(config: StreamConfig) -> np.ndarray:
    layout = frame_layout(config)
    m = layout.codeword_symbols
    mask = np.zeros(layout.frame_symbols, dtype=bool)
    mask[:m] = True
    if config.scheme is Scheme.III:
        mask[m + 1:m + 4] = True  # the three check-sums
    elif config.scheme is Scheme.IIB:
        mask[m:m + 2] = True  # L4 and L3
    else:
        mask[m:] = True
    return mask


CHUNK_FRAMES = 2000
STREAM_FRAMES = 50


def _run_chunk(args) -> list[MonteCarloStats]:
    config, p_values, n_frames, seed, chunk = args
    layout = frame_layout(config)
    ss = np.random.SeedSequence(seed, spawn_key=(chunk,))
    msg_rng = random.Random(int(ss.generate_state(2, np.uint64)[0]))
    chan_rng = np.random.default_rng(ss)
    core = _core_mask(config)
    fs = layout.frame_symbols
    cw_bits, br_bits = layout.codeword_bits, layout.bridge_bits

    streams = []
    left = n_frames
    while left > 0:
        k = min(STREAM_FRAMES, left)
        frames = [
            (msg_rng.getrandbits(cw_bits), tuple(msg_rng.getrandbits(1) for _ in range(br_bits)))
            for _ in range(k)
        ]
        streams.append((k, np.asarray(encode_frames(frames, config), dtype=np.int64)))
        left -= k

    results = []
    for p in p_values:
        stats = MonteCarloStats()
        for k, sent in streams:
            received = _substitute(sent, p, chan_rng)
            diff = (received != sent).reshape(k, fs)
            hit = diff.any(axis=1)
            hit_core = (diff & core).any(axis=1)
            # a frame's last bridge symbol is checked against the next codeword's first symbol
            touched = hit.copy()
            touched[:-1] |= diff[1:, 0]
            rx = None
            for j in np.flatnonzero(touched):
                if rx is None:
                    rx = received.tolist()
                _, _, report = decode_frame(config, rx, int(j) * fs, int(j), True)
                if hit[j]:
                    if report.flagged:
                        stats.detected += 1
                    else:
                        stats.undetected += 1
                        stats.undetected_core += int(hit_core[j])
                elif report.flagged:
                    stats.false_alarms += 1
            stats.frames += k
            stats.errored += int(hit.sum())
            stats.errored_core += int(hit_core.sum())
        results.append(stats)
    return results


def monte_carlo_sweep(
    config: StreamConfig,
    p_values: Iterable[float],
    trials: int,
    seed: int = 0,
    workers: int = 1,
) -> list[MonteCarloStats]:
    """Run ``trials`` random frames through the channel at each ``p``.

    The same encoded frames are reused across ``p`` values.  Work is split into
    fixed chunks seeded from ``(seed, chunk index)``, so results do not depend
    on ``workers``.
    """
    config = StreamConfig(config.params, config.scheme, config.balancing)
    if config.scheme is Scheme.I:
        raise ValueError("scheme I has no detection capability")
    if trials < 1:
        raise ValueError("need at least one trial")
    p_values = [float(p) for p in p_values]
    for p in p_values:
        _check_p(p)
    jobs = []
    for chunk, start in enumerate(range(0, trials, CHUNK_FRAMES)):
        jobs.append((config, p_values, min(CHUNK_FRAMES, trials - start), seed, chunk))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(job) for job in jobs]
    totals = [MonteCarloStats() for _ in p_values]
    for part in parts:
        totals = [a.merge(b) for a, b in zip(totals, part)]
    return totals


def monte_carlo_detection(
    config: StreamConfig, p: float, trials: int, seed: int = 0, workers: int = 1
) -> MonteCarloStats:
    return monte_carlo_sweep(config, [p], trials, seed, workers)[0]


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def emit_bound_curves(
    m_prime: int,
    m: int,
    p_grid: Iterable[float] = DEFAULT_P_GRID,
    mc_III: Sequence[float] | None = None,
    mc_IIB: Sequence[float] | None = None,
) -> str:
    """CSV of the no-detection bounds for Scheme III (``m'``) against Scheme II-B (``m``)."""
    p_grid = list(p_grid)
    for p in p_grid:
        if not 0.0 < p <= 1.0:
            raise ValueError("p grid must lie in (0, 1]")
    with_mc = mc_III is not None and mc_IIB is not None
    header = "p,bound_III,pun_III,bound_IIB" + (",mc_III,mc_IIB" if with_mc else "")
    rows = [header]
    for j, p in enumerate(p_grid):
        cells = [p, bound_II(m_prime + 1, p), p_un_scheme_III(m_prime, p), p_un_scheme_IIB(m, p)]
        if with_mc:
            cells += [mc_III[j], mc_IIB[j]]
        rows.append(",".join(_fmt(c) for c in cells))
    return "\n".join(rows) + "\n"
