"""Independent checks for the closed-form evaluators.

``mc_estimate`` / ``mc_curve`` simulate component lifetimes directly,
including spare activation.  ``enumerate_exact`` sums the probability of
every joint leaf state for which the structure function fails (or works).
Neither path uses the product formulas in :mod:`senrel.evaluate`.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from senrel.dist import _check_time, make_rng
from senrel.evaluate import WspParams, check_grid, wsp_fail_prob
from senrel.model import (
    GATES,
    NAnd,
    NOr,
    Node,
    Parallel,
    RWsp,
    Series,
    Wsp,
    is_dft,
    leaves,
    require_valid,
)

CHUNK_SIZE = 1 << 15
MAX_ENUM_LEAVES = 20


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo estimate of the model's own quantity: failure
    probability for a DFT, reliability for a DRBD."""

    p_hat: float
    stderr: float
    trials: int
    seed: int
    count: int

    @classmethod
    def from_count(cls, count: int, trials: int, seed: int) -> McEstimate:
        p = count / trials
        return cls(p, math.sqrt(p * (1.0 - p) / trials), trials, seed, count)


def _failure_times(node: Node, rng: np.random.Generator, size: int) -> np.ndarray:
    """System failure time for ``size`` independent histories.

    OR/series fail at the earliest child failure, AND/parallel at the
    latest.  Leaves draw in depth-first order so a DFT and its DRBD twin
    consume the stream identically.
    """
    if isinstance(node, GATES):
        combine = np.minimum if isinstance(node, (NOr, Series)) else np.maximum
        out = _failure_times(node.children[0], rng, size)
        for child in node.children[1:]:
            combine(out, _failure_times(child, rng, size), out=out)
        return out
    if isinstance(node, (Wsp, RWsp)):
        main = node.main.sample(rng, size)
        dormant = node.spare_dormant.sample(rng, size)
        active = node.spare_active.sample(rng, size)
        # a spare that died dormant cannot take over
        return np.where(dormant <= main, main, main + active)
    return node.dist.sample(rng, size)


def _chunks(trials: int) -> list[tuple[int, int]]:
    return [(i, min(CHUNK_SIZE, trials - start)) for i, start in enumerate(range(0, trials, CHUNK_SIZE))]


def _default_workers(workers):
    if workers is None:
        return min(8, os.cpu_count() or 1)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    return workers


def _event_counts(node: Node, grid: list[float], trials: int, seed: int, workers) -> list[int]:
    """Number of histories in which the model's event holds at each grid time."""
    require_valid(node)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    dft = is_dft(node)
    probe = np.asarray(grid)

    def run(chunk):
        index, size = chunk
        times = np.sort(_failure_times(node, make_rng(seed, index), size))
        # failed at t means failure time strictly before t
        failed = np.searchsorted(times, probe, side="left")
        return failed if dft else size - failed

    with ThreadPoolExecutor(max_workers=_default_workers(workers)) as pool:
        per_chunk = list(pool.map(run, _chunks(trials)))
    return [int(c) for c in np.sum(per_chunk, axis=0, dtype=np.int64)]


def mc_estimate(node: Node, t: float, trials: int, seed: int, workers: int | None = None) -> McEstimate:
    _check_time(t)
    (count,) = _event_counts(node, [float(t)], trials, seed, workers)
    return McEstimate.from_count(count, trials, seed)


def mc_curve(node: Node, grid, trials: int, seed: int, workers: int | None = None) -> list[McEstimate]:
    """Estimates along ``grid`` from one shared set of sampled histories."""
    grid = check_grid(grid)
    counts = _event_counts(node, grid, trials, seed, workers)
    return [McEstimate.from_count(c, trials, seed) for c in counts]


def _structure(node: Node, states: np.ndarray, position: list) -> np.ndarray:
    """Boolean 'failed' indicator of ``node`` for each row of ``states``."""
    if isinstance(node, GATES):
        parts = [_structure(child, states, position) for child in node.children]
        if isinstance(node, (NOr, Series)):
            return np.logical_or.reduce(parts)
        return np.logical_and.reduce(parts)
    column = states[:, position[0]]
    position[0] += 1
    return column


def _leaf_fail_probability(leaf, t: float) -> float:
    if isinstance(leaf, (Wsp, RWsp)):
        return wsp_fail_prob(WspParams.of(leaf), t)
    return leaf.dist.cdf(t)


def enumerate_exact(node: Node, t: float) -> float:
    """Failure probability (DFT) or reliability (DRBD) by summing over all
    2^m joint states of the m independent leaves."""
    require_valid(node)
    _check_time(t)
    probs = [_leaf_fail_probability(leaf, t) for leaf in leaves(node)]
    m = len(probs)
    if m > MAX_ENUM_LEAVES:
        raise OverflowError(f"{m} leaves exceed the enumeration limit of {MAX_ENUM_LEAVES}; use Monte Carlo")
    codes = np.arange(1 << m, dtype=np.int64)
    states = np.empty((1 << m, m), dtype=bool)
    weight = np.ones(1 << m)
    for i, p in enumerate(probs):
        states[:, i] = (codes >> i) & 1
        weight *= np.where(states[:, i], p, 1.0 - p)
    failed = _structure(node, states, [0])
    event = failed if is_dft(node) else ~failed
    return math.fsum(weight[event].tolist())
