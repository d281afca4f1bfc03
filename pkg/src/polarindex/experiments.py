"""Numerical studies of the index: uniform grids, continuum limits, extremes.

Random numbers come from numpy's PCG64 generator (``numpy.random.default_rng``)
seeded with the caller's seed, so a fixed seed reproduces the same output
within this implementation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (CHEBYSHEV_COUNTEREXAMPLE, METRICS, Metric, Society, _center, _index)
from .errors import ParameterError, SizeError

MAX_GROUPS = 10 ** 6
DEFAULT_SEED = 20160303
MC_CHUNK = 1 << 16


@dataclass(frozen=True)
class SeriesRow:
    l: int
    n: int
    p_euc: float
    p_man: float
    p_cheb: float

    def as_tuple(self):
        return (self.l, self.n, self.p_euc, self.p_man, self.p_cheb)


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float
    samples: int
    seed: int


def uniform_grid_society(m: int, l: int, max_groups: int = MAX_GROUPS) -> Society:
    """``l**m`` equal groups on the lattice ``{(i-1)/(l-1) : i = 1..l}**m``."""
    if m < 1:
        raise ParameterError(f"dimension must be >= 1, got {m}")
    if l < 2:
        raise ParameterError(f"grid resolution must be >= 2, got {l}")
    n = l ** m
    if n > max_groups:
        raise SizeError(f"{l}**{m} = {n} groups exceeds the cap of {max_groups}")
    axis = np.arange(l) / (l - 1)
    mesh = np.meshgrid(*([axis] * m), indexing="ij")
    positions = np.stack([g.reshape(-1) for g in mesh], axis=1)
    return Society(m, np.full(n, 1.0 / n), positions, [f"g{i + 1}" for i in range(n)])


def grid_row(m: int, l: int, max_groups: int = MAX_GROUPS) -> SeriesRow:
    society = uniform_grid_society(m, l, max_groups)
    center = _center(society)
    e, man, ch = (_index(society, center, metric) for metric in METRICS)
    return SeriesRow(l, society.n, e, man, ch)


def convergence_series(m: int, l_min: int, l_max: int, max_groups: int = MAX_GROUPS) -> list[SeriesRow]:
    if not 2 <= l_min <= l_max:
        raise ParameterError(f"need 2 <= l_min <= l_max, got {l_min}, {l_max}")
    if l_max ** m > max_groups:
        raise SizeError(f"{l_max}**{m} groups exceeds the cap of {max_groups}")
    return [grid_row(m, l, max_groups) for l in range(l_min, l_max + 1)]


def continuum_limit_estimate(m: int, metric: Metric | str, samples: int,
                             seed: int = DEFAULT_SEED) -> McEstimate:
    """Monte Carlo estimate of ``k * E d(X, c)`` for X uniform on the unit cube.

    This is the value grid indices approach as the resolution grows.  Samples
    are drawn sequentially in fixed-size chunks from one generator.
    """
    metric = Metric.parse(metric)
    if samples < 1:
        raise ParameterError("samples must be positive")
    rng = np.random.default_rng(seed)
    center = np.full(m, 0.5)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        size = min(MC_CHUNK, samples - done)
        d = metric.pairwise(rng.random((size, m)), center)
        total += d.sum()
        total_sq += d @ d
        done += size
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / max(samples - 1, 1)
    k = metric.coefficient(m)
    return McEstimate(k * mean, k * math.sqrt(var / samples), samples, seed)


def random_society(m: int, n: int, seed: int = DEFAULT_SEED) -> Society:
    """``n`` groups uniform in the cube with Dirichlet(1, ..., 1) weights."""
    if m < 1 or n < 1:
        raise ParameterError("m and n must be positive")
    rng = np.random.default_rng(seed)
    positions = rng.random((n, m))
    weights = rng.dirichlet(np.ones(n)) if n > 1 else np.ones(1)
    return Society(m, weights, positions)


def _chebyshev(weights, positions) -> float:
    center = weights @ positions
    return 2.0 * float(weights @ np.abs(positions - center).max(axis=1))


def _softmax(z):
    e = np.exp(z - z.max())
    return e / e.sum()


def _climb(positions, logits, weights, iterations, rng, step):
    best = _chebyshev(weights, positions)
    for it in range(iterations):
        scale = step * (1.0 - it / iterations) + 1e-3
        cand_pos = np.clip(positions + rng.normal(0.0, scale, positions.shape), 0.0, 1.0)
        cand_logits = logits + rng.normal(0.0, scale, logits.shape)
        cand_w = _softmax(cand_logits)
        value = _chebyshev(cand_w, cand_pos)
        if value >= best:
            positions, logits, weights, best = cand_pos, cand_logits, cand_w, value
    return positions, weights, best


def extremal_search_chebyshev(m: int, iterations: int = 2000, seed: int = DEFAULT_SEED, *,
                              restarts: int = 8, groups: int | None = None,
                              step: float = 0.25) -> tuple[Society, float]:
    """Hill climbing with random restarts maximizing the Chebyshev index.

    The first restart (for ``m >= 2``) starts from the three-group
    configuration scoring 1.125, so the result never falls below it.  Other
    restarts start from random societies of ``groups`` groups (default
    ``m + 2``).  No global optimality is claimed.
    """
    if m < 1 or iterations < 1 or restarts < 1:
        raise ParameterError("m, iterations and restarts must be positive")
    rng = np.random.default_rng(seed)
    n_groups = groups or m + 2
    best_pos, best_w, best_val = None, None, -math.inf
    for r in range(restarts):
        if r == 0 and m >= 2:
            start = np.zeros((3, m))
            start[:, :2] = CHEBYSHEV_COUNTEREXAMPLE.positions
            weights = CHEBYSHEV_COUNTEREXAMPLE.weights.copy()
            logits = np.log(weights)
        else:
            start = rng.random((n_groups, m))
            logits = rng.normal(0.0, 1.0, n_groups)
            weights = _softmax(logits)
        pos, w, val = _climb(start, logits, weights, iterations, rng, step)
        if val > best_val:
            best_pos, best_w, best_val = pos, w, val
    society = Society(m, best_w, best_pos)
    return society, best_val
