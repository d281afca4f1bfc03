"""One-dimensional comparison indices: Esteban-Ray and its discrete-metric form.

``esteban_ray`` evaluates the double sum

    ER = k * sum_i sum_j pi_i**(1 + alpha) * pi_j * |y_i - y_j|

literally.  At ``alpha = 0, k = 1`` this is the quantity commonly identified
with the Gini coefficient; note that it is *not* divided by twice the mean
level, so it equals the conventional Gini only when the mean level is 1/2.
No mean-normalized Gini is computed here.

``reynal_querol`` replaces ``|y_i - y_j|`` by the discrete metric (1 for
distinct groups, 0 otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParameterError, ValidationError

ALPHA_MAX = 1.6
SHARE_TOL = 1e-9


@dataclass(frozen=True)
class ERParams:
    alpha: float = 1.0
    k: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= ALPHA_MAX:
            raise ParameterError(f"alpha must lie in [0, {ALPHA_MAX}], got {self.alpha}")
        if not self.k > 0:
            raise ParameterError(f"k must be positive, got {self.k}")


# Scale chosen so that two equal groups give exactly 1.
RQ_DEFAULT = ERParams(alpha=1.0, k=4.0)
GINI_PARAMS = ERParams(alpha=0.0, k=1.0)


@dataclass(frozen=True)
class DiscreteDistribution1D:
    shares: tuple[float, ...]
    levels: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "shares", tuple(float(s) for s in self.shares))
        object.__setattr__(self, "levels", tuple(float(y) for y in self.levels))
        if len(self.shares) != len(self.levels):
            raise ValidationError(f"{len(self.shares)} shares but {len(self.levels)} levels")
        _check_shares(self.shares)


def _check_shares(shares: Sequence[float]) -> np.ndarray:
    pi = np.asarray(shares, dtype=float).reshape(-1)
    problems = []
    if pi.size == 0:
        problems.append("no groups")
    elif np.any(pi < 0):
        problems.append("negative share")
    elif abs(pi.sum() - 1.0) > SHARE_TOL:
        problems.append(f"shares sum to {pi.sum()!r}, expected 1")
    if problems:
        raise ValidationError(problems)
    return pi


def esteban_ray(dist: DiscreteDistribution1D, params: ERParams = ERParams()) -> float:
    pi = np.asarray(dist.shares)
    y = np.asarray(dist.levels)
    gaps = np.abs(y[:, None] - y[None, :])
    return float(params.k * (pi ** (1.0 + params.alpha)) @ gaps @ pi)


def gini_er(dist: DiscreteDistribution1D) -> float:
    """Esteban-Ray index at ``alpha = 0, k = 1``."""
    return esteban_ray(dist, GINI_PARAMS)


def reynal_querol(shares: Sequence[float], params: ERParams = RQ_DEFAULT) -> float:
    pi = _check_shares(shares)
    # sum_{j != i} pi_j = 1 - pi_i
    return float(params.k * np.sum(pi ** (1.0 + params.alpha) * (1.0 - pi)))
