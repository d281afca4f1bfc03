"""Center of mass and the multidimensional polarization index.

A society is a set of weighted groups placed in the unit cube ``[0, 1]^m``.
The polarization index of a society is the weighted mean distance of its
groups from their common center of mass, scaled by a metric-specific
normalizing coefficient:

    P  = k(metric, m) * sum_i v_i * d(p_i, c)
    P' = (2 / n) * P

with ``k = 2/sqrt(m)`` (Euclidean), ``2/m`` (Manhattan) and ``2``
(Chebyshev).  The Chebyshev coefficient is kept as published even though it
does not bound the index by 1 once ``m >= 2``; see
:data:`CHEBYSHEV_COUNTEREXAMPLE`.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BoundsError, DimensionError, ValidationError

WEIGHT_TOL = 1e-9
COORD_TOL = 1e-9


class Metric(enum.Enum):
    EUCLIDEAN = "euclidean"
    MANHATTAN = "manhattan"
    CHEBYSHEV = "chebyshev"

    @classmethod
    def parse(cls, value: "str | Metric") -> "Metric":
        if isinstance(value, Metric):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"unknown metric {value!r}; expected one of "
                             f"{', '.join(m.value for m in cls)}") from None

    def coefficient(self, dim: int) -> float:
        """Normalizing coefficient ``k`` of the P index in ``dim`` dimensions."""
        if self is Metric.EUCLIDEAN:
            return 2.0 / math.sqrt(dim)
        if self is Metric.MANHATTAN:
            return 2.0 / dim
        return 2.0

    def modified_coefficient(self, dim: int, n: int) -> float:
        """Coefficient ``k'/n`` of the modified index (``4/(n sqrt m)`` etc.)."""
        return 2.0 * self.coefficient(dim) / n

    def pairwise(self, points: np.ndarray, ref: np.ndarray) -> np.ndarray:
        """Distances from each row of ``points`` to the vector ``ref``."""
        diff = np.abs(np.asarray(points, dtype=float) - ref)
        if self is Metric.EUCLIDEAN:
            return np.sqrt(np.einsum("ij,ij->i", diff, diff))
        if self is Metric.MANHATTAN:
            return diff.sum(axis=1)
        return diff.max(axis=1)


METRICS = tuple(Metric)


@dataclass(frozen=True)
class Group:
    label: str
    weight: float
    position: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class Society:
    """Weighted groups in ``[0, 1]^dim``, stored column-wise.

    ``weights`` has shape ``(n,)`` and ``positions`` shape ``(n, dim)``.
    Construction only coerces shapes; use :func:`validate_society` to check
    the domain rules.
    """

    dim: int
    weights: np.ndarray
    positions: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        positions = np.asarray(self.positions, dtype=float)
        if positions.ndim == 1:
            positions = positions.reshape(len(weights), -1) if len(weights) else positions.reshape(0, self.dim)
        if positions.ndim != 2 or positions.shape[0] != weights.shape[0]:
            raise DimensionError(
                f"positions shape {positions.shape} does not match {weights.shape[0]} weights")
        labels = tuple(str(x) for x in self.labels) or tuple(f"g{i + 1}" for i in range(len(weights)))
        if len(labels) != len(weights):
            raise DimensionError(f"{len(labels)} labels for {len(weights)} groups")
        weights.flags.writeable = False
        positions.flags.writeable = False
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_groups(cls, groups: Iterable[Group], dim: int | None = None) -> "Society":
        groups = list(groups)
        if dim is None:
            if not groups:
                raise DimensionError("cannot infer dimension of an empty society")
            dim = len(groups[0].position)
        for g in groups:
            if len(g.position) != dim:
                raise DimensionError(
                    f"group {g.label!r} has {len(g.position)} coordinates, expected {dim}")
        return cls(dim=dim,
                   weights=[g.weight for g in groups],
                   positions=np.array([g.position for g in groups], dtype=float).reshape(len(groups), dim),
                   labels=[g.label for g in groups])

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def groups(self) -> list[Group]:
        return list(self)

    def __iter__(self) -> Iterator[Group]:
        for label, w, p in zip(self.labels, self.weights, self.positions):
            yield Group(label, float(w), tuple(float(x) for x in p))

    def __len__(self) -> int:
        return self.n

    def normalized(self) -> "Society":
        """Copy with weights divided by their sum."""
        return Society(self.dim, self.weights / self.weights.sum(), self.positions, self.labels)

    def rescaled(self) -> "Society":
        """Copy with each axis min-max normalized onto [0, 1].

        A constant axis maps to 0.
        """
        lo = self.positions.min(axis=0)
        span = self.positions.max(axis=0) - lo
        safe = np.where(span > 0, span, 1.0)
        pos = np.where(span > 0, (self.positions - lo) / safe, 0.0)
        return Society(self.dim, self.weights, pos, self.labels)


@dataclass(frozen=True)
class Violation:
    rule: str
    group: str | None
    message: str

    def __str__(self):
        where = f"group {self.group!r}: " if self.group is not None else ""
        return f"{self.rule}: {where}{self.message}"


@dataclass(frozen=True)
class PolarizationReport:
    center: tuple[float, ...]
    n: int
    dim: int
    values: dict[Metric, float]
    modified_values: dict[Metric, float]


def validate_society(society: Society, weight_tol: float = WEIGHT_TOL,
                     coord_tol: float = COORD_TOL) -> list[Violation]:
    """Return every rule the society breaks; empty when it is valid."""
    out = []
    if society.dim < 1:
        out.append(Violation("dimension", None, f"dimension must be >= 1, got {society.dim}"))
    if society.n == 0:
        out.append(Violation("empty", None, "society has no groups"))
        return out
    if society.positions.shape[1] != society.dim:
        for label in society.labels:
            out.append(Violation("dimension", label,
                                 f"{society.positions.shape[1]} coordinates, expected {society.dim}"))
    for label, w, p in zip(society.labels, society.weights, society.positions):
        if not math.isfinite(w):
            out.append(Violation("weight-finite", label, f"weight {w} is not finite"))
        elif w < 0:
            out.append(Violation("weight-negative", label, f"weight {w} < 0"))
        bad = [x for x in p if not (-coord_tol <= x <= 1 + coord_tol)]
        if bad:
            out.append(Violation("coordinate-range", label,
                                 f"coordinates {bad} outside [0, 1]"))
    total = float(society.weights.sum())
    if not abs(total - 1.0) <= weight_tol:
        out.append(Violation("weight-sum", None, f"weights sum to {total!r}, expected 1"))
    return out


def prepare(society: Society, weight_tol: float = WEIGHT_TOL, coord_tol: float = COORD_TOL) -> Society:
    """Validate and renormalize weights; raise :class:`ValidationError` on failure."""
    violations = validate_society(society, weight_tol, coord_tol)
    if violations:
        raise ValidationError(violations)
    if np.any(society.weights == 0):
        zero = [lab for lab, w in zip(society.labels, society.weights) if w == 0]
        warnings.warn(f"zero-weight groups: {', '.join(zero)}", stacklevel=3)
    total = society.weights.sum()
    return society if total == 1.0 else society.normalized()


def distance(a: Sequence[float], b: Sequence[float], metric: Metric | str = Metric.EUCLIDEAN) -> float:
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.size} vs {b.size}")
    return float(Metric.parse(metric).pairwise(a[None, :], b)[0])


def _center(society: Society) -> np.ndarray:
    return society.weights @ society.positions


def center_of_mass(society: Society, weight_tol: float = WEIGHT_TOL,
                   coord_tol: float = COORD_TOL) -> tuple[float, ...]:
    society = prepare(society, weight_tol, coord_tol)
    return tuple(float(x) for x in _center(society))


def _index(society: Society, center: np.ndarray, metric: Metric) -> float:
    spread = float(society.weights @ metric.pairwise(society.positions, center))
    return metric.coefficient(society.dim) * spread


def _check_bound(value: float, metric: Metric, strict: bool) -> None:
    if strict and value > 1.0 + COORD_TOL:
        raise BoundsError(f"P_{metric.value} = {value!r} exceeds 1")


def polarization(society: Society, metric: Metric | str = Metric.EUCLIDEAN, *,
                 strict: bool = False, weight_tol: float = WEIGHT_TOL,
                 coord_tol: float = COORD_TOL) -> float:
    """P index of ``society`` under ``metric``.

    With ``strict=True`` a value above 1 (possible only for Chebyshev in two
    or more dimensions) raises :class:`BoundsError`.
    """
    metric = Metric.parse(metric)
    society = prepare(society, weight_tol, coord_tol)
    value = _index(society, _center(society), metric)
    _check_bound(value, metric, strict)
    return value


def polarization_modified(society: Society, metric: Metric | str = Metric.EUCLIDEAN, *,
                          weight_tol: float = WEIGHT_TOL, coord_tol: float = COORD_TOL) -> float:
    """Modified index ``P' = (2/n) P``; zero for a single group."""
    if society.n == 1:
        prepare(society, weight_tol, coord_tol)
        return 0.0
    return 2.0 / society.n * polarization(society, metric, weight_tol=weight_tol, coord_tol=coord_tol)


def polarization_report(society: Society, *, strict: bool = False, weight_tol: float = WEIGHT_TOL,
                        coord_tol: float = COORD_TOL) -> PolarizationReport:
    society = prepare(society, weight_tol, coord_tol)
    center = _center(society)
    values, modified = {}, {}
    for metric in METRICS:
        value = _index(society, center, metric)
        _check_bound(value, metric, strict)
        values[metric] = value
        modified[metric] = 0.0 if society.n == 1 else 2.0 / society.n * value
    return PolarizationReport(center=tuple(float(x) for x in center), n=society.n,
                              dim=society.dim, values=values, modified_values=modified)


# Three groups in the unit square whose Chebyshev index is 1.125 > 1.
CHEBYSHEV_COUNTEREXAMPLE = Society(
    dim=2, weights=[0.5, 0.25, 0.25],
    positions=[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]], labels=["A", "B", "C"])


def diagonal_poles(dim: int) -> Society:
    """Two equal groups at opposite corners of the main diagonal."""
    return Society(dim, [0.5, 0.5], [[0.0] * dim, [1.0] * dim], ["low", "high"])
