"""From individual members of a chamber to a weighted society.

Independent members can be attached to an existing union by a
nearest-neighbour vote: look at the ``neighbors`` closest affiliated members
(optionally only those within ``radius``) and join the union that holds at
least ``quorum`` of them.  Decisions are made in a single pass against the
original affiliations, so independents never vote for each other and a
freshly attached member does not influence other decisions.

Interpretations (the source rule leaves these open): radius unbounded by
default, Euclidean distance, ties at equal distance broken by member id, and
an independent stays independent if more than one union reaches the quorum.
Re-applying :func:`attach_independents` to its own output never detaches
anyone but may attach further members.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .core import Metric, Society
from .errors import AggregationError, DimensionError, ParameterError, UnknownMemberError

INDEPENDENT_LABEL = "Independent"


@dataclass(frozen=True)
class Individual:
    id: str
    position: tuple[float, ...]
    affiliation: str | None = None  # None marks an independent member

    @property
    def independent(self) -> bool:
        return self.affiliation is None


@dataclass(frozen=True)
class Chamber:
    dim: int
    members: tuple[Individual, ...]

    def __post_init__(self):
        members = tuple(Individual(str(m.id), tuple(float(x) for x in m.position), m.affiliation)
                        for m in self.members)
        if not members:
            raise ParameterError("chamber has no members")
        seen = set()
        for m in members:
            if m.id in seen:
                raise ParameterError(f"duplicate member id {m.id!r}")
            seen.add(m.id)
            if len(m.position) != self.dim:
                raise DimensionError(f"member {m.id!r} has {len(m.position)} coordinates, expected {self.dim}")
        object.__setattr__(self, "members", members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def member(self, member_id: str) -> Individual:
        for m in self.members:
            if m.id == member_id:
                return m
        raise UnknownMemberError(member_id)

    @property
    def independents(self) -> list[Individual]:
        return [m for m in self.members if m.independent]


@dataclass(frozen=True)
class AttachmentConfig:
    neighbors: int = 3
    quorum: int = 2
    radius: float = math.inf
    metric: Metric = Metric.EUCLIDEAN

    def __post_init__(self):
        object.__setattr__(self, "metric", Metric.parse(self.metric))
        if self.neighbors < 1:
            raise ParameterError("neighbors must be positive")
        if not 1 <= self.quorum <= self.neighbors:
            raise ParameterError(f"quorum must lie in [1, neighbors], got {self.quorum}")
        if not self.radius > 0:
            raise ParameterError("radius must be positive")


def _affiliated_pool(chamber: Chamber):
    pool = [m for m in chamber.members if not m.independent]
    coords = np.array([m.position for m in pool], dtype=float).reshape(len(pool), chamber.dim)
    return pool, coords


def _neighbors(pool, coords, target: Individual, config: AttachmentConfig):
    if not pool:
        return []
    dists = config.metric.pairwise(coords, np.asarray(target.position))
    found = [(m.id, float(d), m.affiliation) for m, d in zip(pool, dists)
             if m.id != target.id and d <= config.radius]
    found.sort(key=lambda t: (t[1], t[0]))
    return found[:config.neighbors]


def nearest_neighbors(chamber: Chamber, target_id: str,
                      config: AttachmentConfig = AttachmentConfig()) -> list[tuple[str, float]]:
    """Closest affiliated members to ``target_id``, sorted by (distance, id)."""
    target = chamber.member(target_id)
    pool, coords = _affiliated_pool(chamber)
    return [(i, d) for i, d, _ in _neighbors(pool, coords, target, config)]


def _vote(neighbors, quorum: int) -> str | None:
    counts = Counter(aff for _, _, aff in neighbors)
    winners = [aff for aff, c in counts.items() if c >= quorum]
    return winners[0] if len(winners) == 1 else None


def attach_independents(chamber: Chamber, config: AttachmentConfig = AttachmentConfig()) -> Chamber:
    pool, coords = _affiliated_pool(chamber)
    members = []
    for m in chamber.members:
        if m.independent:
            union = _vote(_neighbors(pool, coords, m, config), config.quorum)
            if union is not None:
                m = replace(m, affiliation=union)
        members.append(m)
    return Chamber(chamber.dim, tuple(members))


def aggregate(chamber: Chamber, residual_cluster: bool = False) -> Society:
    """Collapse members into one group per union (sorted by label).

    A group sits at the mean of its members and weighs its seat share.  With
    ``residual_cluster`` the remaining independents become one extra group
    labelled ``Independent``; otherwise their presence is an error.
    """
    by_union: dict[str, list[Sequence[float]]] = {}
    independents = []
    for m in sorted(chamber.members, key=lambda m: m.id):
        if m.independent:
            independents.append(m.position)
        else:
            by_union.setdefault(m.affiliation, []).append(m.position)
    if independents and not residual_cluster:
        raise AggregationError(f"{len(independents)} independent members remain; "
                               "attach them or enable the residual cluster")
    labels = sorted(by_union)
    blocks = [by_union[lab] for lab in labels]
    if independents:
        if INDEPENDENT_LABEL in by_union:
            raise AggregationError(f"a union is already labelled {INDEPENDENT_LABEL!r}")
        labels.append(INDEPENDENT_LABEL)
        blocks.append(independents)
    total = len(chamber.members)
    weights = [len(b) / total for b in blocks]
    positions = [np.mean(np.asarray(b, dtype=float), axis=0) for b in blocks]
    return Society(chamber.dim, weights, np.array(positions).reshape(len(blocks), chamber.dim), labels)
