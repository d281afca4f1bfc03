import random

import numpy as np
import pytest

from polarindex import (INDEPENDENT_LABEL, AggregationError, AttachmentConfig, Chamber, Individual,
                        Metric, ParameterError, UnknownMemberError, aggregate, attach_independents,
                        nearest_neighbors)


def chamber(*rows):
    return Chamber(2, tuple(Individual(i, p, g) for i, p, g in rows))


@pytest.fixture
def small():
    return chamber(("t", (0.5, 0.5), None),
                   ("x1", (0.4, 0.5), "X"), ("x2", (0.5, 0.4), "X"),
                   ("y1", (0.6, 0.5), "Y"), ("z1", (0.9, 0.9), "Z"))


def test_nearest_three(small):
    nn = nearest_neighbors(small, "t")
    assert [i for i, _ in nn] == ["x1", "x2", "y1"]
    assert [d for _, d in nn] == pytest.approx([0.1] * 3, abs=1e-12)


def test_radius_excludes_all(small):
    assert nearest_neighbors(small, "t", AttachmentConfig(radius=0.05)) == []


def test_tie_break_by_id():
    c = chamber(("t", (0.5, 0.5), None), ("b", (0.25, 0.5), "X"), ("a", (0.75, 0.5), "Y"))
    assert [i for i, _ in nearest_neighbors(c, "t")] == ["a", "b"]


def test_unknown_id(small):
    with pytest.raises(UnknownMemberError):
        nearest_neighbors(small, "nobody")


def test_independents_are_not_candidates():
    c = chamber(("t", (0.5, 0.5), None), ("u", (0.51, 0.5), None), ("x", (0.9, 0.9), "X"))
    assert [i for i, _ in nearest_neighbors(c, "t")] == ["x"]


def test_attach_quorum_met(small):
    out = attach_independents(small)
    assert out.member("t").affiliation == "X"
    assert [m.id for m in out] == [m.id for m in small]
    assert [m.position for m in out] == [m.position for m in small]


def test_attach_three_distinct_unions_stays():
    c = chamber(("t", (0.5, 0.5), None), ("x", (0.4, 0.5), "X"), ("y", (0.5, 0.38), "Y"),
                ("z", (0.63, 0.5), "Z"))
    assert attach_independents(c).member("t").independent


def test_attach_identity_without_independents():
    c = chamber(("a", (0.1, 0.1), "X"), ("b", (0.9, 0.9), "Y"))
    assert attach_independents(c) == c


def test_attach_ambiguous_quorum_stays():
    c = chamber(("t", (0.5, 0.5), None), ("x1", (0.4, 0.5), "X"), ("x2", (0.6, 0.5), "X"),
                ("y1", (0.5, 0.41), "Y"), ("y2", (0.5, 0.59), "Y"))
    cfg = AttachmentConfig(neighbors=4, quorum=2)
    assert attach_independents(c, cfg).member("t").independent


def test_attach_single_pass():
    # u sits next to t; once t joins X it would pull u along on a second pass
    c = chamber(("t", (0.5, 0.5), None), ("u", (0.52, 0.5), None),
                ("x1", (0.4, 0.5), "X"), ("x2", (0.45, 0.45), "X"),
                ("y1", (0.62, 0.5), "Y"), ("z1", (0.58, 0.6), "Z"))
    once = attach_independents(c)
    assert once.member("t").affiliation == "X"
    assert once.member("u").independent
    twice = attach_independents(once)
    assert twice.member("t").affiliation == "X"
    assert twice.member("u").affiliation == "X"


def test_config_validation():
    with pytest.raises(ParameterError):
        AttachmentConfig(neighbors=3, quorum=4)
    with pytest.raises(ParameterError):
        AttachmentConfig(radius=0)
    assert AttachmentConfig(metric="chebyshev").metric is Metric.CHEBYSHEV


def test_chamber_rejects_duplicates():
    with pytest.raises(ParameterError):
        chamber(("a", (0, 0), "X"), ("a", (1, 1), "Y"))


def test_aggregate_means_and_shares():
    c = chamber(("1", (0.4, 0.5), "X"), ("2", (0.5, 0.4), "X"), ("3", (0.6, 0.5), "Y"),
                ("4", (0.8, 0.7), "Y"), ("5", (0.9, 0.9), "Z"))
    s = aggregate(c)
    assert s.labels == ("X", "Y", "Z")
    assert s.weights.tolist() == [0.4, 0.4, 0.2]
    np.testing.assert_allclose(s.positions, [[0.45, 0.45], [0.7, 0.6], [0.9, 0.9]], atol=1e-12)


def test_aggregate_single_union():
    c = chamber(("1", (0.2, 0.4), "X"), ("2", (0.4, 0.8), "X"))
    s = aggregate(c)
    assert s.weights.tolist() == [1.0]
    assert s.positions[0].tolist() == pytest.approx([0.3, 0.6])


def test_aggregate_residual_cluster():
    c = chamber(*[(f"x{i}", (0.1 * i, 0.2), "X") for i in range(4)], ("i", (0.9, 0.9), None))
    with pytest.raises(AggregationError):
        aggregate(c)
    s = aggregate(c, residual_cluster=True)
    assert s.labels == ("X", INDEPENDENT_LABEL)
    assert s.weights.tolist() == [0.8, 0.2]


def test_demo_chamber_expectations(demo_chamber):
    # hand-checked 3-NN votes: i1 -> A (a1, a3, a2), i2 -> B (b2, b1, b3),
    # i3 -> none (e1, c2, f1), i4 -> C (c3, c1, b1), i5 -> B (b1, b4, c3)
    out = attach_independents(demo_chamber)
    got = {m.id: m.affiliation for m in out if m.id.startswith("i")}
    assert got == {"i1": "A", "i2": "B", "i3": None, "i4": "C", "i5": "B"}
    assert [i for i, _ in nearest_neighbors(demo_chamber, "i3")] == ["e1", "c2", "f1"]
    s = aggregate(out, residual_cluster=True)
    assert abs(s.weights.sum() - 1) <= 1e-12
    assert s.labels[-1] == INDEPENDENT_LABEL and s.weights[-1] == pytest.approx(1 / 20)


def test_aggregate_inside_hull_and_order_independent(demo_chamber):
    members = list(demo_chamber.members)
    ref = aggregate(attach_independents(demo_chamber), residual_cluster=True)
    rng = random.Random(3)
    for _ in range(5):
        rng.shuffle(members)
        shuffled = Chamber(2, tuple(members))
        s = aggregate(attach_independents(shuffled), residual_cluster=True)
        assert s.labels == ref.labels
        assert np.array_equal(s.weights, ref.weights) and np.array_equal(s.positions, ref.positions)
    for label, pos in zip(ref.labels, ref.positions):
        pts = np.array([m.position for m in attach_independents(demo_chamber)
                        if (m.affiliation or INDEPENDENT_LABEL) == label])
        assert np.all(pos >= pts.min(axis=0) - 1e-12) and np.all(pos <= pts.max(axis=0) + 1e-12)


@pytest.mark.parametrize("seed", range(30))
def test_reapplication_never_detaches(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, 40))
    labels = ["A", "B", "C", None]
    c = Chamber(2, tuple(Individual(f"m{i:02d}", tuple(rng.random(2)), labels[rng.integers(0, 4)])
                         for i in range(n)))
    once = attach_independents(c)
    twice = attach_independents(once)
    for a, b in zip(once, twice):
        if not a.independent:
            assert b.affiliation == a.affiliation
    for before, after in zip(c, once):
        if not before.independent:
            assert after.affiliation == before.affiliation
    assert sum(aggregate(once, residual_cluster=True).weights * n) == pytest.approx(n)
