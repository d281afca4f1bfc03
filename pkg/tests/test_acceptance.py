"""Exit criteria, one test per criterion; a PASS/FAIL summary is printed at the end of the run."""

import itertools
import subprocess
import sys
import time

import numpy as np
import pytest

import oracles
from suites import random_suite
from polarindex import (CHEBYSHEV_COUNTEREXAMPLE, METRICS, DiscreteDistribution1D, ERParams, Metric,
                        Society, aggregate, attach_independents, continuum_limit_estimate,
                        convergence_series, diagonal_poles, esteban_ray, extremal_search_chebyshev,
                        polarization, polarization_modified, polarization_report, reynal_querol,
                        uniform_grid_society)
from polarindex.dataio import demo_path, load_demo_chamber, load_reference_table, write_report

E, M, C = Metric.EUCLIDEAN, Metric.MANHATTAN, Metric.CHEBYSHEV


@pytest.fixture(scope="module")
def suite():
    return list(random_suite(10_000))


def test_01_maximum_attainment():
    t0 = time.perf_counter()
    for m in (1, 2, 3, 5):
        for metric in METRICS:
            assert abs(polarization(diagonal_poles(m), metric) - 1) <= 1e-12
    anti = Society(2, [0.5, 0.5], [[0, 1], [1, 0]])
    for metric in METRICS:
        assert abs(polarization(anti, metric) - 1) <= 1e-12
    assert time.perf_counter() - t0 < 1.0


def test_02_minimum():
    single = Society(3, [1.0], [[0.3, 0.6, 0.1]])
    colocated = Society(2, [0.2, 0.3, 0.5], [[0.4, 0.7]] * 3)
    for s in (single, colocated):
        for metric in METRICS:
            assert abs(polarization(s, metric)) <= 1e-12


def test_03_metric_ordering(suite):
    t0 = time.perf_counter()
    for s in suite:
        r = polarization_report(s)
        assert r.values[C] >= r.values[E] - 1e-12
        assert r.values[E] >= r.values[M] - 1e-12
        assert r.modified_values[C] >= r.modified_values[E] - 1e-12
        assert r.modified_values[E] >= r.modified_values[M] - 1e-12
    assert len(suite) >= 10_000
    assert time.perf_counter() - t0 < 10.0


def test_04_bounds_and_counterexample(suite):
    for s in suite:
        r = polarization_report(s)
        assert -1e-12 <= r.values[E] <= 1 + 1e-12
        assert -1e-12 <= r.values[M] <= 1 + 1e-12
    assert abs(polarization(CHEBYSHEV_COUNTEREXAMPLE, C) - 1.125) <= 1e-12
    assert oracles.index([0.5, 0.25, 0.25], [[0, 0], [1, 0], [1, 1]], "chebyshev") == 1.125
    _, v2 = extremal_search_chebyshev(2)
    _, v1 = extremal_search_chebyshev(1)
    assert v2 >= 1.125
    assert v1 <= 1 + 1e-9


def _non_increasing(rows):
    return all(b.p_euc <= a.p_euc + 1e-12 and b.p_man <= a.p_man + 1e-12 and b.p_cheb <= a.p_cheb + 1e-12
               for a, b in zip(rows, rows[1:]))


def test_05_grid_study():
    t0 = time.perf_counter()
    for m, l_max in ((2, 30), (3, 10)):
        rows = convergence_series(m, 2, l_max)
        assert [r.l for r in rows] == list(range(2, l_max + 1))
        assert (rows[0].p_euc, rows[0].p_man, rows[0].p_cheb) == (1.0, 1.0, 1.0)
        assert _non_increasing(rows)
    assert time.perf_counter() - t0 < 30.0


def test_06_continuum_limits():
    row2 = convergence_series(2, 101, 101)[0]
    assert abs(row2.p_man - oracles.MANHATTAN_LIMIT) <= 0.005
    assert abs(row2.p_cheb - oracles.CHEBYSHEV_LIMIT_2D) <= 0.01
    mc = continuum_limit_estimate(2, E, 10 ** 6)
    assert abs(row2.p_euc - mc.value) <= 0.01
    assert abs(mc.value - oracles.EUCLIDEAN_LIMIT_2D) <= 5 * mc.std_error
    row3 = convergence_series(3, 101, 101, max_groups=101 ** 3)[0]
    assert abs(row3.p_man - oracles.MANHATTAN_LIMIT) <= 0.01


def test_07_one_dimensional_asymptote():
    assert abs(polarization(uniform_grid_society(1, 201)) - 0.5) <= 0.01


def test_08_modified_identity(suite):
    for s in suite:
        for metric in METRICS:
            assert abs(polarization_modified(s, metric) - 2 / s.n * polarization(s, metric)) <= 1e-12
    assert polarization_modified(Society(2, [1.0], [[0.1, 0.2]])) == 0.0
    for metric in METRICS:
        assert abs(polarization_modified(diagonal_poles(2), metric) - 1) <= 1e-12


def _share_grid(n, units=20):
    for combo in itertools.product(range(units + 1), repeat=n - 1):
        if sum(combo) <= units:
            yield [c / units for c in combo] + [(units - sum(combo)) / units]


def test_09_comparative():
    params = ERParams(alpha=1.0, k=1.0)
    checked = 0
    for n in range(1, 6):
        shares = list(_share_grid(n))
        levels = list(itertools.product((0.0, 0.5, 1.0), repeat=n))
        expected = oracles.esteban_ray_table(shares, levels, 1.0, 1.0)
        for a, pi in enumerate(shares):
            for b, y in enumerate(levels):
                got = esteban_ray(DiscreteDistribution1D(pi, y), params)
                assert abs(got - expected[a, b]) <= 1e-12
                checked += 1
    assert checked == sum(len(list(_share_grid(n))) * 3 ** n for n in range(1, 6))
    assert oracles.esteban_ray_table([[0.3, 0.7]], [[0.0, 1.0]], 1.0, 1.0)[0, 0] == pytest.approx(
        oracles.esteban_ray([0.3, 0.7], [0.0, 1.0], 1.0, 1.0), abs=1e-15)
    assert abs(reynal_querol((0.5, 0.5), ERParams(1.0, 4.0)) - 1.0) <= 1e-12


def test_10_table1_fixture():
    rows = load_reference_table()
    assert len(rows) == 10
    assert rows[0].year == 1994 and rows[0].center == (0.6746, 0.5523)
    assert (rows[0].p_euc, rows[0].p_man, rows[0].p_cheb) == (0.3479, 0.3136, 0.4487)
    assert rows[-1].year == 2003 and rows[-1].center == (0.4530, 0.5169)
    assert (rows[-1].p_euc, rows[-1].p_man, rows[-1].p_cheb) == (0.4796, 0.3797, 0.6654)
    for r in rows:
        assert r.p_cheb > r.p_euc > r.p_man
        assert all(0 <= c <= 1 for c in r.center)


def _cli(args, stdin=None):
    proc = subprocess.run([sys.executable, "-m", "polarindex", *args], input=stdin,
                          capture_output=True, text=True, check=False)
    return proc.returncode, proc.stdout, proc.stderr


def test_11_pipeline():
    chamber = load_demo_chamber()
    attached = attach_independents(chamber)
    expected = {"i1": "A", "i2": "B", "i3": None, "i4": "C", "i5": "B"}
    assert {m.id: m.affiliation for m in attached if m.independent or m.id.startswith("i")} == expected
    for before, after in zip(chamber, attached):
        if not before.independent:
            assert after.affiliation == before.affiliation
    society = aggregate(attached, residual_cluster=True)
    assert abs(society.weights.sum() - 1) <= 1e-12
    library = write_report(polarization_report(society), modified=True)

    code, chamber_out, err = _cli(["attach", "--input", demo_path("chamber_demo.csv")])
    assert code == 0 and err == ""
    code, society_out, err = _cli(["aggregate", "--residual-cluster"], stdin=chamber_out)
    assert code == 0 and err == ""
    code, report_out, err = _cli(["compute", "--modified"], stdin=society_out)
    assert code == 0 and err == ""
    assert report_out == library


def test_12_split_and_symmetries():
    rng = np.random.default_rng(12)
    for s in random_suite(1000, seed=99):
        base = polarization_report(s)
        i = int(rng.integers(s.n))
        w = np.append(s.weights, s.weights[i] / 2)
        w[i] /= 2
        perm_g = rng.permutation(s.n)
        perm_a = rng.permutation(s.dim)
        variants = [Society(s.dim, w, np.vstack([s.positions, s.positions[i]])),
                    Society(s.dim, s.weights[perm_g], s.positions[perm_g]),
                    Society(s.dim, s.weights, s.positions[:, perm_a]),
                    Society(s.dim, s.weights, 1.0 - s.positions)]
        for v in variants:
            r = polarization_report(v)
            for metric in METRICS:
                assert abs(r.values[metric] - base.values[metric]) <= 1e-12
        split_center = polarization_report(variants[0]).center
        assert np.allclose(split_center, base.center, atol=1e-12, rtol=0)
