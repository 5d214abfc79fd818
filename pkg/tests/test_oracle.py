"""The brute-force reference implementations get their own sanity tests, so
that suite agreements are evidence about the engine rather than about two
copies of the same bug."""

from fractions import Fraction

import pytest

from weakfront.cones import Cone
from weakfront.oracle import (
    brute_beta,
    brute_region,
    brute_region_bulk,
    brute_wsum,
    region_of_point,
    scalar_fenchel_lagrange_dual2,
    scalar_fenchel_lagrange_dual3,
    scalar_lagrange_dual,
    scalar_primal_value,
)
from weakfront.order_sets import FiniteVecSet, RegionLabel

O2 = Cone.orthant(2)
POINTS = [(0, 0), (2, 1), (1, 2)]


def test_region_of_point_from_first_principles():
    assert region_of_point(POINTS, O2.normals, (0, 0)) is RegionLabel.LOWER
    assert region_of_point(POINTS, O2.normals, (2, 1)) is RegionLabel.FRONTIER
    assert region_of_point(POINTS, O2.normals, (2, 2)) is RegionLabel.UPPER
    assert region_of_point(POINTS, O2.normals, (-5, 9)) is RegionLabel.UPPER


def test_brute_region_bulk_matches_naive_loop():
    grid = [
        (Fraction(a, 2), Fraction(b, 2))
        for a in range(-8, 9)
        for b in range(-8, 9)
    ]
    bulk = brute_region_bulk(POINTS, O2.normals, grid)
    for y, lab in zip(grid, bulk):
        assert region_of_point(POINTS, O2.normals, y) is lab


def test_brute_region_bulk_overflow_falls_back():
    # coordinates around 2^40 push the cleared integers past int64
    big = 2**40
    pts = [(big, 0), (0, big)]
    grid = [(big, big), (0, 0), (-big, big)]
    normals = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    out = brute_region_bulk(pts, normals, grid)
    # (0,0) touches each cloud point's lower boundary, so FRONTIER not LOWER
    assert out == [
        RegionLabel.UPPER,
        RegionLabel.FRONTIER,
        RegionLabel.FRONTIER,
    ]


def test_brute_region_table():
    table = brute_region(
        FiniteVecSet(POINTS), O2, FiniteVecSet([(0, 0), (3, 3)])
    )
    assert table[(0, 0)] is RegionLabel.LOWER
    assert table[(3, 3)] is RegionLabel.UPPER


def test_brute_wsum_uses_the_raw_minkowski_cloud():
    U = [(0, 1)]
    V = [(1, 0), (0, 2)]
    # cloud {(1,1), (0,3)}
    labels = brute_wsum(U, V, O2, [(1, 1), (0, 3), (2, 2), (0, 0)])
    assert labels == [
        RegionLabel.FRONTIER,
        RegionLabel.FRONTIER,
        RegionLabel.UPPER,
        RegionLabel.LOWER,
    ]


def test_brute_beta_strict_domination_only():
    o1 = Cone.orthant(1)
    # single cloud {1}: y qualifies iff 1 - y is not strictly positive
    assert brute_beta([[(Fraction(1),)]], o1, (Fraction(1),)) is True
    assert brute_beta([[(Fraction(1),)]], o1, (Fraction(0),)) is False
    # two clouds sum to {3}
    clouds = [[(Fraction(1),)], [(Fraction(2),)]]
    assert brute_beta(clouds, o1, (Fraction(3),)) is True
    assert brute_beta(clouds, o1, (Fraction(5, 2),)) is False


def _scalar_instance():
    # minimize x subject to 1 - x <= 0 over samples {0, 1/2, ..., 2}
    xs = [Fraction(k, 2) for k in range(5)]
    samples = [((x,), x) for x in xs]
    gvals = [(1 - x,) for x in xs]
    return xs, samples, gvals


def test_scalar_lagrange_dual_reaches_the_primal_value():
    xs, samples, gvals = _scalar_instance()
    lams = [(Fraction(k, 2),) for k in range(5)]
    assert scalar_primal_value(samples, gvals) == 1
    assert scalar_lagrange_dual(samples, gvals, lams) == 1
    # starving the multiplier budget weakens the bound
    assert scalar_lagrange_dual(samples, gvals, [(Fraction(0),)]) == 0


def test_scalar_duals_raise_on_empty_budgets():
    xs, samples, gvals = _scalar_instance()
    with pytest.raises(ValueError):
        scalar_lagrange_dual(samples, gvals, [])
    with pytest.raises(ValueError):
        scalar_fenchel_lagrange_dual2(samples, [(x,) for x in xs], gvals, (0,), [], [])


def test_scalar_fenchel_chain_matches_lagrange_here():
    xs, samples, gvals = _scalar_instance()
    cs = [(x,) for x in xs]
    lams = [(Fraction(k, 2),) for k in range(5)]
    us = [(Fraction(k),) for k in (-1, 0, 1)]
    L = (Fraction(0),)
    d2 = scalar_fenchel_lagrange_dual2(samples, cs, gvals, L, us, lams)
    d3 = scalar_fenchel_lagrange_dual3(samples, cs, samples_g(xs), L, us, us, lams)
    assert d2 == 1
    assert d3 == 1


def samples_g(xs):
    return [((x,), (1 - x,)) for x in xs]
