"""Configuration counters checked against small brute-force oracles."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zqgeom.configsets import (
    PointSet,
    difference_stratum_census,
    difference_stratum_counts,
    distance_set,
    dot_product_counts,
    dot_product_set,
    moment_bound,
    restricted_line_count,
    rotation_correlation,
    sumset,
    triangle_area_set,
)
from zqgeom.geometry import (
    DimensionMismatch,
    det2,
    lines_in_stratum,
    spanned_line,
    stratum_of,
    stratum_size,
    vadd,
    vsub,
)
from zqgeom.harness import random_subset
from zqgeom.orthogroup import Rotation, so2_elements, triangle_classes
from zqgeom.ring import Modulus

M3 = Modulus(3, 1)
M9 = Modulus(3, 2)
M27 = Modulus(3, 3)
M25 = Modulus(5, 2)


def test_point_set_canonicalizes():
    ps = PointSet(M9, 2, ((10, -1), (1, 8), (0, 0)))
    assert ps.points == ((0, 0), (1, 8))
    assert len(ps) == 2
    assert (1, 8) in ps and (2, 2) not in ps
    assert [1, 8] in ps  # membership coerces to tuples


def test_point_set_dimension_check():
    with pytest.raises(DimensionMismatch):
        PointSet(M9, 2, ((1, 2, 3),))
    with pytest.raises(ValueError):
        PointSet(M9, 0, ())


def test_product_and_full_grid():
    ps = PointSet.product(M3, (2, 1, 4), 2)
    assert ps.base == (1, 2)
    assert ps.points == ((1, 1), (1, 2), (2, 1), (2, 2))
    full = PointSet.full_grid(M3, 2)
    assert len(full) == 9 and full.base is None
    with pytest.raises(ValueError):
        PointSet.full_grid(Modulus(7, 3), 4)


def test_distance_set_small():
    assert distance_set(PointSet.full_grid(M3, 2)) == {0, 1, 2}
    two = PointSet(M9, 2, ((0, 0), (1, 2)))
    assert distance_set(two) == {0, 5}


def test_dot_product_set_and_counts():
    E = PointSet(M3, 2, ((1, 0), (0, 1)))
    assert dot_product_set(E) == {0, 1}
    assert dot_product_counts(E) == {0: 2, 1: 2, 2: 0}
    F = random_subset(M9, 2, 11, seed=2)
    counts = dot_product_counts(F)
    assert sum(counts.values()) == 121
    assert set(counts) == set(range(9))
    assert {t for t, c in counts.items() if c} == dot_product_set(F)


def test_triangle_area_set_examples():
    corner = PointSet(M3, 2, ((0, 0), (1, 0), (0, 1)))
    assert triangle_area_set(corner) == {1, 2}
    collinear = PointSet(M3, 2, ((0, 0), (1, 1), (2, 2)))
    assert triangle_area_set(collinear) == set()
    assert triangle_area_set(PointSet(M3, 2, ())) == set()
    with pytest.raises(DimensionMismatch):
        triangle_area_set(PointSet(M3, 3, ((0, 0, 0),)))


def _areas_brute(E):
    out = set()
    for x in E:
        for y in E:
            for z in E:
                a = det2(E.m, vsub(E.m, x, z), vsub(E.m, y, z))
                if a:
                    out.add(a)
    return out


@pytest.mark.parametrize("seed", range(5))
def test_triangle_area_set_matches_bruteforce(seed):
    E = random_subset(M9, 2, 6, seed=seed)
    assert triangle_area_set(E) == _areas_brute(E)


def test_triangle_area_set_is_congruence_invariant():
    m = M9
    E = random_subset(m, 2, 8, seed=12)
    areas = triangle_area_set(E)
    rot = so2_elements(m)[5]
    turned = PointSet(m, 2, tuple(rot.apply(v) for v in E))
    moved = PointSet(m, 2, tuple(vadd(m, v, (2, 7)) for v in E))
    assert triangle_area_set(turned) == areas
    assert triangle_area_set(moved) == areas


def test_rotation_correlation_identity_rotation():
    E = PointSet(M3, 2, ((0, 0), (1, 1)))
    nu = rotation_correlation(E, Rotation(1, 0, M3))
    assert nu[(0, 0)] == 2 and nu[(1, 1)] == 1 and nu[(2, 2)] == 1
    assert sum(nu.values()) == 4
    assert len(nu) == 9  # dense over the plane


@pytest.mark.parametrize("seed", range(3))
def test_rotation_correlation_totals_and_pointwise_cap(seed):
    E = random_subset(M9, 2, 9, seed=seed)
    for theta in so2_elements(M9):
        nu = rotation_correlation(E, theta)
        assert sum(nu.values()) == 81
        # for fixed t and v the first coordinate u is determined
        assert max(nu.values()) <= len(E)


def test_moment_bound_examples():
    assert moment_bound([1, 0, 0, 0], 3) == (Fraction(1), Fraction(37, 16))
    lhs, rhs = moment_bound({i: 5 for i in range(3)}, 4)
    assert lhs == rhs == 3 * Fraction(5) ** 4


def test_moment_bound_validation():
    with pytest.raises(ValueError):
        moment_bound([], 2)
    with pytest.raises(ValueError):
        moment_bound([1, -1], 2)
    with pytest.raises(ValueError):
        moment_bound([1, 2], 1)


@given(st.lists(st.integers(0, 50), min_size=1, max_size=60), st.sampled_from((2, 3, 4)))
def test_moment_bound_holds(values, n):
    lhs, rhs = moment_bound(values, n)
    assert lhs <= rhs


def test_moment_bound_on_correlation_tables():
    E = random_subset(M9, 2, 10, seed=6)
    for theta in so2_elements(M9)[:4]:
        lhs, rhs = moment_bound(rotation_correlation(E, theta), 3)
        assert lhs <= rhs


@pytest.mark.parametrize("q,expected_r", [(9, 1944), (27, 209952), (25, 75000)])
def test_difference_stratum_weighted_sums(q, expected_r):
    m = Modulus.from_q(q)
    r_list, r = difference_stratum_counts(m)
    assert len(r_list) == m.l - 1
    assert r == expected_r
    assert r <= 2 * m.p ** (4 * m.l - 1)


def test_difference_strata_trivial_at_prime_modulus():
    assert difference_stratum_counts(M3) == ([], 0)
    assert difference_stratum_census(M3) == [72]


@pytest.mark.parametrize("q", [9, 27, 25])
def test_difference_census_matches_formula(q):
    m = Modulus.from_q(q)
    census = difference_stratum_census(m)
    r_list, _ = difference_stratum_counts(m)
    assert census[1:] == r_list
    assert census[0] == m.q**2 * stratum_size(m, 0)
    assert sum(census) == m.q**2 * (m.q**2 - 1)


def test_difference_census_small_bruteforce():
    m = M9
    grid = list(itertools.product(range(9), repeat=2))
    counts = [0] * m.l
    for x in grid:
        for y in grid:
            d = vsub(m, x, y)
            if d != (0, 0):
                counts[stratum_of(m, d)] += 1
    assert counts == difference_stratum_census(m)


def test_sumset_examples():
    m = M9
    line = spanned_line(m, (1, 2))
    origin = PointSet(m, 2, ((0, 0),))
    assert sumset(origin, line) == set(line.points())
    as_set = PointSet(m, 2, tuple(line.points()))
    assert sumset(as_set, line) == set(line.points())  # closed under itself


def test_sumset_lower_bound_for_a_seeded_set():
    m = M9
    E = random_subset(m, 2, 47, seed=42)
    best = max(len(sumset(E, line)) for line in lines_in_stratum(m, 0))
    assert best == 81  # pinned for this seed; some line already covers the plane
    assert 4 * m.p * (best + 1) > m.q**2 * (1 + m.p)


def test_restricted_line_count_examples():
    E = PointSet.product(M3, (1, 2), 2)
    assert restricted_line_count(E, (1, 1), 0) == 2
    full_base = PointSet.product(M9, range(9), 2)
    assert restricted_line_count(full_base, (1, 0), 0) == 6
    assert restricted_line_count(full_base, (1, 0), 1) == 2
    with pytest.raises(ValueError):
        restricted_line_count(PointSet(M3, 2, ((1, 1),)), (1, 1), 0)
    with pytest.raises(ValueError):
        restricted_line_count(E, (1, 1), 5)


def test_restricted_line_count_never_beats_either_cap():
    m = M9
    for seed in range(4):
        base = [pt[0] for pt in random_subset(m, 1, 4, seed=seed)]
        E = PointSet.product(m, base, 2)
        for x in E:
            if x == (0, 0):
                continue
            for i in range(m.l):
                count = restricted_line_count(E, x, i)
                scalars = m.p ** (m.l - i) - m.p ** (m.l - i - 1)
                assert count <= min(scalars, len(E))


def test_counting_chain_cauchy_schwarz():
    # |E|**6 <= |T_2| * sum mu**2 and |E|**4 <= |Pi| * sum nu**2
    m = M9
    E = random_subset(m, 2, 9, seed=8)
    mu = triangle_classes(m, E)
    assert len(E) ** 6 <= len(mu) * sum(c * c for c in mu.values())
    nu = dot_product_counts(E)
    support = len(dot_product_set(E))
    assert len(E) ** 4 <= support * sum(c * c for c in nu.values())


def test_mu_square_sum_below_nu_cube_sum():
    # the second-moment count is dominated by the twisted third moments
    m = M3
    pts = list(itertools.product(range(3), repeat=2))[:5]
    E = PointSet(m, 2, tuple(pts))
    mu2 = sum(c * c for c in triangle_classes(m, E).values())
    total = sum(
        sum(c**3 for c in rotation_correlation(E, theta).values())
        for theta in so2_elements(m)
    )
    assert mu2 <= total
