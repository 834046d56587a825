"""Plane structure: norms, spheres, strata, and the line census."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zqgeom.geometry import (
    DimensionMismatch,
    average_line_points,
    det2,
    dot,
    lines_in_stratum,
    lines_through,
    norm,
    spanned_line,
    sphere_points,
    stratum_of,
    stratum_points,
    stratum_size,
    vadd,
    vsub,
)
from zqgeom.ring import Modulus

M3 = Modulus(3, 1)
M9 = Modulus(3, 2)
M27 = Modulus(3, 3)
M25 = Modulus(5, 2)


def test_vector_arithmetic():
    assert vadd(M9, (7, 8), (3, 3)) == (1, 2)
    assert vsub(M9, (0, 1), (2, 5)) == (7, 5)
    assert norm(M9, (1, 2)) == 5
    assert norm(M9, (3, 3)) == 0
    assert dot(M9, (1, 2), (2, 2)) == 6
    assert det2(M9, (1, 0), (0, 1)) == 1
    assert det2(M9, (2, 1), (1, 2)) == 3


def test_dimension_errors():
    with pytest.raises(DimensionMismatch):
        dot(M9, (1, 2), (1, 2, 3))
    with pytest.raises(DimensionMismatch):
        vadd(M9, (1,), (1, 2))
    with pytest.raises(DimensionMismatch):
        det2(M9, (1, 2, 3), (1, 2, 0))


def test_sphere_points_small():
    assert sphere_points(M3, 1, 2) == ((0, 1), (0, 2), (1, 0), (2, 0))
    assert sphere_points(M3, 0, 2) == ((0, 0),)
    assert len(sphere_points(M9, 1, 2)) == 12


def test_spheres_partition_the_grid():
    pts_by_norm = [sphere_points(M9, j, 2) for j in range(9)]
    for j, pts in enumerate(pts_by_norm):
        assert all(norm(M9, v) == j for v in pts)
    assert sum(len(pts) for pts in pts_by_norm) == 81


def test_stratum_of_examples():
    assert stratum_of(M9, (1, 6)) == 0
    assert stratum_of(M9, (3, 3)) == 1
    assert stratum_of(M9, (3, 0)) == 1
    assert stratum_of(M9, (0, 0)) == 2
    assert stratum_of(M27, (9, 18)) == 2


@pytest.mark.parametrize("m", [M9, M27, M25], ids=str)
def test_strata_partition_punctured_plane(m):
    seen = set()
    for n in range(m.l):
        pts = stratum_points(m, n)
        assert len(pts) == stratum_size(m, n)
        assert len(set(pts)) == len(pts)
        assert all(stratum_of(m, v) == n for v in pts)
        seen.update(pts)
    assert len(seen) == m.q**2 - 1
    assert (0, 0) not in seen


def test_stratum_range_errors():
    with pytest.raises(ValueError):
        stratum_size(M9, 2)
    with pytest.raises(ValueError):
        stratum_points(M9, -1)


def test_line_census_small():
    top = lines_in_stratum(M9, 0)
    deep = lines_in_stratum(M9, 1)
    assert len(top) == 12
    assert len(deep) == 4
    assert len(lines_in_stratum(M3, 0)) == 4
    for line in top:
        assert len(line) == 9
        assert len(set(line.points())) == 9
    for line in deep:
        assert len(line) == 3


@pytest.mark.parametrize("m", [M9, M27, M25], ids=str)
def test_line_census_matches_formula(m):
    for n in range(m.l):
        lines = lines_in_stratum(m, n)
        assert len(lines) == m.p ** (m.l - n) + m.p ** (m.l - n - 1)
        # canonical generators name distinct point sets
        assert len({frozenset(line.points()) for line in lines}) == len(lines)
        assert all(line.stratum == n for line in lines)


def test_spanned_line_canonicalizes_the_generator():
    assert spanned_line(M9, (2, 4)) == spanned_line(M9, (1, 2))
    assert spanned_line(M9, (1, 2)).generator == (1, 2)
    assert spanned_line(M9, (6, 3)).generator == (3, 6)
    # second-coordinate units fall back to the (c, 1) form
    assert spanned_line(M9, (3, 1)).generator == (3, 1)
    with pytest.raises(ValueError):
        spanned_line(M9, (0, 0))
    with pytest.raises(DimensionMismatch):
        spanned_line(M9, (1, 2, 3))


def test_line_membership_matches_point_listing():
    grid = list(itertools.product(range(9), repeat=2))
    for n in range(2):
        for line in lines_in_stratum(M9, n):
            pts = set(line.points())
            for v in grid:
                assert (v in line) == (v in pts)


def test_lines_through_examples():
    assert [line.generator for line in lines_through(M9, (1, 0))] == [(1, 0)]
    assert [line.generator for line in lines_through(M9, (3, 3))] == [(1, 1), (1, 4), (1, 7)]
    with pytest.raises(ValueError):
        lines_through(M9, (0, 0))


@pytest.mark.parametrize("m", [M9, M27, M25], ids=str)
def test_point_line_incidence_counts(m):
    # a depth-n point sits on exactly p**n of the full-length lines
    for n in range(m.l):
        for v in stratum_points(m, n):
            assert len(lines_through(m, v)) == m.p**n


def test_average_line_points_diagnostic():
    # 12 lines of 9 points and 4 lines of 3 points
    assert average_line_points(M9) == Fraction(12 * 9 + 4 * 3, 16)


@given(
    st.tuples(st.integers(0, 8), st.integers(0, 8)),
    st.tuples(st.integers(0, 8), st.integers(0, 8)),
)
def test_det2_antisymmetry(u, v):
    assert det2(M9, u, v) == (-det2(M9, v, u)) % 9


@given(
    st.tuples(st.integers(0, 8), st.integers(0, 8)),
    st.tuples(st.integers(0, 8), st.integers(0, 8)),
)
def test_norm_of_difference_is_symmetric(u, v):
    assert norm(M9, vsub(M9, u, v)) == norm(M9, vsub(M9, v, u))
