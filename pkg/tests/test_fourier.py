"""Transform identities on small grids: the factored path against the
literal double sum, round trips, Plancherel, and character sums."""

import itertools

import numpy as np
import pytest

from zqgeom.fourier import (
    GridFunction,
    SpectrumTable,
    forward,
    forward_naive,
    inverse,
    inverse_naive,
    plancherel_gap,
)
from zqgeom.harness import SplitMix64, random_subset
from zqgeom.orthogroup import so2_elements
from zqgeom.ring import Modulus

M3 = Modulus(3, 1)
M9 = Modulus(3, 2)
M27 = Modulus(3, 3)


def random_grid(m, d, seed):
    """Complex table with entries on [-1, 1] x [-i, i], reproducible."""
    rng = SplitMix64(seed)
    flat = np.array(
        [
            complex(rng.below(2001) / 1000 - 1, rng.below(2001) / 1000 - 1)
            for _ in range(m.q**d)
        ]
    )
    return GridFunction(m, d, flat)


def test_table_shape_handling():
    f = GridFunction(M3, 2, np.arange(9.0))
    assert f.values.shape == (3, 3)
    assert f.at((1, 2)) == 5.0
    assert f.at((4, -1)) == 5.0  # indices reduce mod q
    with pytest.raises(ValueError):
        GridFunction(M3, 2, np.arange(8.0))


def test_indicator_and_from_counts():
    f = GridFunction.indicator(M9, 2, [(1, 0), (10, 0), (0, 3)])
    assert f.values.sum() == 2.0  # duplicates collapse mod q
    g = GridFunction.from_counts(M3, 1, {(0,): 2, (2,): 5})
    assert list(g.values) == [2, 0, 5]


def test_single_point_spectrum_explicit():
    f = GridFunction.indicator(M3, 2, [(1, 0)])
    fhat = forward(f)
    for m1, m2 in itertools.product(range(3), repeat=2):
        expect = np.exp(-2j * np.pi * m1 / 3) / 9
        assert abs(fhat.at((m1, m2)) - expect) < 1e-12


def test_delta_and_constant_spectra():
    delta = GridFunction.indicator(M9, 1, [(0,)])
    assert np.allclose(forward(delta).values, 1 / 9)
    const = GridFunction(M9, 1, np.ones(9))
    chat = forward(const).values
    assert abs(chat[0] - 1) < 1e-12
    assert np.abs(chat[1:]).max() < 1e-12


@pytest.mark.parametrize(
    "m,d", [(M3, 1), (M3, 2), (M9, 1), (M9, 2), (M27, 1), (M27, 2)], ids=str
)
def test_factored_path_matches_literal_sum(m, d):
    f = random_grid(m, d, seed=10 * m.q + d)
    assert np.abs(forward(f).values - forward_naive(f).values).max() < 1e-10
    fhat = forward(f)
    assert np.abs(inverse(fhat).values - inverse_naive(fhat).values).max() < 1e-10


@pytest.mark.parametrize("m,d", [(M9, 2), (M27, 1), (M27, 2)], ids=str)
def test_round_trip_and_plancherel(m, d):
    f = random_grid(m, d, seed=1)
    g = inverse(forward(f))
    scale = 1 + np.abs(f.values).max()
    assert np.abs(g.values - f.values).max() < 1e-9 * scale
    energy = 1 + float(np.sum(np.abs(f.values) ** 2)) / m.q**d
    assert plancherel_gap(f) < 1e-9 * energy


def test_transform_is_linear():
    f, g = random_grid(M9, 2, 2), random_grid(M9, 2, 3)
    combo = GridFunction(M9, 2, 2.0 * f.values - 1j * g.values)
    expect = 2.0 * forward(f).values - 1j * forward(g).values
    assert np.abs(forward(combo).values - expect).max() < 1e-12


@pytest.mark.parametrize("q,d", [(3, 1), (3, 2), (9, 1), (9, 2), (27, 1), (27, 2)])
def test_character_orthogonality(q, d):
    pts = np.array(list(itertools.product(range(q), repeat=d)))
    for mvec in pts[1:]:
        s = np.exp(2j * np.pi * ((pts @ mvec) % q) / q).sum()
        assert abs(s) < 1e-6


def test_spectrum_table_round_trips_counts():
    # transform of an indicator, then inversion, recovers the 0/1 table
    E = random_subset(M9, 2, 11, seed=5)
    f = E.indicator()
    back = inverse(forward(f))
    assert np.abs(back.values - f.values).max() < 1e-12


def test_rotation_twist_shows_up_as_frequency_twist():
    # spot check of the correlation spectrum against the product form
    from zqgeom.configsets import rotation_correlation

    m = M9
    E = random_subset(m, 2, 10, seed=4)
    ehat = forward(E.indicator())
    theta = so2_elements(m)[3]
    nu = GridFunction.from_counts(m, 2, rotation_correlation(E, theta))
    nuhat = forward(nu)
    q = m.q
    for xi in itertools.product(range(q), repeat=2):
        back = theta.transpose().apply(xi)
        rhs = q**2 * ehat.at(xi) * ehat.at((-back[0], -back[1]))
        assert abs(nuhat.at(xi) - rhs) < 1e-10
