"""Discrete Fourier analysis on the grid Z_q^d.

The forward transform averages against the additive characters,
fhat(m) = q**-d * sum_x chi(-x.m) f(x) with chi(z) = exp(2 pi i z / q),
and inversion carries no normalization factor.  The literal quadratic
sum is kept as the oracle; the default path factors the kernel one axis
at a time, and the two must agree to within 1e-10.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .ring import Modulus

__all__ = [
    "GridFunction",
    "SpectrumTable",
    "forward",
    "forward_naive",
    "inverse",
    "inverse_naive",
    "plancherel_gap",
]


@lru_cache(maxsize=None)
def _roots_of_unity(q: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(q) / q)


@lru_cache(maxsize=None)
def _axis_kernel(q: int, sign: int) -> np.ndarray:
    """q x q matrix of chi(sign * m * x) values."""
    e = np.outer(np.arange(q), np.arange(q))
    return _roots_of_unity(q)[(sign * e) % q]


@lru_cache(maxsize=8)
def _point_gram(q: int, d: int) -> np.ndarray:
    """x.m mod q for every pair of grid points, in row-major point order."""
    coords = np.indices((q,) * d).reshape(d, -1).T
    return (coords @ coords.T) % q


@dataclass
class _Table:
    m: Modulus
    d: int
    values: np.ndarray

    def __post_init__(self) -> None:
        shape = (self.m.q,) * self.d
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != shape:
            if vals.size != self.m.q**self.d:
                raise ValueError(f"need {self.m.q**self.d} values, got {vals.size}")
            vals = vals.reshape(shape)
        self.values = vals

    def at(self, v) -> complex:
        return complex(self.values[tuple(c % self.m.q for c in v)])


class GridFunction(_Table):
    """A complex-valued table on all of Z_q^d."""

    @classmethod
    def zeros(cls, m: Modulus, d: int) -> "GridFunction":
        return cls(m, d, np.zeros((m.q,) * d, dtype=complex))

    @classmethod
    def indicator(cls, m: Modulus, d: int, points: Iterable) -> "GridFunction":
        out = cls.zeros(m, d)
        for pt in points:
            out.values[tuple(c % m.q for c in pt)] = 1.0
        return out

    @classmethod
    def from_counts(cls, m: Modulus, d: int, table: Mapping) -> "GridFunction":
        out = cls.zeros(m, d)
        for pt, val in table.items():
            out.values[tuple(c % m.q for c in pt)] = val
        return out


class SpectrumTable(_Table):
    """Fourier coefficients indexed by frequency vectors in Z_q^d."""


def _separable(values: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    out = np.asarray(values, dtype=complex)
    for ax in range(out.ndim):
        out = np.moveaxis(np.tensordot(kernel, out, axes=(1, ax)), 0, ax)
    return out


def forward(f: GridFunction) -> SpectrumTable:
    """Axis-factored evaluation of the normalized forward transform."""
    scale = 1.0 / f.m.q**f.d
    return SpectrumTable(f.m, f.d, _separable(f.values, _axis_kernel(f.m.q, -1)) * scale)


def forward_naive(f: GridFunction) -> SpectrumTable:
    """Literal double sum over all frequency/point pairs (the oracle)."""
    q, d = f.m.q, f.d
    kernel = _roots_of_unity(q)[(-_point_gram(q, d)) % q]
    out = kernel @ f.values.reshape(-1) / q**d
    return SpectrumTable(f.m, f.d, out)


def inverse(fhat: SpectrumTable) -> GridFunction:
    """Axis-factored evaluation of the unnormalized inversion sum."""
    return GridFunction(fhat.m, fhat.d, _separable(fhat.values, _axis_kernel(fhat.m.q, 1)))


def inverse_naive(fhat: SpectrumTable) -> GridFunction:
    q, d = fhat.m.q, fhat.d
    kernel = _roots_of_unity(q)[_point_gram(q, d)]
    return GridFunction(fhat.m, fhat.d, kernel @ fhat.values.reshape(-1))


def plancherel_gap(f: GridFunction) -> float:
    """|sum |fhat|^2 - q**-d sum |f|^2|; zero up to roundoff."""
    fhat = forward(f)
    lhs = float(np.sum(np.abs(fhat.values) ** 2))
    rhs = float(np.sum(np.abs(f.values) ** 2)) / f.m.q**f.d
    return abs(lhs - rhs)
