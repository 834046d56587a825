"""Vectors, spheres, strata, and origin lines of the plane over Z_q.

Vectors are tuples of canonical residues.  A line is the cyclic
submodule spanned by one generator; the stratum of a vector is the
exact power of p dividing both coordinates, which splits the punctured
plane into annuli that the line census is organized around.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ring import Modulus

__all__ = [
    "DimensionMismatch",
    "Line",
    "Vec",
    "average_line_points",
    "det2",
    "dot",
    "lines_in_stratum",
    "lines_through",
    "norm",
    "spanned_line",
    "sphere_points",
    "stratum_of",
    "stratum_points",
    "stratum_size",
    "vadd",
    "vsub",
]

Vec = tuple[int, ...]


class DimensionMismatch(ValueError):
    """Vector arguments live in different (or unsupported) dimensions."""


def vadd(m: Modulus, u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise DimensionMismatch(f"sum of a {len(u)}-vector and a {len(v)}-vector")
    return tuple((a + b) % m.q for a, b in zip(u, v))


def vsub(m: Modulus, u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise DimensionMismatch(f"difference of a {len(u)}-vector and a {len(v)}-vector")
    return tuple((a - b) % m.q for a, b in zip(u, v))


def norm(m: Modulus, v: Vec) -> int:
    """Sum of squared coordinates mod q (a quadratic form, not a metric)."""
    return sum(c * c for c in v) % m.q


def dot(m: Modulus, u: Vec, v: Vec) -> int:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of a {len(u)}-vector with a {len(v)}-vector")
    return sum(a * b for a, b in zip(u, v)) % m.q


def det2(m: Modulus, u: Vec, v: Vec) -> int:
    """Determinant of the 2x2 matrix with columns u, v."""
    if len(u) != 2 or len(v) != 2:
        raise DimensionMismatch("det2 needs two plane vectors")
    return (u[0] * v[1] - u[1] * v[0]) % m.q


def sphere_points(m: Modulus, j: int, d: int) -> tuple[Vec, ...]:
    """All x in Z_q^d with norm j, by full scan, in lexicographic order."""
    if d < 1:
        raise ValueError(f"dimension must be at least 1, got {d}")
    j %= m.q
    return tuple(
        v for v in itertools.product(range(m.q), repeat=d) if norm(m, v) == j
    )


def stratum_of(m: Modulus, v: Vec) -> int:
    """Exact power of p dividing every coordinate (l for the zero vector)."""
    return min(m.valuation(c) for c in v)


def stratum_size(m: Modulus, n: int) -> int:
    """Closed-form count of stratum-n vectors."""
    if not 0 <= n <= m.l - 1:
        raise ValueError(f"stratum index must lie in [0, {m.l - 1}], got {n}")
    return m.p ** (2 * (m.l - n)) - m.p ** (2 * (m.l - n - 1))


def stratum_points(m: Modulus, n: int) -> tuple[Vec, ...]:
    """All plane vectors with both coordinates exactly divisible by p**n."""
    if not 0 <= n <= m.l - 1:
        raise ValueError(f"stratum index must lie in [0, {m.l - 1}], got {n}")
    pn, w = m.p**n, m.p ** (m.l - n)
    return tuple(
        (pn * a, pn * b)
        for a in range(w)
        for b in range(w)
        if a % m.p != 0 or b % m.p != 0
    )


@dataclass(frozen=True)
class Line:
    """Cyclic submodule of Z_q^2 spanned by a canonical generator.

    Points are materialized on demand; membership solves for the scalar
    directly, so it costs one modular inversion at most.
    """

    m: Modulus
    generator: tuple[int, int]
    stratum: int

    def __len__(self) -> int:
        return self.m.p ** (self.m.l - self.stratum)

    def points(self) -> list[tuple[int, int]]:
        q = self.m.q
        a, b = self.generator
        return [((t * a) % q, (t * b) % q) for t in range(len(self))]

    def __contains__(self, v) -> bool:
        if len(v) != 2:
            return False
        p, q = self.m.p, self.m.q
        pn = p**self.stratum
        v0, v1 = v[0] % q, v[1] % q
        if v0 % pn or v1 % pn:
            return False
        w = p ** (self.m.l - self.stratum)
        a0, b0 = self.generator[0] // pn, self.generator[1] // pn
        w0, w1 = (v0 // pn) % w, (v1 // pn) % w
        if a0 == 1:
            return (w0 * b0) % w == w1
        if b0 == 1:
            return (w1 * a0) % w == w0
        if a0 % p:
            t = (w0 * pow(a0, -1, w)) % w
            return (t * b0) % w == w1
        t = (w1 * pow(b0, -1, w)) % w
        return (t * a0) % w == w0


def spanned_line(m: Modulus, v: Vec) -> Line:
    """The line through v and the origin, in canonical-generator form.

    A stratum-n vector is p**n times a vector with a unit coordinate;
    scaling by that unit's inverse normalizes the generator to
    p**n * (1, c) or, when the first coordinate stays divisible by p,
    to p**n * (c', 1).  Two vectors span the same line exactly when
    they normalize to the same generator.
    """
    if len(v) != 2:
        raise DimensionMismatch("lines live in the plane")
    v = (v[0] % m.q, v[1] % m.q)
    if v == (0, 0):
        raise ValueError("the zero vector spans no line")
    n = stratum_of(m, v)
    pn, w = m.p**n, m.p ** (m.l - n)
    a0, b0 = v[0] // pn, v[1] // pn
    if a0 % m.p:
        g0 = (1, (b0 * pow(a0, -1, w)) % w)
    else:
        g0 = ((a0 * pow(b0, -1, w)) % w, 1)
    return Line(m, (pn * g0[0], pn * g0[1]), n)


@lru_cache(maxsize=None)
def lines_in_stratum(m: Modulus, n: int) -> tuple[Line, ...]:
    """All distinct lines spanned by stratum-n vectors, sorted by generator."""
    found = {spanned_line(m, v) for v in stratum_points(m, n)}
    return tuple(sorted(found, key=lambda line: line.generator))


def lines_through(m: Modulus, v: Vec) -> tuple[Line, ...]:
    """Full-length lines containing v, by scanning the whole stratum-0 census."""
    v = tuple(c % m.q for c in v)
    if all(c == 0 for c in v):
        raise ValueError("the zero vector lies on every line")
    return tuple(line for line in lines_in_stratum(m, 0) if v in line)


def average_line_points(m: Modulus) -> Fraction:
    """Mean number of points per line across all strata (diagnostic only)."""
    sizes = [len(line) for n in range(m.l) for line in lines_in_stratum(m, n)]
    return Fraction(sum(sizes), len(sizes))
