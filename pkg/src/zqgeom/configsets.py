"""Point sets in Z_q^d and the exact configuration counters over them.

Every counter is an exhaustive enumeration, vectorized with int64 numpy
when the triple or pair count warrants it; transforms are only ever used
to cross-check identities, never to produce a count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .fourier import GridFunction
from .geometry import DimensionMismatch, Line, Vec, dot, norm, vadd, vsub
from .orthogroup import Rotation
from .ring import Modulus

__all__ = [
    "FULL_GRID_CAP",
    "PointSet",
    "difference_stratum_census",
    "difference_stratum_counts",
    "distance_set",
    "dot_product_counts",
    "dot_product_set",
    "moment_bound",
    "restricted_line_count",
    "rotation_correlation",
    "sumset",
    "triangle_area_set",
]

# ceiling on materialized grids and sampling universes
FULL_GRID_CAP = 10**6


@dataclass(frozen=True)
class PointSet:
    """A deduplicated, lexicographically sorted subset of Z_q^d.

    `base` records the one-dimensional factor when the set was built as
    a d-fold product A x ... x A; counters that only make sense for
    product sets require it.
    """

    m: Modulus
    d: int
    points: tuple[Vec, ...]
    base: tuple[int, ...] | None = None
    _index: frozenset = field(default=frozenset(), init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"dimension must be at least 1, got {self.d}")
        q = self.m.q
        pts = sorted({tuple(c % q for c in pt) for pt in self.points})
        for pt in pts:
            if len(pt) != self.d:
                raise DimensionMismatch(f"point {pt} is not {self.d}-dimensional")
        object.__setattr__(self, "points", tuple(pts))
        if self.base is not None:
            object.__setattr__(self, "base", tuple(sorted({c % q for c in self.base})))
        object.__setattr__(self, "_index", frozenset(pts))

    @classmethod
    def product(cls, m: Modulus, base: Iterable[int], d: int) -> "PointSet":
        """The d-fold product A x ... x A of a subset A of Z_q."""
        a = sorted({c % m.q for c in base})
        return cls(m, d, tuple(itertools.product(a, repeat=d)), base=tuple(a))

    @classmethod
    def full_grid(cls, m: Modulus, d: int) -> "PointSet":
        if m.q**d > FULL_GRID_CAP:
            raise ValueError(f"grid Z_{m.q}^{d} exceeds the {FULL_GRID_CAP}-point cap")
        return cls(m, d, tuple(itertools.product(range(m.q), repeat=d)))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Vec]:
        return iter(self.points)

    def __contains__(self, v) -> bool:
        return tuple(v) in self._index

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64).reshape(len(self.points), self.d)

    def indicator(self) -> GridFunction:
        return GridFunction.indicator(self.m, self.d, self.points)


def distance_set(E: PointSet) -> set[int]:
    """Norms of pairwise differences."""
    return {norm(E.m, vsub(E.m, x, y)) for x in E for y in E}


def dot_product_set(E: PointSet) -> set[int]:
    """Dot products over ordered pairs."""
    return {dot(E.m, x, y) for x in E for y in E}


def dot_product_counts(E: PointSet) -> dict[int, int]:
    """nu(t), the number of ordered pairs with x.y = t, densely over Z_q."""
    counts = {t: 0 for t in range(E.m.q)}
    for x in E:
        for y in E:
            counts[dot(E.m, x, y)] += 1
    return counts


def triangle_area_set(E: PointSet) -> set[int]:
    """Nonzero parallelogram determinants det(x - z, y - z) over vertex triples."""
    if E.d != 2:
        raise DimensionMismatch("areas are a planar counter")
    n = len(E)
    if n == 0:
        return set()
    q = E.m.q
    pts = E.as_array()
    diff = (pts[:, None, :] - pts[None, :, :]) % q  # diff[i, k] = x_i - x_k
    out: set[int] = set()
    chunk = max(1, 50_000_000 // (n * n))
    for k0 in range(0, n, chunk):
        sl = slice(k0, min(n, k0 + chunk))
        d0, d1 = diff[:, sl, 0], diff[:, sl, 1]
        dets = (d0[:, None, :] * d1[None, :, :] - d1[:, None, :] * d0[None, :, :]) % q
        out.update(int(t) for t in np.unique(dets))
    out.discard(0)
    return out


def rotation_correlation(E: PointSet, theta: Rotation) -> dict[Vec, int]:
    """nu_theta(t), ordered pairs with u - theta(v) = t, densely over Z_q^2."""
    if E.d != 2:
        raise DimensionMismatch("rotation correlation is a planar counter")
    q = E.m.q
    counts = {t: 0 for t in itertools.product(range(q), repeat=2)}
    rotated = [theta.apply(v) for v in E]
    for u in E:
        for rv in rotated:
            counts[((u[0] - rv[0]) % q, (u[1] - rv[1]) % q)] += 1
    return counts


def _as_fraction(x) -> Fraction:
    if isinstance(x, np.generic):
        x = x.item()
    return Fraction(x)


def moment_bound(table, n: int) -> tuple[Fraction, Fraction]:
    """Exact (lhs, rhs) of the mean-plus-spread bound on sum f(z)**n.

    lhs = sum f**n and
    rhs = |F| mean**n + n(n-1)/2 * max**(n-2) * sum (f - mean)**2,
    both as Fractions so the comparison is exact.  Equality holds exactly
    for constant tables.
    """
    values = table.values() if isinstance(table, Mapping) else table
    vals = [_as_fraction(v) for v in values]
    if not vals:
        raise ValueError("the table must be nonempty")
    if n < 2:
        raise ValueError(f"moment order must be at least 2, got {n}")
    if any(v < 0 for v in vals):
        raise ValueError("table values must be nonnegative")
    count = len(vals)
    mean = sum(vals) / count
    spread = sum((v - mean) ** 2 for v in vals)
    lhs = sum(v**n for v in vals)
    rhs = count * mean**n + Fraction(n * (n - 1), 2) * max(vals) ** (n - 2) * spread
    return lhs, rhs


def difference_stratum_counts(m: Modulus) -> tuple[list[int], int]:
    """Closed-form pair counts r_i and the weighted sum r = sum r_i p**i.

    r_i counts ordered pairs of plane points whose difference lies in
    stratum i, i = 1 .. l-1; r is bounded by 2 p**(4l-1).  For l = 1 the
    range is empty and r = 0.
    """
    p, l, q = m.p, m.l, m.q
    r_list = [q * q * (p ** (2 * (l - i)) - p ** (2 * (l - i - 1))) for i in range(1, l)]
    r = sum(ri * p**i for i, ri in enumerate(r_list, start=1))
    return r_list, r


def difference_stratum_census(m: Modulus) -> list[int]:
    """Literal pair enumeration behind the r_i formulas.

    Returns the count of ordered plane-point pairs whose difference lies
    in stratum i, for i = 0 .. l-1 (zero differences fall in stratum l
    and are dropped).
    """
    p, l, q = m.p, m.l, m.q
    vals = np.array([m.valuation(x) for x in range(q)], dtype=np.int64)
    coords = np.array(list(itertools.product(range(q), repeat=2)), dtype=np.int64)
    counts = np.zeros(l + 1, dtype=np.int64)
    chunk = max(1, 5_000_000 // len(coords))
    for s in range(0, len(coords), chunk):
        blk = coords[s : s + chunk]
        d0 = (blk[:, None, 0] - coords[None, :, 0]) % q
        d1 = (blk[:, None, 1] - coords[None, :, 1]) % q
        strat = np.minimum(vals[d0], vals[d1])
        counts += np.bincount(strat.ravel(), minlength=l + 1)
    return [int(c) for c in counts[:l]]


def sumset(E: PointSet, line: Line) -> set[Vec]:
    """Pointwise sums e + x over the line's points."""
    if E.d != 2:
        raise DimensionMismatch("line sumsets are a planar counter")
    return {vadd(E.m, e, x) for e in E for x in line.points()}


def restricted_line_count(E: PointSet, x: Vec, i: int) -> int:
    """Size of E's slice along the unit multiples {s*x : s a unit of Z_{p**(l-i)}}.

    Only meaningful for product sets, where the count is capped by both
    the number of scalars and the size of the one-dimensional base.
    """
    if E.base is None:
        raise ValueError("the point set was not built as a product; no base recorded")
    m = E.m
    if not 0 <= i <= m.l - 1:
        raise ValueError(f"depth must lie in [0, {m.l - 1}], got {i}")
    w = m.p ** (m.l - i)
    slice_pts = {tuple((s * c) % m.q for c in x) for s in range(w) if s % m.p != 0}
    return sum(1 for t in slice_pts if t in E)
