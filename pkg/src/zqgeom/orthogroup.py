"""The rotation group SO_2(Z_q), stabilizers, and triangle congruence."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional

from .geometry import vsub
from .ring import Modulus

__all__ = [
    "Rotation",
    "TriangleClass",
    "canonical_pair",
    "congruence_witness",
    "so2_elements",
    "stabilizer",
    "triangle_classes",
]

Vec2 = tuple[int, int]
Triangle = tuple[Vec2, Vec2, Vec2]


@dataclass(frozen=True)
class Rotation:
    """The matrix [[a, -b], [b, a]] with a**2 + b**2 = 1 mod q.

    Composition is complex multiplication of a + bi, and the transpose
    (conjugate) is the inverse, so the group structure never needs
    generic 2x2 matrix code.
    """

    a: int
    b: int
    m: Modulus

    def apply(self, v: Vec2) -> Vec2:
        q = self.m.q
        return ((self.a * v[0] - self.b * v[1]) % q, (self.b * v[0] + self.a * v[1]) % q)

    def compose(self, other: "Rotation") -> "Rotation":
        q = self.m.q
        return Rotation(
            (self.a * other.a - self.b * other.b) % q,
            (self.b * other.a + self.a * other.b) % q,
            self.m,
        )

    def inverse(self) -> "Rotation":
        return Rotation(self.a, (-self.b) % self.m.q, self.m)

    # for these matrices the transpose is the inverse
    transpose = inverse

    def key(self) -> Vec2:
        return (self.a, self.b)


@lru_cache(maxsize=None)
def so2_elements(m: Modulus) -> tuple[Rotation, ...]:
    """The whole group, in lexicographic (a, b) order; its size tracks |S_1|."""
    q = m.q
    return tuple(
        Rotation(a, b, m)
        for a in range(q)
        for b in range(q)
        if (a * a + b * b) % q == 1
    )


def identity_rotation(m: Modulus) -> Rotation:
    return Rotation(1, 0, m)


def stabilizer(m: Modulus, xi: Vec2) -> tuple[Rotation, ...]:
    """Rotations fixing xi, by scanning the whole group."""
    xi = (xi[0] % m.q, xi[1] % m.q)
    return tuple(t for t in so2_elements(m) if t.apply(xi) == xi)


def congruence_witness(m: Modulus, t1: Triangle, t2: Triangle) -> Optional[Rotation]:
    """First rotation carrying the difference vectors of t2 onto those of t1.

    Triangles are ordered vertex triples; congruence asks for one theta
    with x_i - x_j = theta(y_i - y_j) for all vertex pairs.  Returns None
    when the triangles are not congruent.
    """
    d1 = (vsub(m, t1[0], t1[1]), vsub(m, t1[1], t1[2]), vsub(m, t1[0], t1[2]))
    d2 = (vsub(m, t2[0], t2[1]), vsub(m, t2[1], t2[2]), vsub(m, t2[0], t2[2]))
    for theta in so2_elements(m):
        if all(theta.apply(b) == a for a, b in zip(d1, d2)):
            return theta
    return None


class TriangleClass(NamedTuple):
    """Canonical difference pair (x - y, y - z) labelling a congruence class."""

    u: Vec2
    v: Vec2


@lru_cache(maxsize=1 << 20)
def canonical_pair(m: Modulus, u: Vec2, v: Vec2) -> TriangleClass:
    """Lexicographically least image of (u, v) under the diagonal action."""
    best = min((theta.apply(u), theta.apply(v)) for theta in so2_elements(m))
    return TriangleClass(*best)


def triangle_classes(m: Modulus, points: Iterable[Vec2]) -> dict[TriangleClass, int]:
    """Census of congruence classes of ordered vertex triples.

    Keys are canonical difference pairs; the third difference x - z is
    their sum, so it never needs to be stored.  Multiplicities sum to
    n**3 over the n**3 ordered triples.
    """
    pts = list(points)
    counts: dict[TriangleClass, int] = {}
    for x in pts:
        for y in pts:
            u = vsub(m, x, y)
            for z in pts:
                key = canonical_pair(m, u, vsub(m, y, z))
                counts[key] = counts.get(key, 0) + 1
    return counts
