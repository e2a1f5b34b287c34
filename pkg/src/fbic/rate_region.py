"""Two-dimensional rate polytopes.

A region is the set of nonnegative pairs (R1, R2) satisfying a list of
half-planes ``a*R1 + b*R2 <= c`` with ``a, b >= 0``. Vertices come from
brute-force pairwise intersection, which is exact for int/Fraction input
and plenty fast for the handful of planes used here.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence

TOL = 1e-9


class UnboundedRegion(ValueError):
    """Raised when some rate axis has no finite cap."""


class RatePair(NamedTuple):
    r1: float
    r2: float


@dataclass(frozen=True)
class HalfPlane:
    a: float
    b: float
    c: float

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError(f"coefficients must be nonnegative: {self}")
        if self.a == 0 and self.b == 0:
            raise ValueError("degenerate half-plane with a = b = 0")

    def value(self, r1, r2):
        return self.a * r1 + self.b * r2

    def to_dict(self) -> dict:
        return {"a": _num(self.a), "b": _num(self.b), "c": _num(self.c)}


@dataclass(frozen=True)
class RatePolytope:
    planes: tuple[HalfPlane, ...]
    vertices: tuple[RatePair, ...]

    def to_dict(self) -> dict:
        return {
            "planes": [h.to_dict() for h in self.planes],
            "vertices": [[_num(v.r1), _num(v.r2)] for v in self.vertices],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RatePolytope":
        return build_polytope([HalfPlane(h["a"], h["b"], h["c"]) for h in d["planes"]])

    def reflect(self) -> "RatePolytope":
        """Swap the roles of the two users."""
        return build_polytope([HalfPlane(h.b, h.a, h.c) for h in self.planes])


def _num(x):
    # JSON-friendly: exact integers stay integers
    if isinstance(x, Rational) and x == int(x):
        return int(x)
    return float(x)


def _exact(*xs) -> bool:
    return all(isinstance(x, Rational) for x in xs)


def _solve(p: HalfPlane, q: HalfPlane):
    """Intersection of the two boundary lines, or None if parallel."""
    det = p.a * q.b - q.a * p.b
    if det == 0:
        return None
    xn, yn = p.c * q.b - q.c * p.b, p.a * q.c - q.a * p.c
    if _exact(p.a, p.b, p.c, q.a, q.b, q.c):
        return _div(xn, det), _div(yn, det)
    return xn / det, yn / det


def _div(a, b):
    # exact quotient; stays a plain int when the division is exact
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return Fraction(a) / b


def build_polytope(planes: Iterable[HalfPlane]) -> RatePolytope:
    planes = tuple(planes)
    if not planes:
        raise ValueError("need at least one half-plane")
    if not any(h.a > 0 for h in planes):
        raise UnboundedRegion("no finite cap on R1")
    if not any(h.b > 0 for h in planes):
        raise UnboundedRegion("no finite cap on R2")
    if any(h.c < 0 for h in planes):
        raise ValueError("negative bound makes the region empty")

    # exact input needs no tolerance, and skipping it keeps Fractions away from floats
    tol = 0 if all(_exact(h.a, h.b, h.c) for h in planes) else TOL
    axes = (HalfPlane(1, 0, 0), HalfPlane(0, 1, 0))  # boundary lines R1 = 0, R2 = 0
    lines = planes + axes
    pts = []
    for p, q in itertools.combinations(lines, 2):
        sol = _solve(p, q)
        if sol is None:
            continue
        x, y = sol
        if x < -tol or y < -tol:
            continue
        if all(h.value(x, y) <= h.c + tol for h in planes):
            # snap tiny negatives (and -0.0) produced by float round-off
            pts.append(RatePair(max(x, 0) + 0, max(y, 0) + 0))

    uniq: list[RatePair] = []
    for v in pts:
        if not any(abs(v.r1 - u.r1) <= tol and abs(v.r2 - u.r2) <= tol for u in uniq):
            uniq.append(v)
    return RatePolytope(planes, tuple(_ccw(uniq)))


def _ccw(pts: Sequence[RatePair]) -> list[RatePair]:
    if len(pts) < 2:
        return list(pts)
    cx = sum(float(p.r1) for p in pts) / len(pts)
    cy = sum(float(p.r2) for p in pts) / len(pts)
    # start from the origin side: angle measured from the centroid, origin first
    def key(p):
        ang = math.atan2(float(p.r2) - cy, float(p.r1) - cx)
        ang0 = math.atan2(-cy, -cx)
        return (ang - ang0) % (2 * math.pi)

    return sorted(pts, key=key)


def contains(p: RatePolytope, r: Sequence[float], tol: float = TOL) -> bool:
    r1, r2 = r
    return all(h.value(r1, r2) <= h.c + tol for h in p.planes)


def is_subset(p: RatePolytope, q: RatePolytope, tol: float = TOL) -> bool:
    return all(contains(q, v, tol) for v in p.vertices)


def subset_witness(p: RatePolytope, q: RatePolytope, tol: float = TOL) -> RatePair | None:
    """First vertex of ``p`` lying outside ``q``, if any."""
    for v in p.vertices:
        if not contains(q, v, tol):
            return v
    return None


def same_region(p: RatePolytope, q: RatePolytope, tol: float = TOL) -> bool:
    return is_subset(p, q, tol) and is_subset(q, p, tol)


def max_sum_rate(p: RatePolytope):
    return max(v.r1 + v.r2 for v in p.vertices)


def vertex_gaps(outer: RatePolytope, inner_points: Sequence[Sequence[float]]) -> list[tuple[RatePair, int, float]]:
    """Per nontrivial vertex: (vertex, index of the closest inner point, gap).

    The distance used is max(C1 - r1, C2 - r2), clamped at zero.
    """
    if not inner_points:
        raise ValueError("inner_points must be nonempty")
    out = []
    for v in outer.vertices:
        c1, c2 = v
        if c1 <= 0 and c2 <= 0:
            continue
        d = [max(c1 - r1, c2 - r2) for r1, r2 in inner_points]
        k = min(range(len(d)), key=d.__getitem__)
        out.append((v, k, max(float(d[k]), 0.0)))
    return out


def max_gap_to_vertices(outer: RatePolytope, inner_points: Sequence[Sequence[float]]) -> float:
    return max((g for _, _, g in vertex_gaps(outer, inner_points)), default=0.0)
