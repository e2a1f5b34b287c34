"""Symmetric linear deterministic interference channel with output feedback.

Signals are q-bit vectors over GF(2), q = max(n, m), bit 1 the most
significant. Each receiver sees its own transmitter shifted down by q - n
levels XOR the other transmitter shifted down by q - m levels.

Internally a vector is packed into a Python int whose top bit (bit q-1)
is level 1, so a down-shift by s levels is ``v >> s``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .rate_region import HalfPlane, RatePair, RatePolytope, build_polytope, contains


class Uncharacterized(ValueError):
    """The feedback architecture has no known capacity region."""

    def __init__(self, state):
        super().__init__(f"uncharacterized feedback state {state}")
        self.state = state


class LengthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FeedbackState:
    """Which receiver-to-transmitter links exist; ``fku`` is D_k -> T_u."""

    f11: bool
    f12: bool
    f21: bool
    f22: bool

    @classmethod
    def parse(cls, s: "str | FeedbackState") -> "FeedbackState":
        if isinstance(s, FeedbackState):
            return s
        s = str(s).strip()
        if len(s) != 4 or set(s) - {"0", "1"}:
            raise ValueError(f"feedback state must be 4 bits like '1000', got {s!r}")
        return cls(*(c == "1" for c in s))

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in (self.f11, self.f12, self.f21, self.f22))

    @property
    def has_direct(self) -> bool:
        return self.f11 or self.f22

    @property
    def is_cross_only(self) -> bool:
        return not self.has_direct and (self.f12 or self.f21)

    @property
    def any_link(self) -> bool:
        return self.f11 or self.f12 or self.f21 or self.f22

    def mirror(self) -> "FeedbackState":
        """Relabel users 1 <-> 2."""
        return FeedbackState(self.f22, self.f21, self.f12, self.f11)


ALL_STATES = tuple(FeedbackState.parse(f"{k:04b}") for k in range(16))
UNCHARACTERIZED = frozenset(FeedbackState.parse(s) for s in ("0010", "0100", "1010", "0101"))
CHARACTERIZED = tuple(f for f in ALL_STATES if f not in UNCHARACTERIZED)


def canonical(f: FeedbackState) -> tuple[str, bool]:
    """Map a characterized state to (family, mirrored).

    Families: 'none', 'both_direct', 'one_side' (1100/1110), 'single' (1000), 'cross'.
    ``mirrored`` is True when the region must be reflected across R1 = R2.
    """
    f = FeedbackState.parse(f)
    if f in UNCHARACTERIZED:
        raise Uncharacterized(str(f))
    if not f.any_link:
        return "none", False
    if f.f11 and f.f22:
        return "both_direct", False
    if f.is_cross_only:  # only 0110 survives the uncharacterized filter
        return "cross", False
    mirrored = not f.f11
    g = f.mirror() if mirrored else f
    # g has f11 = 1, f22 = 0
    if g.f12:
        return "one_side", mirrored
    return "single", mirrored


@dataclass(frozen=True)
class DetParams:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0 or int(self.n) != self.n or int(self.m) != self.m:
            raise ValueError("n and m must be nonnegative integers")

    @property
    def q(self) -> int:
        return max(self.n, self.m)


def pos(x):
    return max(x, 0)


def channel_int(x1: int, x2: int, p: DetParams) -> tuple[int, int]:
    """Channel law on packed vectors."""
    q = p.q
    y1 = (x1 >> (q - p.n)) ^ (x2 >> (q - p.m))
    y2 = (x2 >> (q - p.n)) ^ (x1 >> (q - p.m))
    return y1, y2


def pack(bits: Sequence[int]) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | (int(b) & 1)
    return v


def unpack(v: int, q: int) -> tuple[int, ...]:
    return tuple((v >> (q - 1 - k)) & 1 for k in range(q))


def channel_output(x1: Sequence[int], x2: Sequence[int], p: DetParams) -> tuple[tuple[int, ...], tuple[int, ...]]:
    q = p.q
    if len(x1) != q or len(x2) != q:
        raise LengthMismatch(f"inputs must have length q={q}, got {len(x1)} and {len(x2)}")
    y1, y2 = channel_int(pack(x1), pack(x2), p)
    return unpack(y1, q), unpack(y2, q)


def _sum_cap_full(p: DetParams) -> int:
    return pos(p.n - p.m) + max(p.n, p.m)


def _weighted_cap(p: DetParams) -> int:
    # right-hand side of the 2R1 + R2 (and R1 + 2R2) bounds
    return max(p.n, p.m) + pos(p.n - p.m) + max(p.m, p.n - p.m)


def _planes(family: str, p: DetParams) -> list[HalfPlane]:
    n, m = p.n, p.m
    cut = max(n, m)
    s = _sum_cap_full(p)
    if family == "none":
        w = _weighted_cap(p)
        return [
            HalfPlane(1, 0, n),
            HalfPlane(0, 1, n),
            HalfPlane(1, 1, min(s, 2 * max(m, n - m))),
            HalfPlane(1, 2, w),
            HalfPlane(2, 1, w),
        ]
    if family == "both_direct":
        return [HalfPlane(1, 0, cut), HalfPlane(0, 1, cut), HalfPlane(1, 1, s)]
    if family == "one_side":
        return [HalfPlane(1, 0, n), HalfPlane(0, 1, cut), HalfPlane(1, 1, s)]
    if family == "single":
        return _planes("one_side", p) + [HalfPlane(2, 1, _weighted_cap(p))]
    if family == "cross":
        # no direct link on either side: R_u <= n each, and the cross-only sum bound
        return [HalfPlane(1, 0, n), HalfPlane(0, 1, n), HalfPlane(1, 1, min(2 * n, s))]
    raise AssertionError(family)


def det_outer_polytope(f, p: DetParams) -> RatePolytope:
    family, mirrored = canonical(FeedbackState.parse(f))
    poly = build_polytope(_planes(family, p))
    return poly.reflect() if mirrored else poly


def det_sum_capacity(f, p: DetParams) -> int:
    # sum capacity is known for every architecture, including the four
    # whose full region is open
    f = FeedbackState.parse(f)
    s = _sum_cap_full(p)
    if f.has_direct:
        return s
    if f.is_cross_only:
        return min(2 * p.n, s)
    # no feedback: the individual caps R_u <= n also limit the sum
    return min(s, 2 * max(p.m, p.n - p.m), 2 * p.n)


def corner_gain_points(f, p: DetParams) -> list[RatePair]:
    """Vertices of the feedback region that the no-feedback region lacks."""
    region = det_outer_polytope(f, p)
    base = det_outer_polytope("0000", p)
    return [v for v in region.vertices if (v.r1 > 0 or v.r2 > 0) and not contains(base, v, 0)]
