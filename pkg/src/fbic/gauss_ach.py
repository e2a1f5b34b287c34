"""Achievable rate pairs for the Gaussian channel and constant-gap checks.

Each transmitter splits its power into private (p), common (c) and relay (r)
layers. T1 learns T2's relay layer through its feedback link and forwards
it in the next block. Feasibility is checked against successive/joint
decoding constraints at both receivers, the relay decoding at T1, and the
private-layer constraints.

Regimes use the interference exponent alpha with INR = SNR**alpha, but
classification compares SNR and INR powers directly so SNR <= 1 needs
no special casing.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

from .det_model import FeedbackState, Uncharacterized, canonical
from .gauss_outer import GaussParams, gauss_outer_polytope, sum_rate_bound
from .rate_region import RatePair, vertex_gaps

LOG3 = math.log2(3)

# gap constants in bits, per feedback family
GAP_BOUND = {"single": 6.0, "both_direct": 3.59, "one_side": 3.59, "cross": 3.59}
SUM_GAP_BOUND = 4.17
SUM_GAP_BOUND_STRONG = 3.0


class RegimeMismatch(ValueError):
    pass


class Infeasible(RuntimeError):
    def __init__(self, corner, violations):
        super().__init__(f"{corner}: violates {', '.join(violations)}")
        self.violations = violations


class Regime(enum.Enum):
    A0_HALF = "A0_HALF"
    HALF_TWOTHIRDS = "HALF_TWOTHIRDS"
    TWOTHIRDS_ONE = "TWOTHIRDS_ONE"
    ONE_TWO = "ONE_TWO"
    TWO_INF = "TWO_INF"

    @property
    def weak(self) -> bool:
        return self in (Regime.A0_HALF, Regime.HALF_TWOTHIRDS, Regime.TWOTHIRDS_ONE)


@dataclass(frozen=True)
class Alpha:
    value: float  # nan when SNR <= 1 or INR == 0 makes the exponent undefined
    tag: Regime


def classify(g: GaussParams) -> Regime:
    s, i = g.snr, g.inr
    if i <= s:
        if i * i < s:
            return Regime.A0_HALF
        if i**3 < s * s:
            return Regime.HALF_TWOTHIRDS
        return Regime.TWOTHIRDS_ONE
    return Regime.ONE_TWO if i <= s * s else Regime.TWO_INF


def alpha(g: GaussParams) -> Alpha:
    if g.snr > 1 and g.inr > 0:
        v = max(math.log(g.inr) / math.log(g.snr), 0.0)
    else:
        v = math.nan
    return Alpha(v, classify(g))


class CornerId(enum.Enum):
    R2_SUM = "R2_SUM"  # R2 bound meets the sum bound
    SUM_2R = "SUM_2R"  # 2R1+R2 bound meets the sum bound
    TWO_R_R1 = "TWO_R_R1"  # R1 bound meets the 2R1+R2 bound
    R1_SUM = "R1_SUM"  # R1 bound meets the sum bound
    R1_R2 = "R1_R2"  # both individual bounds (cross-only feedback, strong interference)


def valid_corners(g: GaussParams) -> list[CornerId]:
    if classify(g).weak:
        return [CornerId.R2_SUM, CornerId.SUM_2R, CornerId.TWO_R_R1]
    return [CornerId.R2_SUM, CornerId.R1_SUM, CornerId.R1_R2]


@dataclass(frozen=True)
class Layers:
    p: float = 0.0
    c: float = 0.0
    r: float = 0.0


@dataclass(frozen=True)
class PowerSplit:
    u1: Layers
    u2: Layers

    def __post_init__(self):
        for u in (self.u1, self.u2):
            if min(u.p, u.c, u.r) < 0 or u.p + u.c + u.r > 1 + 1e-12:
                raise ValueError(f"invalid power fractions {u}")

    @property
    def uses_relay(self) -> bool:
        return self.u1.r > 0 or self.u2.r > 0


@dataclass(frozen=True)
class RateSplit:
    """Per-layer rates; user 1's relay layer carries user 2's relay message."""

    u1: Layers
    u2: Layers

    def __post_init__(self):
        for u in (self.u1, self.u2):
            if min(u.p, u.c, u.r) < 0:
                raise ValueError(f"negative rate {u}")

    @property
    def r1(self) -> float:
        return self.u1.p + self.u1.c

    @property
    def r2(self) -> float:
        return self.u2.p + self.u2.c + self.u2.r


def _lg(x: float) -> float:
    return math.log2(x) if x > 0 else -math.inf


def _pos(x: float) -> float:
    return max(x, 0.0)


def _check(c: CornerId, g: GaussParams) -> Regime:
    reg = classify(g)
    if c in (CornerId.SUM_2R, CornerId.TWO_R_R1) and not reg.weak:
        raise RegimeMismatch(f"{c.value} needs INR <= SNR")
    if c in (CornerId.R1_SUM, CornerId.R1_R2) and reg.weak:
        raise RegimeMismatch(f"{c.value} needs INR > SNR")
    return reg


def _lam_p(g: GaussParams) -> float:
    # private power lands at the unintended receiver at the noise level
    return min(1.0, 1.0 / g.inr) if g.inr > 0 else 1.0


def power_split(c: CornerId, g: GaussParams) -> PowerSplit:
    c = CornerId(c)
    reg = _check(c, g)
    lp = _lam_p(g)
    if c is CornerId.SUM_2R and reg is Regime.HALF_TWOTHIRDS:
        u = Layers(p=lp, c=(1 - lp) / 2, r=(1 - lp) / 2)
        return PowerSplit(u, u)
    if c is CornerId.SUM_2R and reg is Regime.TWOTHIRDS_ONE:
        u = Layers(p=lp, c=1 - lp)
        return PowerSplit(u, u)
    if c in (CornerId.R2_SUM, CornerId.SUM_2R):
        if reg.weak:
            u = Layers(p=lp, r=1 - lp)
        else:
            u = Layers(r=1.0)
        return PowerSplit(u, u)
    if c is CornerId.TWO_R_R1:
        if reg is Regime.A0_HALF:
            return PowerSplit(Layers(p=1.0), Layers(p=lp))
        return PowerSplit(Layers(p=1.0), Layers())  # T2 stays silent
    if c is CornerId.R1_SUM and reg is Regime.TWO_INF:
        u = Layers(c=0.5, r=0.5)
        return PowerSplit(u, u)
    # R1_SUM below SNR^2, and R1_R2: both users send common data at full power
    u = Layers(c=1.0)
    return PowerSplit(u, u)


def rate_allocation(c: CornerId, g: GaussParams) -> RateSplit:
    c = CornerId(c)
    reg = _check(c, g)
    s, i = g.snr, g.inr
    i1 = max(i, 1.0)  # the private noise floor 1 + lam_p*INR never exceeds 2*max(INR, 1)
    rp = math.log2(1 + s / (2 * i1))

    if c is CornerId.SUM_2R and reg is Regime.HALF_TWOTHIRDS:
        rc = _pos(_lg(1 + i * i / s) - 2)
        rr = _pos(_lg(1 + s * s / i**3) - 2)
        return RateSplit(Layers(p=rp, c=rc, r=rr), Layers(p=rp, c=rc, r=rr))
    if c is CornerId.SUM_2R and reg is Regime.TWOTHIRDS_ONE:
        if s == 0:
            return RateSplit(Layers(), Layers())
        r1c = _pos(_lg(i * i / s) - LOG3)
        r2c = _pos(_lg(s / i) - math.log2(1.5)) if i > 0 else 0.0
        return RateSplit(Layers(p=rp, c=r1c), Layers(p=rp, c=r2c))
    if c in (CornerId.R2_SUM, CornerId.SUM_2R):
        if reg.weak:
            rr = _pos(_lg(i) - LOG3)
            return RateSplit(Layers(p=rp, r=rr), Layers(p=rp, r=rr))
        rr = math.log2(1 + i)
        return RateSplit(Layers(r=rr), Layers(r=rr))
    if c is CornerId.TWO_R_R1:
        if reg is Regime.A0_HALF:
            return RateSplit(Layers(p=_pos(_lg(s) - 1)), Layers(p=_pos(_lg(s / (i1 * i1)) - 1)))
        return RateSplit(Layers(p=math.log2(1 + s)), Layers())
    if c is CornerId.R1_SUM:
        if reg is Regime.TWO_INF:
            rr = _pos(_lg(i / max(s, 1.0) ** 2) - 1)
            rc = _pos(_lg(s) - 1)
            return RateSplit(Layers(c=rc, r=rr), Layers(c=rc, r=rr))
        return RateSplit(Layers(c=_pos(_lg(s))), Layers(c=math.log2(1 + i / s)))
    # R1_R2: symmetric common rates inside the two-user MAC at either receiver
    r = min(math.log2(1 + s), math.log2(1 + s + i) / 2)
    return RateSplit(Layers(c=r), Layers(c=r))


def mac_constraints(rs: RateSplit, ps: PowerSplit, g: GaussParams) -> list[tuple[str, float, float]]:
    """Every decoding constraint as (name, lhs bits, rhs bits)."""
    s, i = g.snr, g.inr
    rr = rs.u2.r  # the relay message originates at T2
    out = []
    for k, (own, oth, rown, roth) in (
        (1, (ps.u1, ps.u2, rs.u1, rs.u2)),
        (2, (ps.u2, ps.u1, rs.u2, rs.u1)),
    ):
        # the receiver decodes in whichever direction its relay copy arrives stronger:
        # its own transmitter's copy over the direct link, or the other's over the cross link
        p_relay = max(own.r * s, oth.r * i)
        noise = 1 + own.p * s + oth.p * i
        sig = [(rr, p_relay), (rown.c, own.c * s), (roth.c, oth.c * i)]
        for j, sub in enumerate(((0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)), start=1):
            lhs = sum(sig[t][0] for t in sub)
            rhs = math.log2(1 + sum(sig[t][1] for t in sub) / noise)
            out.append((f"D{k}.dec{j}", lhs, rhs))
    if ps.uses_relay or rr > 0:
        # T1 strips its own signal from the fed-back output and decodes T2's relay and common layers
        noise = 1 + ps.u2.p * i
        out.append(("relay_r", rr, math.log2(1 + ps.u2.r * i / noise)))
        out.append(("relay_c", rs.u2.c, math.log2(1 + ps.u2.c * i / noise)))
        out.append(("relay_rc", rr + rs.u2.c, math.log2(1 + (ps.u2.r + ps.u2.c) * i / noise)))
    out.append(("private1", rs.u1.p, math.log2(1 + ps.u1.p * s / (ps.u2.p * i + 1))))
    out.append(("private2", rs.u2.p, math.log2(1 + ps.u2.p * s / (ps.u1.p * i + 1))))
    return out


def mac_feasible(rs: RateSplit, ps: PowerSplit, g: GaussParams, slack: float = 1e-9) -> tuple[bool, list[str]]:
    if slack < 0:
        raise ValueError("slack must be nonnegative")
    bad = [name for name, lhs, rhs in mac_constraints(rs, ps, g) if lhs > rhs + slack]
    return not bad, bad


def achievable_pair(c: CornerId, g: GaussParams, slack: float = 1e-9) -> RatePair:
    c = CornerId(c)
    rs, ps = rate_allocation(c, g), power_split(c, g)
    ok, bad = mac_feasible(rs, ps, g, slack)
    if not ok:
        raise Infeasible(c.value, bad)
    return RatePair(rs.r1, rs.r2)


@dataclass(frozen=True)
class Candidate:
    label: str  # corner name, with "~" when users are swapped
    pair: RatePair
    feasible: bool


@dataclass(frozen=True)
class VertexGap:
    vertex: RatePair
    best: Candidate
    gap: float


def _candidates(family: str, g: GaussParams, slack: float) -> list[Candidate]:
    """Achievable pairs for the canonical orientation of a feedback family.

    The schemes relay through T1 only, so they need the D1 -> T1 link that
    the canonical orientation guarantees. Pairs that never relay are
    achievable with or without feedback, so their user-swapped versions are
    always available too.
    """
    base, mirror = [], []
    for c in valid_corners(g):
        rs, ps = rate_allocation(c, g), power_split(c, g)
        ok, _ = mac_feasible(rs, ps, g, slack)
        cand = Candidate(c.value, RatePair(rs.r1, rs.r2), ok)
        swapped = Candidate(c.value + "~", RatePair(rs.r2, rs.r1), ok)
        if ps.uses_relay:
            base.append(cand)
            mirror.append(swapped)
        else:
            base += [cand, swapped]
    if family == "single":
        return base
    if family == "both_direct":
        return base + mirror
    if family == "one_side":
        # with weak interference a cross link serves as well as the missing direct one
        return base + mirror if g.weak else base
    # cross-only: in the weak regime each cross link stands in for a direct link;
    # in the strong regime only the relay-free pairs remain
    if g.weak:
        return base + mirror
    return [c for c in base if not _relays(c.label, g)]


def _relays(label: str, g: GaussParams) -> bool:
    return power_split(CornerId(label.rstrip("~")), g).uses_relay


def candidates(f, g: GaussParams, slack: float = 1e-9) -> list[Candidate]:
    """Achievable pairs available to feedback state ``f``, in its own orientation."""
    family, mirrored = canonical(FeedbackState.parse(f))
    if family not in GAP_BOUND:
        raise Uncharacterized(str(f))
    cands = _candidates(family, g, slack)
    if mirrored:
        cands = [Candidate(c.label, RatePair(c.pair.r2, c.pair.r1), c.feasible) for c in cands]
    return cands


def certify_gap(f, g: GaussParams, slack: float = 1e-9) -> tuple[float, list[VertexGap]]:
    f = FeedbackState.parse(f)
    outer = gauss_outer_polytope(f, g)
    cands = candidates(f, g, slack)
    # only pairs that pass the decoding checks count; the origin is always achievable
    cands = [c for c in cands if c.feasible] + [Candidate("ORIGIN", RatePair(0.0, 0.0), True)]
    rows = [
        VertexGap(v, cands[k], gap)
        for v, k, gap in vertex_gaps(outer, [c.pair for c in cands])
    ]
    return max((r.gap for r in rows), default=0.0), rows


def gap_bound(f) -> float:
    f = FeedbackState.parse(f)
    family, _ = canonical(f)
    if family not in GAP_BOUND:
        raise Uncharacterized(str(f))  # no Gaussian outer region without feedback
    return GAP_BOUND[family]


def certify_sum_gap(f, g: GaussParams) -> float:
    f = FeedbackState.parse(f)
    if not f.has_direct:
        raise ValueError("sum-gap certificate needs a direct feedback link")
    pair = achievable_pair(CornerId.R2_SUM, g)
    return sum_rate_bound(g).value - (pair.r1 + pair.r2)


def sum_gap_bound(g: GaussParams) -> float:
    return SUM_GAP_BOUND if g.weak else SUM_GAP_BOUND_STRONG


SWEEP_COLUMNS = ("snr", "inr", "alpha", "state", "corner", "r1", "r2", "outer_c1", "outer_c2", "gap_bits", "feasible")


def sweep_rows(states, points, slack: float = 1e-9) -> list[dict]:
    """One row per (grid point, state, outer vertex); ``points`` yields (snr, inr, alpha)."""
    rows = []
    for (snr, inr, a), f in itertools.product(points, states):
        g = GaussParams(snr, inr)
        _, detail = certify_gap(f, g, slack)
        for d in detail:
            rows.append({
                "snr": snr, "inr": inr, "alpha": a, "state": str(FeedbackState.parse(f)),
                "corner": d.best.label, "r1": float(d.best.pair.r1), "r2": float(d.best.pair.r2),
                "outer_c1": float(d.vertex.r1), "outer_c2": float(d.vertex.r2),
                "gap_bits": d.gap, "feasible": d.best.feasible,
            })
    return rows
