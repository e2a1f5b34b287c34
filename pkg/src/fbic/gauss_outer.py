"""Outer bounds for the symmetric Gaussian interference channel with feedback.

All quantities are in bits (log base 2). SNR and INR are linear received
power ratios of the direct and cross links.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .det_model import FeedbackState, Uncharacterized, canonical
from .rate_region import HalfPlane, RatePolytope, build_polytope

GRID_POINTS = 1024
RHO_TOL = 1e-10
INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class GaussParams:
    snr: float
    inr: float

    def __post_init__(self):
        for v in (self.snr, self.inr):
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"SNR/INR must be finite and nonnegative, got {self}")

    @classmethod
    def from_db(cls, snr_db: float, inr_db: float) -> "GaussParams":
        return cls(10 ** (snr_db / 10), 10 ** (inr_db / 10))

    @property
    def weak(self) -> bool:
        return self.inr <= self.snr


@dataclass(frozen=True)
class RhoOpt:
    rho_star: float
    value: float
    iterations: int

    def to_dict(self) -> dict:
        return {"rho_star": self.rho_star, "value_bits": self.value}


def sum_objective(snr: float, inr: float, rho):
    a = 1 - rho**2
    return np.log2(1 + a * snr / (1 + a * inr)) + np.log2(1 + snr + inr + 2 * rho * np.sqrt(snr * inr))


def two_r1_r2_objective(snr: float, inr: float, rho):
    cross = 2 * rho * np.sqrt(snr * inr)
    third = 1 + inr + (snr - (1 + rho**2) * inr + cross) / (1 + inr)
    return sum_objective(snr, inr, rho) + np.log2(np.maximum(third, 1e-300))


def _golden_max(f: Callable[[float], float], a: float, b: float, tol: float = RHO_TOL) -> tuple[float, float, int]:
    c, d = b - INV_PHI * (b - a), a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while b - a > tol:
        it += 1
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x), it


def maximize_rho(objective, g: GaussParams) -> RhoOpt:
    """Supremum over rho in [0, 1]: coarse grid, then golden-section around the best cell."""
    grid = np.linspace(0.0, 1.0, GRID_POINTS)
    vals = objective(g.snr, g.inr, grid)
    k = int(np.argmax(vals))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, GRID_POINTS - 1)]
    f = lambda r: float(objective(g.snr, g.inr, r))
    x, fx, it = _golden_max(f, lo, hi)
    # the grid point (including either endpoint) wins if refinement found nothing better
    if vals[k] >= fx:
        x, fx = float(grid[k]), float(vals[k])
    return RhoOpt(float(x), float(fx), it)


def sum_rate_bound(g: GaussParams) -> RhoOpt:
    return maximize_rho(sum_objective, g)


def two_r1_r2_bound(g: GaussParams) -> RhoOpt:
    return maximize_rho(two_r1_r2_objective, g)


def r1_bound_missing_d2t2(g: GaussParams) -> float:
    return math.log2(1 + g.snr)


def cross_only_sum_bound(g: GaussParams) -> float:
    return 2 * math.log2(1 + g.snr)


def cutset_bound(g: GaussParams) -> float:
    return math.log2(1 + g.snr + g.inr)


def gauss_outer_polytope(f, g: GaussParams) -> RatePolytope:
    f = FeedbackState.parse(f)
    family, mirrored = canonical(f)
    if family == "none":
        # no-feedback Gaussian region is outside the scope of these bounds
        raise Uncharacterized(str(f))
    cut = cutset_bound(g)
    s = sum_rate_bound(g).value
    r1 = r1_bound_missing_d2t2(g)
    if family == "both_direct":
        planes = [HalfPlane(1, 0, cut), HalfPlane(0, 1, cut), HalfPlane(1, 1, s)]
    elif family in ("one_side", "single"):
        planes = [HalfPlane(1, 0, r1), HalfPlane(0, 1, cut), HalfPlane(1, 1, s)]
        if family == "single":
            planes.append(HalfPlane(2, 1, two_r1_r2_bound(g).value))
    else:  # cross
        planes = [HalfPlane(1, 0, r1), HalfPlane(0, 1, r1), HalfPlane(1, 1, s), HalfPlane(1, 1, cross_only_sum_bound(g))]
    poly = build_polytope(planes)
    return poly.reflect() if mirrored else poly
