"""Capacity regions of the two-user interference channel with partial output feedback.

Modules:
  rate_region  2-D polytopes from half-planes
  det_model    linear deterministic channel and its feedback regions
  det_sim      bit-exact block simulator of the deterministic schemes
  gauss_outer  Gaussian outer bounds with the correlation optimizer
  gauss_ach    Gaussian achievable pairs, decoding checks and gap certificates
  cli          command-line front end
"""
from .det_model import DetParams, FeedbackState, Uncharacterized
from .gauss_outer import GaussParams
from .rate_region import HalfPlane, RatePair, RatePolytope, build_polytope

__all__ = ["DetParams", "FeedbackState", "GaussParams", "HalfPlane", "RatePair", "RatePolytope",
           "Uncharacterized", "build_polytope"]
__version__ = "0.1.0"
