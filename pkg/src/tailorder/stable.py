"""Stable distributions: sampler, characteristic function, weighted-sum laws.

Parameterization is fixed to the characteristic function

    E exp(i t X) = exp{ i mu t - sigma^a |t|^a (1 - i beta sign(t) tan(pi a/2)) }   a != 1
    E exp(i t X) = exp{ i mu t - sigma |t| (1 + i beta (2/pi) sign(t) log|t|) }     a == 1

(no alternative "type 0" parameterization is offered).  Samples come from
the classic trigonometric representation on V ~ Uniform(-pi/2, pi/2) and
W ~ Exponential(1).  For weights summing to one, the weighted sum of iid
standard copies collapses to a closed-form law: a pure rescaling by
(sum w_i^a)^(1/a) when a != 1, and a shift by -(2 beta/pi) sum w_i log w_i
when a == 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, WeightError
from .rng import RngStream

__all__ = [
    "StableParams",
    "WeightedSumLaw",
    "sample_stable",
    "weighted_sum_law",
    "sd_classification",
    "characteristic_function",
    "AbsStable",
    "ALPHA_ONE_EPS",
]

# The (1-a)/a exponent in the a != 1 branch blows up near a = 1; the a = 1
# branch is exact, so route a small neighborhood there.
ALPHA_ONE_EPS = 1e-8


@dataclass(frozen=True)
class StableParams:
    """Stability alpha in (0, 2], skewness beta in [-1, 1], scale, shift."""

    alpha: float
    beta: float = 0.0
    sigma: float = 1.0
    mu: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.alpha <= 2.0):
            raise DomainError("alpha must lie in (0, 2]")
        if not (-1.0 <= self.beta <= 1.0):
            raise DomainError("beta must lie in [-1, 1]")
        if not (self.sigma > 0.0 and math.isfinite(self.sigma)):
            raise DomainError("sigma must be positive")
        if not math.isfinite(self.mu):
            raise DomainError("mu must be finite")

    @property
    def standard(self) -> bool:
        return self.sigma == 1.0 and self.mu == 0.0

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "sigma": self.sigma, "mu": self.mu}


def _is_alpha_one(alpha: float) -> bool:
    return abs(alpha - 1.0) < ALPHA_ONE_EPS


def sample_stable(params: StableParams, rng: RngStream, n: int) -> np.ndarray:
    """Draw n iid samples; deterministic under a fixed stream."""
    if n < 1:
        raise DomainError("sample size must be >= 1")
    a, b = params.alpha, params.beta
    V = rng.uniform(n, -np.pi / 2, np.pi / 2)
    W = rng.exponential(n)
    if _is_alpha_one(a):
        bv = np.pi / 2 + b * V
        x = (2.0 / np.pi) * (
            bv * np.tan(V) - b * np.log((np.pi / 2) * W * np.cos(V) / bv)
        )
        # Rescaling an alpha=1 law drags in a log(sigma) drift term.
        shift = (2.0 / np.pi) * b * params.sigma * math.log(params.sigma)
        return params.sigma * x + shift + params.mu
    th = math.tan(math.pi * a / 2.0)
    m = (1.0 + b * b * th * th) ** (1.0 / (2.0 * a))
    nn = -math.atan(b * th) / a
    arg = a * (V - nn)
    x = (
        m
        * np.sin(arg)
        / np.cos(V) ** (1.0 / a)
        * (np.cos(V - arg) / W) ** ((1.0 - a) / a)
    )
    return params.sigma * x + params.mu


@dataclass(frozen=True)
class WeightedSumLaw:
    """sum w_i X_i distributed as scale * X + shift for a standard copy X."""

    scale: float
    shift: float
    reference: StableParams

    def sample(self, rng: RngStream, n: int) -> np.ndarray:
        return self.scale * sample_stable(self.reference, rng, n) + self.shift


def weighted_sum_law(params: StableParams, weights) -> WeightedSumLaw:
    """Closed-form law of sum w_i X_i for iid standard copies.

    Weights must be nonnegative and sum to one; zero weights contribute
    nothing to either the power sum or the entropy-like shift (0 log 0 = 0).
    """
    if not params.standard:
        raise DomainError("weighted_sum_law is stated for the standard form (sigma=1, mu=0)")
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size < 1 or np.any(~np.isfinite(w)) or np.any(w < 0):
        raise WeightError("weights must be finite and nonnegative")
    if abs(float(w.sum()) - 1.0) > 1e-9 * max(1, w.size):
        raise WeightError("weights must sum to 1")
    if _is_alpha_one(params.alpha):
        pos = w > 0
        ent = float(np.sum(w[pos] * np.log(w[pos])))
        return WeightedSumLaw(scale=1.0, shift=-(2.0 * params.beta / np.pi) * ent, reference=params)
    scale = float(np.sum(np.power(w, params.alpha)) ** (1.0 / params.alpha))
    return WeightedSumLaw(scale=scale, shift=0.0, reference=params)


def sd_classification(alpha: float, beta: float) -> bool:
    """True iff the standard stable law makes balanced weighted sums
    stochastically larger: alpha == 1 with beta >= 0, or alpha < 1 with
    beta == 1 (one-sided positive support).  Exact float comparisons.
    """
    StableParams(alpha, beta)  # validate ranges
    return (alpha == 1.0 and beta >= 0.0) or (alpha < 1.0 and beta == 1.0)


def characteristic_function(params: StableParams, t):
    """Characteristic function at t (scalar or array)."""
    tt = np.asarray(t, dtype=float)
    scalar = tt.ndim == 0
    tt = np.atleast_1d(tt)
    a, b, s, mu = params.alpha, params.beta, params.sigma, params.mu
    out = np.empty(tt.shape, dtype=complex)
    nz = tt != 0
    tn = tt[nz]
    if _is_alpha_one(a):
        with np.errstate(all="ignore"):
            expo = 1j * mu * tn - s * np.abs(tn) * (
                1.0 + 1j * b * (2.0 / np.pi) * np.sign(tn) * np.log(np.abs(tn))
            )
    else:
        th = math.tan(math.pi * a / 2.0)
        expo = 1j * mu * tn - (s ** a) * np.abs(tn) ** a * (
            1.0 - 1j * b * np.sign(tn) * th
        )
    out[nz] = np.exp(expo)
    out[~nz] = 1.0 + 0.0j
    return complex(out[0]) if scalar else out


class AbsStable:
    """Sampler for |X| with X standard stable; duck-typed for the MC engines."""

    def __init__(self, alpha: float, beta: float):
        self.params = StableParams(alpha, beta)

    def sample(self, rng: RngStream, n: int) -> np.ndarray:
        return np.abs(sample_stable(self.params, rng, n))
