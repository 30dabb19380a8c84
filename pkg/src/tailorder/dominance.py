"""Stochastic-dominance verification engines.

Monte-Carlo: simulate two weighted sums of iid copies on independent
component streams, compare empirical distribution functions on the merged
sample grid, and call a violation only when the gap dips below the sum of
the two distribution-free confidence radii (conservative by construction, so
a true dominance pair does not false-alarm).

Exact: for two weights (a, 1-a) the tail of the combination decomposes into
a product term plus two partial-overlap integrals against the base law,

    P(a X1 + (1-a) X2 > x) = tail(x)^2
        + int_0^x tail((x - a y)/(1-a)) dF(y)
        + int_0^x tail((x - (1-a) y)/a) dF(y),

computed here by substituting y = quantile(p) so the Stieltjes integrals
become ordinary integrals over p, handled by adaptive Gauss-Legendre
panels.  Atoms appear as flat stretches of the quantile and are split out as
explicit panel breakpoints, where the integrand is constant.

The pointwise sufficient condition is also scanned directly: for all
y, z >= 0 and 0 < eta <= theta <= 1/2 the more-balanced split must give the
larger two-point tail sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NotMajorizedError, QuadratureFailureError
from .majorization import as_weights, majorizes
from .rng import RngStream
from .stable import StableParams, sample_stable

__all__ = [
    "Ecdf",
    "Verdict",
    "DominanceReport",
    "dkw_epsilon",
    "mc_dominance_test",
    "sd_star_test",
    "QuadratureSpec",
    "adaptive_gauss_legendre",
    "exact_two_weight_tail",
    "SuffViolation",
    "suff_condition_scan",
    "FigureTable",
    "figure_data",
]


class Ecdf:
    """Right-continuous empirical distribution function of a sample."""

    def __init__(self, samples):
        self.values = np.sort(np.asarray(samples, dtype=float))
        self.n = self.values.size
        if self.n == 0:
            raise DomainError("ECDF needs a nonempty sample")

    def __call__(self, x):
        return np.searchsorted(self.values, np.asarray(x, dtype=float), side="right") / self.n


def dkw_epsilon(n: int, delta: float) -> float:
    """Distribution-free ECDF confidence radius sqrt(log(2/delta) / (2 n))."""
    if not (0.0 < delta < 1.0):
        raise DomainError("delta must lie in (0, 1)")
    return math.sqrt(math.log(2.0 / delta) / (2.0 * n))


class Verdict(str, Enum):
    CONSISTENT = "ConsistentWithSD"
    VIOLATION = "ViolationFound"
    INCONCLUSIVE = "Inconclusive"


class MaxViolation(NamedTuple):
    x: float
    gap: float


@dataclass
class DominanceReport:
    """ECDF comparison on the merged grid.

    ``gap`` holds F_hat_eta - F_hat_theta (or single-copy minus sum for the
    pooled test): dominance predicts it stays nonnegative, and a violation is
    declared only below -2 * dkw_eps.  Summaries clip the reported grid at
    the 99.99% empirical quantile to bound output sizes; the verdict always
    uses the full grid.
    """

    grid: np.ndarray
    gap: np.ndarray
    dkw_eps: float
    verdict: Verdict
    max_violation: MaxViolation | None = None
    labels: tuple[str, str] = ("eta", "theta")

    @property
    def band(self) -> float:
        return 2.0 * self.dkw_eps

    def to_dict(self, clip_quantile: float = 0.9999) -> dict:
        cut = np.quantile(self.grid, clip_quantile)
        keep = self.grid <= cut
        return {
            "verdict": self.verdict.value,
            "dkw_eps": self.dkw_eps,
            "band": self.band,
            "max_violation": None
            if self.max_violation is None
            else {"x": self.max_violation.x, "gap": self.max_violation.gap},
            "n_grid": int(self.grid.size),
            "clip_quantile": clip_quantile,
            "grid": self.grid[keep].tolist(),
            "gap": self.gap[keep].tolist(),
            "labels": list(self.labels),
        }


def _report(grid: np.ndarray, gap: np.ndarray, eps: float, labels) -> DominanceReport:
    band = 2.0 * eps
    worst = int(np.argmin(gap))
    if gap[worst] < -band:
        return DominanceReport(
            grid,
            gap,
            eps,
            Verdict.VIOLATION,
            MaxViolation(float(grid[worst]), float(gap[worst])),
            labels,
        )
    return DominanceReport(grid, gap, eps, Verdict.CONSISTENT, None, labels)


def _weighted_sum_sample(d, weights: np.ndarray, rng: RngStream, n: int, tag: int) -> np.ndarray:
    """sum_i w_i X_i with one independent substream per component."""
    total = np.zeros(n)
    for i, w in enumerate(weights):
        total += w * np.asarray(d.sample(rng.substream(tag, i), n), dtype=float)
    return total


def mc_dominance_test(
    d,
    theta,
    eta,
    n: int = 100_000,
    delta: float = 0.01,
    rng: RngStream | None = None,
) -> DominanceReport:
    """Monte-Carlo check that the eta-weighted sum is stochastically below
    the theta-weighted sum, for theta majorized by eta.

    ``d`` needs only a ``sample(rng, n)`` method (distributions and compound
    Poisson specs both qualify).  Raises NotMajorizedError when the weight
    pair is not ordered.
    """
    t = as_weights(theta)
    e = as_weights(eta)
    if not majorizes(t, e):
        raise NotMajorizedError("theta must be majorized by eta")
    if n < 1000:
        raise DomainError("n must be >= 1000")
    eps = dkw_epsilon(n, delta)
    rng = rng or RngStream(0)
    s_theta = _weighted_sum_sample(d, t, rng, n, tag=0)
    s_eta = _weighted_sum_sample(d, e, rng, n, tag=1)
    grid = np.unique(np.concatenate([s_theta, s_eta]))
    gap = Ecdf(s_eta)(grid) - Ecdf(s_theta)(grid)
    return _report(grid, gap, eps, ("eta", "theta"))


def sd_star_test(
    d,
    theta,
    n: int = 100_000,
    delta: float = 0.01,
    rng: RngStream | None = None,
) -> DominanceReport:
    """Monte-Carlo check of the pooled-versus-diversified special case:
    (sum theta_i) X_1 against sum theta_i X_i."""
    t = as_weights(theta)
    if n < 1000:
        raise DomainError("n must be >= 1000")
    eps = dkw_epsilon(n, delta)
    rng = rng or RngStream(0)
    pooled = float(t.sum()) * np.asarray(d.sample(rng.substream(0, 0), n), dtype=float)
    spread = _weighted_sum_sample(d, t, rng, n, tag=1)
    grid = np.unique(np.concatenate([pooled, spread]))
    gap = Ecdf(pooled)(grid) - Ecdf(spread)(grid)
    return _report(grid, gap, eps, ("pooled", "spread"))


# ---------------------------------------------------------------------------
# Adaptive Gauss-Legendre quadrature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-8
    max_intervals: int = 4096
    low_order: int = 10
    high_order: int = 21


def _gl_nodes(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def adaptive_gauss_legendre(
    f,
    a: float,
    b: float,
    quad: QuadratureSpec = QuadratureSpec(),
    breakpoints=(),
) -> float:
    """Integrate a vectorized f over [a, b] to the requested absolute tolerance.

    Each panel is estimated at two Gauss-Legendre orders; the difference is
    the local error, accepted against a share of the budget proportional to
    panel length, otherwise bisected.  Known breakpoints (atom plateaus)
    become initial panel edges.  Raises QuadratureFailureError when the panel
    budget runs out before the tolerance is met.
    """
    if not (b >= a):
        raise DomainError("need b >= a")
    if b == a:
        return 0.0
    edges = [a] + sorted(p for p in breakpoints if a < p < b) + [b]
    xl, wl = _gl_nodes(quad.low_order)
    xh, wh = _gl_nodes(quad.high_order)
    total_len = b - a

    def panel(lo: float, hi: float):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        fl = f(mid + half * xl)
        fh = f(mid + half * xh)
        il = half * float(np.dot(wl, fl))
        ih = half * float(np.dot(wh, fh))
        return ih, abs(ih - il)

    stack = [(edges[k], edges[k + 1]) for k in range(len(edges) - 1)]
    total = 0.0
    used = 0
    while stack:
        lo, hi = stack.pop()
        used += 1
        if used > quad.max_intervals:
            raise QuadratureFailureError(
                f"tolerance {quad.abs_tol} not met within {quad.max_intervals} panels"
            )
        est, err = panel(lo, hi)
        if err <= quad.abs_tol * max((hi - lo) / total_len, 1e-16) or (hi - lo) < 1e-15 * total_len:
            total += est
        else:
            mid = 0.5 * (lo + hi)
            stack.append((lo, mid))
            stack.append((mid, hi))
    return total


def exact_two_weight_tail(
    d, a: float, x: float, quad: QuadratureSpec = QuadratureSpec()
) -> float:
    """P(a X1 + (1-a) X2 > x) for iid X1, X2 ~ d, a in (0, 1), by quadrature.

    Works for any support: the decomposition into {both above x} plus the two
    one-below-x overlap integrals is exact, and the p-substitution integrates
    over quantiles so densityless parts (atoms) are handled by panel splits.
    """
    if not (0.0 < a < 1.0):
        raise DomainError("a must lie in (0, 1)")
    if not math.isfinite(x):
        raise DomainError("x must be finite")
    fx = float(d.cdf(x))
    tail_x = float(d.tail(x))
    term1 = tail_x * tail_x
    if fx <= 0.0:
        return min(1.0, term1)

    def overlap(weight_inner: float, weight_outer: float):
        def integrand(p):
            y = np.asarray(d.quantile(p), dtype=float)
            return np.asarray(d.tail((x - weight_inner * y) / weight_outer), dtype=float)

        return integrand

    breaks = []
    for loc, _mass in getattr(d, "atoms", lambda: [])():
        if loc <= x:
            lvl = float(d.cdf(loc))
            below = float(d.cdf(np.nextafter(loc, -np.inf)))
            breaks.extend([below, lvl])
    breaks = [p for p in breaks if 0.0 < p < fx]
    i1 = adaptive_gauss_legendre(overlap(a, 1.0 - a), 0.0, fx, quad, breaks)
    i2 = adaptive_gauss_legendre(overlap(1.0 - a, a), 0.0, fx, quad, breaks)
    return term1 + i1 + i2


# ---------------------------------------------------------------------------
# Pointwise sufficient-condition scan
# ---------------------------------------------------------------------------


class SuffViolation(NamedTuple):
    y: float
    z: float
    theta: float
    eta: float
    lhs: float
    rhs: float


def _default_share_pairs(k: int = 10) -> np.ndarray:
    shares = np.linspace(0.05, 0.5, k)
    out = [(th, et) for th in shares for et in shares if et <= th]
    return np.asarray(out)


def suff_condition_scan(
    d,
    y_grid=None,
    z_grid=None,
    share_pairs=None,
    tol: float = 1e-9,
) -> list[SuffViolation]:
    """Scan tail(y + z/(1-th)) + tail(y + z/th) >= tail(y + z/(1-et)) + tail(y + z/et)
    over a grid of y >= 0, z > 0 and share pairs 0 < et <= th <= 1/2.

    Returns the violating tuples (empty list: no violation found on the grid).
    """
    ys = np.concatenate([[0.0], np.logspace(-2, 2, 9)]) if y_grid is None else np.asarray(y_grid, dtype=float)
    zs = np.logspace(-2, 2, 9) if z_grid is None else np.asarray(z_grid, dtype=float)
    pairs = _default_share_pairs() if share_pairs is None else np.asarray(share_pairs, dtype=float)
    if np.any(ys < 0) or np.any(zs <= 0):
        raise DomainError("need y >= 0 and z > 0")
    if np.any((pairs <= 0) | (pairs > 0.5)) or np.any(pairs[:, 1] > pairs[:, 0]):
        raise DomainError("share pairs must satisfy 0 < eta <= theta <= 1/2")

    Y = ys[:, None, None]
    Z = zs[None, :, None]
    TH = pairs[None, None, :, 0]
    ET = pairs[None, None, :, 1]
    lhs = np.asarray(d.tail(Y + Z / (1.0 - TH)), dtype=float) + np.asarray(
        d.tail(Y + Z / TH), dtype=float
    )
    rhs = np.asarray(d.tail(Y + Z / (1.0 - ET)), dtype=float) + np.asarray(
        d.tail(Y + Z / ET), dtype=float
    )
    bad = lhs < rhs - tol * np.maximum(1.0, np.abs(rhs))
    out: list[SuffViolation] = []
    for iy, iz, ip in zip(*np.nonzero(bad)):
        out.append(
            SuffViolation(
                y=float(ys[iy]),
                z=float(zs[iz]),
                theta=float(pairs[ip, 0]),
                eta=float(pairs[ip, 1]),
                lhs=float(lhs[iy, iz, ip]),
                rhs=float(rhs[iy, iz, ip]),
            )
        )
    return out


# ---------------------------------------------------------------------------
# Figure reproduction data
# ---------------------------------------------------------------------------


@dataclass
class FigureTable:
    """Merged-grid ECDF pair for two weighted combinations of |X1|, |X2|."""

    x: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    weights: tuple[float, float, float, float]
    alpha: float
    beta: float
    n: int
    seed: int

    def min_gap(self) -> float:
        return float(np.min(self.f1 - self.f2))

    def rows(self):
        for k in range(self.x.size):
            yield self.x[k], self.f1[k], self.f2[k]


def figure_data(
    alpha: float,
    beta: float,
    weights,
    n: int = 10_000,
    seed: int = 0,
) -> FigureTable:
    """ECDF pair for Y1 = a1|X1| + a2|X2| and Y2 = b1|X1| + b2|X2|.

    X1, X2 are iid standard stable draws shared by both combinations, as in
    the underlying simulation study; (a1, a2, b1, b2) is the weight quadruple.
    """
    w = np.asarray(weights, dtype=float)
    if w.shape != (4,) or np.any(w < 0):
        raise DomainError("weights must be four nonnegative numbers (a1, a2, b1, b2)")
    params = StableParams(alpha, beta)
    rng = RngStream(seed)
    x1 = np.abs(sample_stable(params, rng.substream(0), n))
    x2 = np.abs(sample_stable(params, rng.substream(1), n))
    y1 = w[0] * x1 + w[1] * x2
    y2 = w[2] * x1 + w[3] * x2
    grid = np.unique(np.concatenate([y1, y2]))
    return FigureTable(
        x=grid,
        f1=Ecdf(y1)(grid),
        f2=Ecdf(y2)(grid),
        weights=(float(w[0]), float(w[1]), float(w[2]), float(w[3])),
        alpha=alpha,
        beta=beta,
        n=n,
        seed=seed,
    )
