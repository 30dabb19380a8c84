"""Membership tests for the reciprocal-concave-tail distribution classes.

A nonnegative distribution with essential infimum 0 belongs to the stronger
class when the mapped tail g(x) = tail(1/x) is concave on (0, inf)
(equivalently, x^2 f(x) is nondecreasing when a density exists); it belongs
to the weaker, superadditivity-type class when
g(x1) + g(x2) >= g(x1 + x2) for all positive x1, x2.  Membership in the
stronger class guarantees that more-balanced weight vectors produce
stochastically larger weighted sums of iid copies; the weaker class
guarantees the pooled-versus-diversified special case.

``analytic_h_membership`` applies a hard-coded rule table for the parametric
zoo (certified results).  ``numeric_h_check`` / ``hstar_check`` scan the
defining inequalities on a grid and label the outcome as evidence, not
proof.  The closure constructors build new members from certified ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import distributions as dist
from .distributions import (
    ConvexTransformDistribution,
    DeductibleDistribution,
    Distribution,
    EmpiricalDistribution,
    MaxDistribution,
    MixtureDistribution,
    MonotoneMap,
    PowerTransformDistribution,
)
from .errors import ConditionFailedError, DomainError, UnsupportedFamilyError

__all__ = [
    "Membership",
    "Method",
    "Witness",
    "MembershipVerdict",
    "GridSpec",
    "analytic_h_membership",
    "numeric_h_check",
    "hstar_check",
    "verify_witness",
    "power_transform",
    "convex_transform",
    "max_of",
    "mixture",
    "deductible",
    "density_form_check",
    "empirical_h_probe",
    "is_certified_in",
]


class Membership(str, Enum):
    IN = "in"
    OUT = "out"
    UNKNOWN = "unknown"


class Method(str, Enum):
    ANALYTIC = "analytic-rule"
    NUMERIC = "numeric-grid"


@dataclass(frozen=True)
class Witness:
    """A point where one of the defining inequalities fails.

    kinds: ``midpoint-concavity`` (g((x1+x2)/2) < (g(x1)+g(x2))/2),
    ``pdf-monotonicity`` (x1 < x2 but x2^2 f(x2) < x1^2 f(x1)), and
    ``superadditivity`` (g(x1) + g(x2) < g(x1+x2)).  ``lhs``/``rhs`` record
    the two sides as evaluated, with the violated direction lhs >= rhs.
    """

    kind: str
    x1: float
    x2: float
    lhs: float
    rhs: float

    def to_dict(self) -> dict:
        return {"kind": self.kind, "x1": self.x1, "x2": self.x2, "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class MembershipVerdict:
    status: Membership
    method: Method
    rule_id: str | None = None
    witness: Witness | None = None

    @property
    def certified(self) -> bool:
        """Only an analytic-rule IN is certified; grid INs are evidence."""
        return self.method is Method.ANALYTIC and self.status is Membership.IN

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "method": self.method.value,
            "rule_id": self.rule_id,
            "certified": self.certified,
            "witness": self.witness.to_dict() if self.witness else None,
        }


@dataclass(frozen=True)
class GridSpec:
    """Log-spaced evaluation grid for the numeric checks.

    The mapped tail varies over many decades, hence the wide default range.
    Violations count only beyond ``tol * max(1, |value|)``, which guards the
    exactly-boundary-concave cases against float noise.
    """

    points: int = 1000
    lo: float = 1e-6
    hi: float = 1e6
    pair_samples: int = 10_000
    seed: int = 0
    tol: float = 1e-9

    def values(self) -> np.ndarray:
        if not (self.points >= 3 and 0 < self.lo < self.hi):
            raise DomainError("grid needs points >= 3 and 0 < lo < hi")
        return np.logspace(math.log10(self.lo), math.log10(self.hi), self.points)


# ---------------------------------------------------------------------------
# Analytic rule table
# ---------------------------------------------------------------------------


def _pareto_out_witness(d: dist.Pareto) -> Witness:
    # x^2 f(x) turns over at x = 2/(alpha-1); any ordered pair beyond it
    # decreases.  This stays well conditioned even for alpha barely above 1.
    x1 = 2.5 / (d.alpha - 1.0)
    x2 = 2.0 * x1
    h1 = x1 * x1 * d.pdf(x1)
    h2 = x2 * x2 * d.pdf(x2)
    return Witness(kind="pdf-monotonicity", x1=x1, x2=x2, lhs=h2, rhs=h1)


def analytic_h_membership(d: Distribution) -> MembershipVerdict:
    """Rule-table membership for the parametric zoo (strong class).

    Returns a certified IN for the known parameter regions, a certified OUT
    where a documented exclusion applies (infinite-mean failure for the
    shifted power law with exponent above 1), and UNKNOWN otherwise.
    Composites are rejected with UnsupportedFamilyError.
    """
    if isinstance(d, dist.Pareto):
        if d.alpha <= 1:
            return MembershipVerdict(Membership.IN, Method.ANALYTIC, "pareto:alpha<=1")
        return MembershipVerdict(
            Membership.OUT, Method.ANALYTIC, "pareto:finite-mean", _pareto_out_witness(d)
        )
    if isinstance(d, dist.Frechet):
        if d.alpha <= 1:
            return MembershipVerdict(Membership.IN, Method.ANALYTIC, "frechet:alpha<=1")
        return MembershipVerdict(Membership.UNKNOWN, Method.ANALYTIC, None)
    if isinstance(d, dist.AbsCauchy):
        return MembershipVerdict(Membership.IN, Method.ANALYTIC, "abs_cauchy:always")
    if isinstance(d, dist.LogCauchy):
        return MembershipVerdict(Membership.IN, Method.ANALYTIC, "log_cauchy:always")
    if isinstance(d, dist.InverseGamma):
        if d.alpha <= 1:
            return MembershipVerdict(Membership.IN, Method.ANALYTIC, "inverse_gamma:alpha<=1")
        return MembershipVerdict(Membership.UNKNOWN, Method.ANALYTIC, None)
    if isinstance(d, dist.FellerPareto):
        if d.gamma >= d.gamma1:
            return MembershipVerdict(Membership.IN, Method.ANALYTIC, "feller_pareto:gamma>=gamma1")
        return MembershipVerdict(Membership.UNKNOWN, Method.ANALYTIC, None)
    if isinstance(d, dist.LogPareto):
        if d.alpha <= 2:
            return MembershipVerdict(Membership.IN, Method.ANALYTIC, "log_pareto:alpha<=2")
        return MembershipVerdict(Membership.UNKNOWN, Method.ANALYTIC, None)
    if isinstance(d, dist.InverseBurr):
        if d.tau <= 1:
            return MembershipVerdict(Membership.IN, Method.ANALYTIC, "inverse_burr:tau<=1")
        return MembershipVerdict(Membership.UNKNOWN, Method.ANALYTIC, None)
    if isinstance(d, dist.Stoppa):
        if d.alpha <= 1 and d.beta >= 1:
            return MembershipVerdict(Membership.IN, Method.ANALYTIC, "stoppa:alpha<=1,beta>=1")
        return MembershipVerdict(Membership.UNKNOWN, Method.ANALYTIC, None)
    if isinstance(d, dist.PointMass):
        return MembershipVerdict(Membership.UNKNOWN, Method.ANALYTIC, None)
    raise UnsupportedFamilyError(
        f"analytic rules cover only the parametric zoo, not {type(d).__name__}"
    )


# ---------------------------------------------------------------------------
# Numeric grid checks
# ---------------------------------------------------------------------------


def _mapped_tail(d: Distribution, x: np.ndarray) -> np.ndarray:
    return np.asarray(d.tail(1.0 / x), dtype=float)


def numeric_h_check(d: Distribution, grid: GridSpec | None = None) -> MembershipVerdict:
    """Grid scan of the strong-class criteria; IN here is evidence, not proof.

    Tests midpoint concavity of g(x) = tail(1/x) over all adjacent grid pairs
    and a seeded sample of non-adjacent pairs, and, when a density is
    available on an atom-free law, that x^2 pdf(x) is nondecreasing along the
    grid.  The first violation in deterministic scan order becomes the
    witness.
    """
    grid = grid or GridSpec()
    xs = grid.values()
    g = _mapped_tail(d, xs)

    # Adjacent midpoint-concavity scan.
    mids = 0.5 * (xs[:-1] + xs[1:])
    gm = _mapped_tail(d, mids)
    chord = 0.5 * (g[:-1] + g[1:])
    bad = gm < chord - grid.tol * np.maximum(1.0, np.abs(chord))
    if bad.any():
        k = int(np.argmax(bad))
        return MembershipVerdict(
            Membership.OUT,
            Method.NUMERIC,
            "grid:midpoint-concavity",
            Witness("midpoint-concavity", float(xs[k]), float(xs[k + 1]), float(gm[k]), float(chord[k])),
        )

    # Density criterion where applicable (atoms invalidate it; the defining
    # inequality only involves the tail, so atom-carrying laws skip this).
    if d.continuous and d.has_density:
        h = xs * xs * np.asarray(d.pdf(xs), dtype=float)
        drop = h[1:] < h[:-1] - grid.tol * np.maximum(1.0, np.abs(h[:-1]))
        if drop.any():
            k = int(np.argmax(drop))
            return MembershipVerdict(
                Membership.OUT,
                Method.NUMERIC,
                "grid:pdf-monotonicity",
                Witness("pdf-monotonicity", float(xs[k]), float(xs[k + 1]), float(h[k + 1]), float(h[k])),
            )

    # Random non-adjacent pairs widen the net beyond neighboring points.
    prng = np.random.default_rng(grid.seed)
    ii = prng.integers(0, grid.points, grid.pair_samples)
    jj = prng.integers(0, grid.points, grid.pair_samples)
    keep = np.abs(ii - jj) > 1
    ii, jj = ii[keep], jj[keep]
    x1, x2 = xs[ii], xs[jj]
    gm = _mapped_tail(d, 0.5 * (x1 + x2))
    chord = 0.5 * (g[ii] + g[jj])
    bad = gm < chord - grid.tol * np.maximum(1.0, np.abs(chord))
    if bad.any():
        k = int(np.argmax(bad))
        return MembershipVerdict(
            Membership.OUT,
            Method.NUMERIC,
            "grid:pair-concavity",
            Witness("midpoint-concavity", float(x1[k]), float(x2[k]), float(gm[k]), float(chord[k])),
        )
    return MembershipVerdict(Membership.IN, Method.NUMERIC, "grid:no-violation")


def hstar_check(
    d: Distribution, grid: GridSpec | None = None, _block: int = 128
) -> MembershipVerdict:
    """Scan of the superadditivity inequality over the grid square."""
    grid = grid or GridSpec()
    xs = grid.values()
    g = _mapped_tail(d, xs)
    for start in range(0, grid.points, _block):
        rows = xs[start : start + _block]
        grow = g[start : start + _block]
        s = rows[:, None] + xs[None, :]
        gs = _mapped_tail(d, s)
        lhs = grow[:, None] + g[None, :]
        bad = lhs < gs - grid.tol * np.maximum(1.0, np.abs(gs))
        if bad.any():
            r, c = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return MembershipVerdict(
                Membership.OUT,
                Method.NUMERIC,
                "grid:superadditivity",
                Witness(
                    "superadditivity",
                    float(rows[r]),
                    float(xs[c]),
                    float(lhs[r, c]),
                    float(gs[r, c]),
                ),
            )
    return MembershipVerdict(Membership.IN, Method.NUMERIC, "grid:no-violation")


def verify_witness(d: Distribution, witness: Witness, tol: float = 1e-9) -> bool:
    """Re-evaluate the violated inequality at the witness point."""
    if witness.kind == "midpoint-concavity":
        gm = float(_mapped_tail(d, np.asarray([0.5 * (witness.x1 + witness.x2)]))[0])
        chord = 0.5 * float(
            _mapped_tail(d, np.asarray([witness.x1]))[0] + _mapped_tail(d, np.asarray([witness.x2]))[0]
        )
        return gm < chord - tol * max(1.0, abs(chord))
    if witness.kind == "pdf-monotonicity":
        h1 = witness.x1 ** 2 * float(d.pdf(witness.x1))
        h2 = witness.x2 ** 2 * float(d.pdf(witness.x2))
        return h2 < h1 - tol * max(1.0, abs(h1))
    if witness.kind == "superadditivity":
        lhs = float(
            _mapped_tail(d, np.asarray([witness.x1]))[0] + _mapped_tail(d, np.asarray([witness.x2]))[0]
        )
        rhs = float(_mapped_tail(d, np.asarray([witness.x1 + witness.x2]))[0])
        return lhs < rhs - tol * max(1.0, abs(rhs))
    raise DomainError(f"unknown witness kind {witness.kind!r}")


def is_certified_in(d: Distribution) -> bool:
    """Certified membership: analytic rule for the zoo, constructor flag else."""
    if d.h_certified:
        return True
    try:
        v = analytic_h_membership(d)
    except UnsupportedFamilyError:
        return False
    return v.certified


# ---------------------------------------------------------------------------
# Closure constructors
# ---------------------------------------------------------------------------


def power_transform(d: Distribution, beta: float) -> Distribution:
    """Distribution with cdf F^beta, beta >= 1; closed under the strong class."""
    if beta < 1:
        raise DomainError("power_transform requires beta >= 1")
    if not d.continuous:
        raise DomainError("power_transform requires a continuous base")
    out = PowerTransformDistribution(d, beta)
    out.h_certified = is_certified_in(d)
    return out


_DEFAULT_MAP_GRID = np.logspace(-6, 6, 241)


def convex_transform(
    d: Distribution, mmap: MonotoneMap, check_grid: np.ndarray | None = None
) -> Distribution:
    """Distribution of phi(X) for strictly increasing convex phi with phi(0)=0.

    The premises are validated on a grid: phi(0) = 0, phi strictly increasing,
    the inverse consistent with the forward map, and x -> 1/phi_inv(1/x)
    midpoint-concave (this is what transfers membership).  Violations raise
    ConditionFailedError naming the premise and a witness point.
    """
    if not d.continuous:
        raise DomainError("convex_transform requires a continuous base")
    xs = _DEFAULT_MAP_GRID if check_grid is None else np.asarray(check_grid, dtype=float)
    phi0 = float(np.asarray(mmap.forward(np.asarray(0.0)), dtype=float))
    if not abs(phi0) <= 1e-12:
        raise ConditionFailedError("phi(0)=0", (0.0, phi0))
    ys = np.asarray(mmap.forward(xs), dtype=float)
    inc = np.diff(ys) > 0
    if not inc.all():
        k = int(np.argmin(inc))
        raise ConditionFailedError("phi strictly increasing", (float(xs[k]), float(xs[k + 1])))
    back = np.asarray(mmap.inverse(ys), dtype=float)
    ok = np.abs(back - xs) <= 1e-8 * np.maximum(1.0, np.abs(xs))
    if not ok.all():
        k = int(np.argmin(ok))
        raise ConditionFailedError("inverse consistency", (float(xs[k]), float(back[k])))

    def psi(x: np.ndarray) -> np.ndarray:
        return 1.0 / np.asarray(mmap.inverse(1.0 / x), dtype=float)

    p = psi(xs)
    mids = 0.5 * (xs[:-1] + xs[1:])
    pm = psi(mids)
    chord = 0.5 * (p[:-1] + p[1:])
    concave = pm >= chord - 1e-9 * np.maximum(1.0, np.abs(chord))
    if not concave.all():
        k = int(np.argmin(concave))
        raise ConditionFailedError(
            "1/phi_inv(1/x) midpoint-concave", (float(xs[k]), float(xs[k + 1]), float(pm[k]), float(chord[k]))
        )
    out = ConvexTransformDistribution(d, mmap)
    out.h_certified = is_certified_in(d)
    return out


def max_of(d1: Distribution, d2: Distribution) -> Distribution:
    """Distribution of max(X, Y) for independent X ~ d1, Y ~ d2."""
    if not (d1.continuous and d2.continuous):
        raise DomainError("max_of requires continuous inputs")
    out = MaxDistribution(d1, d2)
    out.h_certified = is_certified_in(d1) and is_certified_in(d2)
    return out


def mixture(weights, ds) -> Distribution:
    """Mixture sum w_i F_i; weights nonnegative and summing to 1 (1e-12)."""
    out = MixtureDistribution(weights, list(ds))
    out.h_certified = all(is_certified_in(d) for d in ds)
    return out


def deductible(d: Distribution, c: float) -> Distribution:
    """Distribution of max(X - c, 0); atom of mass F(c) at zero."""
    if not c > 0:
        raise DomainError("deductible requires c > 0")
    out = DeductibleDistribution(d, c)
    out.h_certified = is_certified_in(d)
    return out


# ---------------------------------------------------------------------------
# Evidence helpers
# ---------------------------------------------------------------------------


def density_form_check(
    d: Distribution, tail_index: float, grid: GridSpec | None = None
) -> bool:
    """Evidence for the regularly-varying-density rule.

    True when tail_index <= 1 and l(x) = x^(tail_index + 1) * pdf(x) is
    nondecreasing along the grid, which implies x^2 pdf(x) is too.
    """
    if tail_index > 1:
        return False
    grid = grid or GridSpec()
    xs = grid.values()
    ell = np.power(xs, tail_index + 1.0) * np.asarray(d.pdf(xs), dtype=float)
    return bool(np.all(ell[1:] >= ell[:-1] - grid.tol * np.maximum(1.0, np.abs(ell[:-1]))))


def empirical_h_probe(
    samples, grid: GridSpec | None = None, delta: float = 0.01
) -> MembershipVerdict:
    """Heuristic membership probe on a sampled tail (conjecture territory).

    Builds a piecewise-linear interpolation of the empirical distribution,
    anchors it at 0, and runs the numeric check with the tolerance inflated
    to twice the distribution-free ECDF confidence radius so that sampling
    noise does not masquerade as concavity failure.  Evidence only: no claim
    is made either way beyond the grid and the sample.
    """
    xs = np.asarray(samples, dtype=float)
    if np.any(xs < 0):
        raise DomainError("probe expects nonnegative samples")
    eps = math.sqrt(math.log(2.0 / delta) / (2.0 * xs.size))
    base = grid or GridSpec()
    # Restrict to the observed range: outside it the interpolant is flat.
    lo = max(base.lo, 1.0 / max(float(xs.max()), base.lo))
    hi = min(base.hi, 1.0 / max(float(np.partition(xs, 10)[10]), 1.0 / base.hi))
    if not lo < hi:
        lo, hi = base.lo, base.hi
    probe_grid = GridSpec(
        points=base.points,
        lo=lo,
        hi=hi,
        pair_samples=base.pair_samples,
        seed=base.seed,
        tol=max(base.tol, 2.0 * eps),
    )
    emp = EmpiricalDistribution(xs, anchor_low=0.0)
    return numeric_h_check(emp, probe_grid)
