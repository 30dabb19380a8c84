"""Majorization order on nonnegative weight vectors.

A vector theta is dominated by eta in majorization order (theta is "more
balanced") when both have the same total and every ascending partial sum of
theta dominates the corresponding partial sum of eta.  Finite chains of
T-transforms (pairwise averaging steps) generate the order, and this module
constructs such chains explicitly, together with a randomized prober for
Schur-concavity of black-box functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import DomainError, LengthMismatchError, NotMajorizedError
from .rng import RngStream

__all__ = [
    "TTransform",
    "as_weights",
    "majorizes",
    "t_transform_chain",
    "schur_concavity_probe",
    "SchurViolation",
]

_SUM_RTOL = 1e-9  # per spec: scaled by n and by the magnitude of the sums


@dataclass(frozen=True)
class TTransform:
    """Averaging step mixing coordinates i and j with weight lam in [0, 1].

    Applying to v replaces (v_i, v_j) by
    (lam*v_i + (1-lam)*v_j, (1-lam)*v_i + lam*v_j); the sum is unchanged and
    the result is majorized by the input.
    """

    i: int
    j: int
    lam: float

    def __post_init__(self):
        if self.i == self.j:
            raise DomainError("T-transform needs two distinct indices")
        if not (0.0 <= self.lam <= 1.0):
            raise DomainError("T-transform weight must lie in [0, 1]")

    def apply(self, v: Sequence[float]) -> np.ndarray:
        out = np.array(v, dtype=float)
        vi, vj = out[self.i], out[self.j]
        out[self.i] = self.lam * vi + (1.0 - self.lam) * vj
        out[self.j] = (1.0 - self.lam) * vi + self.lam * vj
        return out


def as_weights(v) -> np.ndarray:
    """Validate a weight vector: finite, nonnegative, length >= 2."""
    w = np.asarray(v, dtype=float)
    if w.ndim != 1 or w.size < 2:
        raise DomainError("weight vector must be 1-D with length >= 2")
    if np.any(~np.isfinite(w)) or np.any(w < 0):
        raise DomainError("weights must be finite and nonnegative")
    return w


def majorizes(theta, eta, rtol: float = _SUM_RTOL) -> bool:
    """True iff theta is dominated by eta in majorization order.

    Equal sums within ``rtol * n`` (relative to the common magnitude) and
    every ascending partial sum of theta at least that of eta, with the same
    slack against float noise.
    """
    t = as_weights(theta)
    e = as_weights(eta)
    if t.size != e.size:
        raise LengthMismatchError("vectors must have equal length")
    n = t.size
    scale = max(1.0, abs(float(t.sum())), abs(float(e.sum())))
    tol = rtol * n * scale
    if abs(float(t.sum()) - float(e.sum())) > tol:
        return False
    ct = np.cumsum(np.sort(t))
    ce = np.cumsum(np.sort(e))
    return bool(np.all(ct[:-1] >= ce[:-1] - tol))


def t_transform_chain(eta, theta, atol: float = 1e-11) -> list[TTransform]:
    """Chain of at most n-1 T-transforms carrying eta to theta coordinatewise.

    Classical reduction: at each step the current vector is compared with the
    target in sorted view, one averaging step moves mass from a coordinate
    still above its target to one still below (re-indexed to the original
    positions), and at least one coordinate is matched exactly.  Raises
    NotMajorizedError unless ``majorizes(theta, eta)``.
    """
    e = as_weights(eta)
    t = as_weights(theta)
    if t.size != e.size:
        raise LengthMismatchError("vectors must have equal length")
    if not majorizes(t, e):
        raise NotMajorizedError("theta is not majorized by eta")
    scale = max(1.0, float(np.max(np.abs(e))))
    tol = atol * scale
    current = e.copy()
    chain: list[TTransform] = []
    for _ in range(t.size - 1):
        diff = current - t
        if np.max(np.abs(diff)) <= tol:
            break
        over = np.flatnonzero(diff > tol)
        under = np.flatnonzero(diff < -tol)
        if over.size == 0 or under.size == 0:
            break
        pair = _pick_pair(current, diff, over, under, tol)
        if pair is None:  # pragma: no cover - excluded by majorization
            raise NotMajorizedError("no feasible averaging step; inputs inconsistent")
        i, j = pair
        delta = min(diff[i], -diff[j])
        gap = current[i] - current[j]
        lam = 0.0 if delta >= gap else 1.0 - delta / gap
        step = TTransform(i=int(i), j=int(j), lam=float(lam))
        current = step.apply(current)
        chain.append(step)
    if np.max(np.abs(current - t)) > 1e-9 * scale:  # pragma: no cover
        raise NotMajorizedError("chain construction failed to reach the target")
    return chain


def _pick_pair(current, diff, over, under, tol):
    """Feasible (source, sink) pair: the needed transfer fits one T-transform.

    Preference: the largest current value among sources and the smallest
    among sinks (ties to lowest index); fall back to an exhaustive scan.
    """
    i = over[np.argmax(current[over])]
    j = under[np.argmin(current[under])]
    if current[i] - current[j] >= min(diff[i], -diff[j]) - tol:
        return i, j
    for i in over:
        for j in under:
            if current[i] - current[j] >= min(diff[i], -diff[j]) - tol:
                return i, j
    return None


class SchurViolation(NamedTuple):
    theta: np.ndarray
    eta: np.ndarray
    f_theta: float
    f_eta: float


def schur_concavity_probe(
    f: Callable[[np.ndarray], float],
    n: int,
    trials: int,
    rng: RngStream,
    tol: float = 1e-9,
    scale: float = 1.0,
) -> list[SchurViolation]:
    """Randomized search for Schur-concavity failures of ``f`` on R^n_+.

    Each trial draws eta uniformly from [0, scale]^n and theta from eta by a
    random T-transform (so theta is majorized by eta); a violation is
    recorded whenever f(theta) < f(eta) - tol * max(1, |f(eta)|).  An empty
    list means no violation was found, which is evidence, not proof.
    """
    if n < 2:
        raise DomainError("need n >= 2")
    violations: list[SchurViolation] = []
    for _ in range(trials):
        eta = rng.uniform(n, 0.0, scale)
        i, j = rng.integers(0, n, 2)
        while j == i:
            j = int(rng.integers(0, n))
        lam = float(rng.uniform(1)[0])
        theta = TTransform(int(i), int(j), lam).apply(eta)
        fe = float(f(eta))
        ft = float(f(theta))
        if ft < fe - tol * max(1.0, abs(fe)):
            violations.append(SchurViolation(theta, eta, ft, fe))
    return violations
