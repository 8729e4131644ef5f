"""Brute-force search for the per-period max-norm contraction factor beta_u.

The averaged max-norm step with alpha = 0.5 is positively homogeneous
(scaling the start scales the whole trajectory) and commutes with quarter
turns, which map the square's edges onto each other.  Every nonzero start
therefore reduces to a point on the top edge {[t, 1] : t in [-1, 1]}
without changing any norm ratio, and sweeping that single edge bounds the
T-step contraction ratio from anywhere, up to grid resolution.

The sweep is embarrassingly parallel: disjoint t-ranges can be evaluated by
any number of workers and the final maximum is an order-insensitive
reduction (ties broken toward smaller t), so results are bit-identical for
every worker count.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .bounds import beta_l, pseudo_period
from .errors import OutOfRangeError
from .rotation import Angle, RotationOp, Vec2, _averaged_linf_step

# Four-decimal reference factors for common angles, reproduced by
# search_beta_u at the default grid_step of 1e-4.
REFERENCE_BETA_U: dict[Angle, float] = {
    Angle(1, 12): 0.8974,
    Angle(1, 6): 0.8211,
    Angle(1, 4): 0.7504,
    Angle(1, 3): 0.6830,
    Angle(1, 2): 0.5,
}

_REFINE_FACTOR = 10


@dataclass(frozen=True)
class BetaSearchResult:
    theta: Angle
    period: int
    beta_u: float
    argmax_start: Vec2
    grid_step: float


@dataclass(frozen=True)
class PeriodCheckReport:
    """Outcome of randomized two-sided per-period checks.

    Violations are counted, not raised: the report carries the extreme
    ratios observed so a caller can judge how close the bounds run.
    """

    theta: Angle
    period: int
    trials: int
    upper_violations: int
    lower_violations: int
    min_ratio: float
    max_ratio: float

    @property
    def passed(self) -> bool:
        return self.upper_violations == 0 and self.lower_violations == 0


def _period_ratio(c: float, s: float, period: int, t: float) -> float:
    # ||x_{1+T}||_inf / ||x_1||_inf from the edge start [t, 1]; the start
    # norm is exactly 1 there.
    x1, x2 = t, 1.0
    for _ in range(period):
        x1, x2 = _averaged_linf_step(c, s, 0.5, x1, x2)
    return max(abs(x1), abs(x2))


def _sweep(c: float, s: float, period: int, ts: list[float]) -> tuple[float, float]:
    best, best_t = -1.0, 0.0
    for t in ts:
        r = _period_ratio(c, s, period, t)
        if r > best:
            best, best_t = r, t
    return best, best_t


def search_beta_u(theta: Angle, grid_step: float = 1e-4, workers: int = 1) -> BetaSearchResult:
    """Sweep the top edge of the square and return the worst T-step ratio.

    The coarse sweep uses round(2 / grid_step) + 1 evenly spaced starts on
    [-1, 1]; a second pass at grid_step / 10 around the coarse argmax
    stabilizes the fourth decimal.  Requires theta in (0, pi/2] in lowest
    terms and grid_step <= 1e-3.
    """
    if theta.fraction > Fraction(1, 2):
        raise OutOfRangeError(f"contraction search needs theta in (0, pi/2]: got {theta}")
    if not 0.0 < grid_step <= 1e-3:
        raise ValueError(f"grid_step must lie in (0, 1e-3]: got {grid_step}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1: got {workers}")

    period = pseudo_period(theta)
    op = RotationOp(theta)
    c, s = op.cos_theta, op.sin_theta

    n = round(2.0 / grid_step)
    ts = [-1.0 + (2.0 * i) / n for i in range(n + 1)]

    if workers == 1:
        candidates = [_sweep(c, s, period, ts)]
    else:
        size = -(-len(ts) // workers)
        chunks = [ts[i : i + size] for i in range(0, len(ts), size)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            candidates = list(pool.map(lambda chunk: _sweep(c, s, period, chunk), chunks))

    best, best_t = -1.0, 0.0
    for r, t in candidates:
        # ties go to the smaller t so the reduction is order-insensitive
        if r > best or (r == best and t < best_t):
            best, best_t = r, t

    span = 2.0 / n
    fine = [best_t + span * j / _REFINE_FACTOR for j in range(-_REFINE_FACTOR, _REFINE_FACTOR + 1)]
    for t in fine:
        if not -1.0 <= t <= 1.0:
            continue
        r = _period_ratio(c, s, period, t)
        if r > best or (r == best and t < best_t):
            best, best_t = r, t

    return BetaSearchResult(theta, period, best, Vec2(best_t, 1.0), grid_step)


def verify_period_contraction(
    theta: Angle,
    beta_u: float,
    trials: int = 10_000,
    seed: int = 0,
    tol: float = 1e-6,
) -> PeriodCheckReport:
    """Check beta_l * ||x_i|| <= ||x_{i+T}|| <= beta_u * ||x_i|| on random runs.

    Each trial starts from a random direction scaled to the square, advances
    a random offset i - 1 so x_i sits at an arbitrary point of an actual
    trajectory, then takes one more pseudo-period.  Tolerance is absolute;
    starts are unit scale and max-norm iterates never grow.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1: got {trials}")
    period = pseudo_period(theta)
    lower = beta_l(theta)
    op = RotationOp(theta)
    c, s = op.cos_theta, op.sin_theta
    rng = random.Random(seed)

    upper_violations = 0
    lower_violations = 0
    min_ratio, max_ratio = float("inf"), float("-inf")
    for _ in range(trials):
        phi = rng.uniform(0.0, 2.0 * math.pi)
        x1, x2 = _unit_square_point(phi)
        offset = rng.randrange(1, 2 * period + 1)
        for _ in range(offset - 1):
            x1, x2 = _averaged_linf_step(c, s, 0.5, x1, x2)
        n_i = max(abs(x1), abs(x2))
        for _ in range(period):
            x1, x2 = _averaged_linf_step(c, s, 0.5, x1, x2)
        n_f = max(abs(x1), abs(x2))
        ratio = n_f / n_i
        min_ratio = min(min_ratio, ratio)
        max_ratio = max(max_ratio, ratio)
        if n_f > beta_u * n_i + tol:
            upper_violations += 1
        if n_f < lower * n_i - tol:
            lower_violations += 1

    return PeriodCheckReport(theta, period, trials, upper_violations, lower_violations, min_ratio, max_ratio)


def _unit_square_point(phi: float) -> tuple[float, float]:
    x1, x2 = math.cos(phi), math.sin(phi)
    m = max(abs(x1), abs(x2))
    return x1 / m, x2 / m
