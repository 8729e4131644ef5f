"""Closed-form per-iteration upper bounds for the averaged rotation iteration.

Every evaluator returns a BoundCurve aligned index-for-index with a
Trajectory: values[i] bounds the distance to the fixed point at iterate
k = i + 1, and values[0] always equals the initial distance (squared, for
the mean-square noise bound).  Bounds exist only for constant step sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidAlphaError,
    MissingBetaUError,
    OutOfRangeError,
    UnstableError,
    UnsupportedAlphaError,
)
from .rotation import Angle, sin_cos_pi, tan_pi

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BoundCurve:
    """Upper-bound values per iterate, with the parameters that produced them.

    `initial` is D = dist(x_1, 0), or D^2 when `squared` is set (the noise
    bound controls the expected squared norm).  `kind` names the formula
    used, which depends on the norm and the angle range.
    """

    kind: str
    theta: Angle
    alpha: float
    initial: float
    values: tuple[float, ...]
    squared: bool = False
    a_var: float | None = None
    b_var: float | None = None


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise InvalidAlphaError(f"alpha must lie in (0, 1): got {alpha}")


def _check_k_max(k_max: int) -> None:
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1: got {k_max}")


def mu(alpha: float, theta: Angle) -> float:
    """Exact one-step contraction factor of the squared Euclidean norm.

    mu = 1 - 2*alpha + 2*alpha^2 + 2*alpha*(1 - alpha)*cos(theta), which is
    also (alpha - 1)^2 + 2*alpha*(1 - alpha)*cos(theta) + alpha^2.  Strictly
    below 1 for theta in (0, 2*pi).
    """
    _check_alpha(alpha)
    _, c = sin_cos_pi(theta.fraction)
    return 1.0 - 2.0 * alpha + 2.0 * alpha * alpha + 2.0 * alpha * (1.0 - alpha) * c


def l2_bound(theta: Angle, alpha: float, d: float, k_max: int) -> BoundCurve:
    """Euclidean bound mu^((k-1)/2) * D; tight (the recursion is exact)."""
    _check_alpha(alpha)
    _check_k_max(k_max)
    if d < 0.0:
        raise ValueError(f"initial distance must be >= 0: got {d}")
    g = mu(alpha, theta)
    values = tuple(g ** ((k - 1) / 2) * d for k in range(1, k_max + 1))
    return BoundCurve("l2", theta, alpha, d, values)


def optimal_alpha_l2(theta: Angle) -> tuple[float, float]:
    """Minimizer of the per-step factor and its value: (0.5, (1 + cos(theta)) / 2)."""
    _, c = sin_cos_pi(theta.fraction)
    return 0.5, (1.0 + c) / 2.0


def pseudo_period(theta: Angle) -> int:
    """ceil(q/p) for theta = (p/q)*pi in (0, pi/2].

    The number of max-norm steps after which the iterate has provably swept
    past a corner of its square, so the per-period contraction applies.
    """
    if theta.fraction > _HALF:
        raise OutOfRangeError(f"pseudo-period is defined for theta in (0, pi/2]: got {theta}")
    return -(-theta.q // theta.p)


def beta_l(theta: Angle) -> float:
    """Closed-form per-period lower bound (1 + tan(pi/4 - theta/2)) / 2.

    Valid for theta in (0, pi/2]; the iterate cannot contract by more than
    this factor over one pseudo-period.
    """
    if theta.fraction > _HALF:
        raise OutOfRangeError(f"per-period lower bound needs theta in (0, pi/2]: got {theta}")
    return (1.0 + tan_pi(Fraction(1, 4) - theta.fraction / 2)) / 2.0


def linf_bound(
    theta: Angle,
    alpha: float,
    d: float,
    k_max: int,
    beta_u: float | None = None,
) -> BoundCurve:
    """Max-norm bound, dispatched on the angle range.

    theta = pi:            |1 - 2*alpha|^(k-1) * D, any alpha in (0, 1).
    theta = pi/2:          0.5^floor((k-1)/2) * D, alpha = 0.5 only.
    theta in (0, pi/2):    beta_u^floor((k-1)/T) * D with T the
                           pseudo-period; alpha = 0.5 only, and the
                           per-period factor beta_u must be supplied (see
                           kmrot.beta_search).
    theta in (pi/2, pi):   ((1 + tan(3*pi/4 - theta)) / 2)^(k-1) * D,
                           alpha = 0.5 only.
    theta in (pi, 2*pi):   evaluated at the mirror angle 2*pi - theta.
    """
    _check_alpha(alpha)
    _check_k_max(k_max)
    if d < 0.0:
        raise ValueError(f"initial distance must be >= 0: got {d}")
    effective = theta if theta.fraction <= 1 else theta.mirrored()
    f = effective.fraction

    if f == 1:
        base = abs(1.0 - 2.0 * alpha)
        values = tuple(base ** (k - 1) * d for k in range(1, k_max + 1))
        return BoundCurve("linf-pi", theta, alpha, d, values)

    if alpha != 0.5:
        raise UnsupportedAlphaError(
            f"the max-norm bound for theta = {theta} is only derived for alpha = 0.5: got {alpha}"
        )

    if f == _HALF:
        values = tuple(0.5 ** ((k - 1) // 2) * d for k in range(1, k_max + 1))
        return BoundCurve("linf-half-pi", theta, alpha, d, values)

    if f < _HALF:
        if beta_u is None:
            raise MissingBetaUError(
                f"theta = {theta} needs a per-period contraction factor beta_u; "
                "run the contraction search or pass a known value"
            )
        if not 0.0 < beta_u < 1.0:
            raise ValueError(f"beta_u must lie in (0, 1): got {beta_u}")
        period = pseudo_period(effective)
        values = tuple(beta_u ** ((k - 1) // period) * d for k in range(1, k_max + 1))
        return BoundCurve("linf-period", theta, alpha, d, values)

    factor = (1.0 + tan_pi(Fraction(3, 4) - f)) / 2.0
    values = tuple(factor ** (k - 1) * d for k in range(1, k_max + 1))
    return BoundCurve("linf-step", theta, alpha, d, values)


def noise_bound(
    theta: Angle,
    alpha: float,
    d_sq: float,
    a: float,
    b: float,
    k_max: int,
) -> BoundCurve:
    """Mean-square bound under zero-mean noise with affine second moment.

    With rho = mu + alpha^2 * b, values[k] = rho^(k-1) * D^2
    + a * alpha^2 * (1 - rho^(k-1)) / (1 - rho).  Requires rho < 1; for
    b > 0 that means b < (1 - mu) / alpha^2.  Values bound the expected
    squared Euclidean norm, not the norm itself.
    """
    _check_k_max(k_max)
    if d_sq < 0.0:
        raise ValueError(f"initial squared distance must be >= 0: got {d_sq}")
    if a < 0.0 or b < 0.0:
        raise ValueError(f"noise parameters must be >= 0: a={a}, b={b}")
    m = mu(alpha, theta)
    rho = m + alpha * alpha * b
    if rho >= 1.0:
        raise UnstableError(
            f"mu + alpha^2*b = {rho} >= 1; the noise series diverges "
            f"(need b < {(1.0 - m) / (alpha * alpha)})"
        )
    tail = a * alpha * alpha / (1.0 - rho)
    values = []
    for k in range(1, k_max + 1):
        rk = rho ** (k - 1)
        values.append(rk * d_sq + tail * (1.0 - rk))
    return BoundCurve("l2-noise", theta, alpha, d_sq, tuple(values), squared=True, a_var=a, b_var=b)
