"""Closed-form building blocks: the edge law base, its inverse, psi and lambda,
and the two upper bounds for p_c(T_d) that predate the quartic bound.
"""

from __future__ import annotations

import math

# Previously published value of the renewal-theory bound at d = 2.
FMRT_D2 = 0.720836


def check_degree(d: int) -> int:
    if isinstance(d, bool) or int(d) != d or d < 2:
        raise ValueError(f"degree d must be an integer >= 2, got {d!r}")
    return int(d)


def check_probability(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p!r}")
    return p


def check_branch_ratio(b: float, d: int | None = None) -> float:
    """Validate b against [0, 1/d] (or [0, 1/2], the union over all d >= 2)."""
    b = float(b)
    upper = 0.5 if d is None else 1.0 / d
    if not 0.0 <= b <= upper:
        raise ValueError(f"branch ratio must lie in [0, {upper}], got {b!r}")
    return b


def beta(d: int, p: float) -> float:
    """Probability that an awake frog ever visits a fixed neighbouring vertex.

    Uses the rationalised form ``2p / ((d+1) + sqrt((d+1)^2 - 4dp^2))`` which
    equals ``((d+1) - sqrt(...)) / (2dp)`` but keeps full relative accuracy as
    ``p -> 0`` and gives 0 at ``p = 0`` without a special case.
    """
    d = check_degree(d)
    p = check_probability(p)
    return 2.0 * p / ((d + 1) + math.sqrt((d + 1) ** 2 - 4 * d * p * p))


def beta_inverse(d: int, v: float) -> float:
    """The unique p in [0, 1] with ``beta(d, p) == v``."""
    d = check_degree(d)
    v = check_branch_ratio(v, d)
    # Exact value is <= 1; rounding at v = 1/d can overshoot by an ulp.
    return min(1.0, (d + 1) * v / (1.0 + d * v * v))


def psi(b: float) -> float:
    b = check_branch_ratio(b)
    return math.sqrt(b**4 - 4.0 * b + 4.0)


def lambda_growth(b: float) -> float:
    """Exponential growth rate of phi_n(b), the larger characteristic root."""
    b = check_branch_ratio(b)
    return 0.5 * b * (2.0 - b * b + psi(b))


def ub_original(d: int) -> float:
    d = check_degree(d)
    return (d + 1) / (2 * d)


def ub_fmrt(d: int) -> float:
    """Renewal-theory upper bound; the tabulated constant at d = 2.

    With ``a = 7d - 1`` and ``s = sqrt(a^2 - 14)`` the published quotient is
    rewritten using ``a - s = 14 / (a + s)`` so that neither numerator nor
    denominator is a difference of nearly equal numbers.
    """
    d = check_degree(d)
    if d == 2:
        return FMRT_D2
    a = 7 * d - 1
    s = math.sqrt(a * a - 14)
    return 14 * (d + 1) / (4 * a + 14 * (7 * d - 2) / (a + s))


def classic_bounds(d: int) -> tuple[float, float]:
    """Return ``(ub_original, ub_fmrt)`` for degree ``d``."""
    return ub_original(d), ub_fmrt(d)
