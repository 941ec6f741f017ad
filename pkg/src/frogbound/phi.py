"""The child-probability sequence phi_n(b) and the functions built from it.

phi_n(b) is the probability that a vertex n levels below x in the d-ary
subtree becomes a child of x in the embedded branching process, when every
directed edge u -> w is open with probability b ** dist(u, w).  Three
equivalent evaluations are provided (the inductive definition, the
second-order recurrence, and the closed formula) so they can check each other.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .analytic import beta, check_branch_ratio, check_degree, lambda_growth, psi

PHI_DIRECT_MAX_N = 2000
# Above this n, f_n goes through the rescaled log to avoid underflow.
LOG_PATH_MIN_N = 50


class PhiForm(enum.Enum):
    DIRECT = "direct"
    RECURRENCE = "recurrence"
    CLOSED = "closed"


@dataclass(frozen=True)
class CharRoots:
    """Roots of ``x^2 - b(2-b^2) x + b^3(1-b)`` and the weights that match
    phi_0 = 1, phi_1 = b, so that ``phi_n = c1 * lambda_minus**n + c2 * lambda_plus**n``.
    """

    lambda_minus: float
    lambda_plus: float
    delta0: float
    c1: float
    c2: float


def _check_n(n: int, minimum: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < minimum:
        raise ValueError(f"n must be an integer >= {minimum}, got {n!r}")
    return int(n)


def phi_direct(n: int, b: float) -> float:
    """phi_n(b) evaluated literally from the inductive definition, O(n^2)."""
    n = _check_n(n, 1)
    if n > PHI_DIRECT_MAX_N:
        raise ValueError(f"phi_direct is capped at n={PHI_DIRECT_MAX_N}")
    b = check_branch_ratio(b)
    q = 1.0 - b
    powers = [1.0]
    for _ in range(n):
        powers.append(powers[-1] * b)
    # Index 0 is never read by the sum; the list is local so concurrent
    # callers cannot see each other's memo.
    memo = [0.0, b, b * b * (2.0 - b)]
    for m in range(3, n + 1):
        total = powers[m] + b * q * memo[m - 1]
        for ell in range(2, m):
            total += powers[ell] * q * (memo[m - ell + 1] + q * memo[m - ell])
        memo.append(total)
    return memo[n]


def phi_recurrence(n: int, b: float) -> float:
    """phi_n(b) from phi_0 = 1, phi_1 = b and the second-order recurrence."""
    n = _check_n(n, 0)
    b = check_branch_ratio(b)
    if n == 0:
        return 1.0
    a1 = b * (2.0 - b * b)
    a2 = b**3 * (1.0 - b)
    prev, cur = 1.0, b
    for _ in range(n - 1):
        prev, cur = cur, a1 * cur - a2 * prev
    return cur


def phi_closed(n: int, b: float) -> float:
    n = _check_n(n, 0)
    b = check_branch_ratio(b)
    s = psi(b)
    b2 = b * b
    bracket = (s - b2) * (2.0 - b2 - s) ** n + (s + b2) * (2.0 - b2 + s) ** n
    return b**n / (2.0 ** (n + 1) * s) * bracket


def phi(n: int, b: float, form: PhiForm = PhiForm.RECURRENCE) -> float:
    if form is PhiForm.DIRECT:
        return phi_direct(n, b)
    if form is PhiForm.CLOSED:
        return phi_closed(n, b)
    return phi_recurrence(n, b)


def char_roots(b: float) -> CharRoots:
    b = check_branch_ratio(b)
    if b == 0.0:
        raise ValueError("characteristic roots coincide at b = 0; use lambda(0) = 0")
    s = psi(b)
    b2 = b * b
    return CharRoots(
        lambda_minus=0.5 * b * (2.0 - b2 - s),
        lambda_plus=lambda_growth(b),
        delta0=b2 * (4.0 - 4.0 * b + b2 * b2),
        c1=(s - b2) / (2.0 * s),
        c2=(s + b2) / (2.0 * s),
    )


def log_phi_scaled(n: int, b: float) -> float:
    """``log(phi_n(b)) / n`` without underflow.

    The two-term recurrence state is divided by its newest entry after every
    step and the logs of those scale factors are accumulated.  All iterates
    are positive on (0, 1/2], so the division is always safe.
    """
    n = _check_n(n, 1)
    b = check_branch_ratio(b)
    if b == 0.0:
        raise ValueError("log phi_n(0) is undefined")
    a1 = b * (2.0 - b * b)
    a2 = b**3 * (1.0 - b)
    log_scale = math.log(b)
    # State (phi_{k-1}, phi_k) / phi_k, starting at k = 1.
    prev, cur = 1.0 / b, 1.0
    for _ in range(n - 1):
        nxt = a1 * cur - a2 * prev
        log_scale += math.log(nxt)
        prev, cur = cur / nxt, 1.0
    return log_scale / n


def f_n(d: int, n: int, p: float) -> float:
    """``phi_n(beta(p)) ** (1/n) - 1/d``; positive iff the n-step process is supercritical."""
    d = check_degree(d)
    n = _check_n(n, 1)
    b = beta(d, p)
    if b == 0.0:
        return -1.0 / d
    if n > LOG_PATH_MIN_N:
        return math.exp(log_phi_scaled(n, b)) - 1.0 / d
    return phi_recurrence(n, b) ** (1.0 / n) - 1.0 / d


def f_limit(d: int, p: float) -> float:
    d = check_degree(d)
    return lambda_growth(beta(d, p)) - 1.0 / d
