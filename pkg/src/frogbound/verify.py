"""Cross-check suite behind ``frogbound verify``.

Each check reports the worst measured deviation next to the tolerance it is
held to.  ``fast`` runs every deterministic identity in well under a second
or two; ``full`` adds the Monte Carlo estimator checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analytic import beta, lambda_growth, ub_fmrt, ub_original
from .bounds import pbar_n
from .phi import char_roots, log_phi_scaled, phi_closed, phi_direct, phi_recurrence
from .quartic import (
    aux_cubic,
    descartes_constants,
    discriminant_H0,
    isolate_root,
    pbar_closed,
    poly_Q,
    poly_R,
)
from .sim import (
    DEFAULT_SEED,
    SimConfig,
    estimate_child_probability,
    estimate_hit_probability,
    simulate_branching_offspring,
    simulate_frog_model,
)

DEGREES = range(2, 201)


@dataclass(frozen=True)
class CheckResult:
    check: str
    passed: bool
    deviation: float
    tolerance: float

    def payload(self) -> dict:
        return {
            "check": self.check,
            "passed": self.passed,
            "deviation": self.deviation,
            "tolerance": self.tolerance,
        }


def _within(name: str, deviation: float, tolerance: float) -> CheckResult:
    return CheckResult(name, bool(deviation <= tolerance), float(deviation), float(tolerance))


def rel_dev(x: float, y: float, floor: float = 1e-8) -> float:
    """Absolute difference, made relative once both values exceed ``floor``."""
    scale = max(abs(x), abs(y))
    return abs(x - y) / scale if scale > floor else abs(x - y)


def check_phi3_identity() -> CheckResult:
    dev = max(
        abs(phi_direct(3, b) - b**3 * (4 - 3 * b - b * b + b**3))
        for b in np.linspace(0.0, 0.5, 201)
    )
    return _within("phi3-identity", dev, 1e-14)


def phi_threeway_deviation(d: int, n_max: int = 12, points: int = 101) -> float:
    worst = 0.0
    for b in np.linspace(0.0, 1.0 / d, points):
        for n in range(1, n_max + 1):
            direct, rec, closed = phi_direct(n, b), phi_recurrence(n, b), phi_closed(n, b)
            worst = max(worst, rel_dev(direct, rec), rel_dev(rec, closed), rel_dev(direct, closed))
    return worst


def check_phi_threeway() -> CheckResult:
    return _within("phi-threeway", max(phi_threeway_deviation(d) for d in (2, 3, 5, 10)), 1e-11)


def check_vieta() -> CheckResult:
    worst = 0.0
    for b in np.linspace(0.0, 0.5, 101)[1:]:
        r = char_roots(b)
        worst = max(
            worst,
            abs(r.lambda_plus * r.lambda_minus - b**3 * (1 - b)),
            abs(r.lambda_plus + r.lambda_minus - b * (2 - b * b)),
        )
    return _within("vieta", worst, 1e-14)


LIMIT_NS = (10**2, 10**3, 10**4, 10**5)


def limit_law_errors(b: float) -> list[float]:
    lam = lambda_growth(b)
    return [abs(math.exp(log_phi_scaled(n, b)) - lam) for n in LIMIT_NS]


def check_limit_law() -> CheckResult:
    worst, monotone = 0.0, True
    for b in (0.2, 0.3, 0.45):
        errs = limit_law_errors(b)
        monotone &= all(a >= c for a, c in zip(errs, errs[1:]))
        worst = max(worst, errs[-1])
    res = _within("limit-law", worst, 1e-3)
    return CheckResult(res.check, res.passed and monotone, res.deviation, res.tolerance)


def check_closed_vs_bisection() -> CheckResult:
    dev = max(abs(pbar_closed(d) - isolate_root(poly_Q(d), 0.0, 1.0, 1e-12)) for d in DEGREES)
    return _within("pbar-closed-vs-bisection", dev, 1e-9)


def check_residual_Q() -> CheckResult:
    return _within("residual-Q", max(abs(poly_Q(d)(pbar_closed(d))) for d in DEGREES), 1e-9)


def check_residual_R() -> CheckResult:
    worst, inside = 0.0, True
    for d in DEGREES:
        v = beta(d, pbar_closed(d))
        inside &= 0.0 <= v <= 1.0 / d
        worst = max(worst, abs(poly_R(d)(v)))
    res = _within("residual-R", worst, 1e-9)
    return CheckResult(res.check, res.passed and inside, res.deviation, res.tolerance)


def check_aux_cubic() -> CheckResult:
    worst = 0.0
    for d in DEGREES:
        c = descartes_constants(d)
        cubic = aux_cubic(d)
        x = c.K**2
        scale = sum(abs(a) * x ** (3 - i) for i, a in enumerate(cubic.coeffs))
        worst = max(worst, abs(cubic(x)) / scale)
    return _within("aux-cubic-residual", worst, 1e-10)


def check_bound_chain() -> CheckResult:
    # Smallest gap in pbar < ub_fmrt < ub_original; must be strictly positive.
    gap = min(
        min(ub_fmrt(d) - pbar_closed(d), ub_original(d) - ub_fmrt(d)) for d in DEGREES
    )
    return CheckResult("bound-chain", gap > 0.0, gap, 0.0)


def check_h0_branch() -> CheckResult:
    signs = [discriminant_H0(d) > 0 for d in DEGREES]
    flips = [d for d, a, b in zip(DEGREES[1:], signs, signs[1:]) if a != b]
    ok = flips == [10] and not signs[0]
    return CheckResult("h0-branch", ok, float(len(flips)), 1.0)


def check_pbar_n_convergence() -> CheckResult:
    worst, monotone = 0.0, True
    for d in (2, 3, 5, 10):
        target = pbar_closed(d)
        errs = [abs(pbar_n(d, n) - target) for n in (10, 50, 200)]
        monotone &= errs[0] >= errs[1] >= errs[2]
        worst = max(worst, errs[-1])
    res = _within("pbar-n-convergence", worst, 1e-2)
    return CheckResult(res.check, res.passed and monotone, res.deviation, res.tolerance)


FAST_CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_phi3_identity,
    check_phi_threeway,
    check_vieta,
    check_limit_law,
    check_closed_vs_bisection,
    check_residual_Q,
    check_residual_R,
    check_aux_cubic,
    check_bound_chain,
    check_h0_branch,
    check_pbar_n_convergence,
)


def monte_carlo_checks(seed: int, trials: int = 200_000, offspring_trials: int = 20_000):
    d, p = 2, 0.7
    b = beta(d, p)
    out = []
    for n in (1, 2, 3):
        e = estimate_hit_probability(d, p, n, trials, seed)
        out.append(_within(f"hit-prob-n{n}", abs(e.point - b**n), 4 * e.ci95_halfwidth))
    for n in (1, 2, 3, 4):
        e = estimate_child_probability(d, p, n, trials, seed)
        target = phi_recurrence(n, b)
        out.append(_within(f"child-prob-n{n}", abs(e.point - target), 4 * e.ci95_halfwidth))
    for n in (1, 2):
        m = simulate_branching_offspring(d, p, n, offspring_trials, seed)
        target = d**n * phi_recurrence(n, b)
        out.append(_within(f"offspring-n{n}", abs(m.mean - target), 4 * m.ci95_halfwidth))
    for p_end, expected in ((0.0, 0.0), (1.0, 1.0)):
        e = simulate_frog_model(SimConfig(d, p_end, trials=100, seed=seed))
        out.append(_within(f"sim-endpoint-p{p_end:g}", abs(e.point - expected), 0.0))
    return out


def run_checks(level: str = "fast", seed: int = DEFAULT_SEED) -> list[CheckResult]:
    if level not in ("fast", "full"):
        raise ValueError(f"unknown level {level!r}")
    results = [check() for check in FAST_CHECKS]
    if level == "full":
        results.extend(monte_carlo_checks(seed))
    return results
