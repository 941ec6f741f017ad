"""The sequence of bounds pbar_n(d) and the per-degree comparison table."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Sequence

from .analytic import beta, check_degree, ub_fmrt, ub_original
from .phi import f_n
from .quartic import BracketError, isolate_root, pbar_closed, poly_Q, poly_R

DEFAULT_N_SAMPLES = (1, 2, 5, 10, 50, 200)


def pbar_n(d: int, n: int, tol: float = 1e-12) -> float:
    """Smallest p at which the n-level embedded branching process has mean
    offspring d^n phi_n(beta(p)) >= 1.  Every such value bounds p_c(T_d) from above.
    """
    d = check_degree(d)
    fn = partial(f_n, d, n)
    lo_val, hi_val = fn(0.0), fn(1.0)
    if not lo_val < 0.0 <= hi_val:
        raise BracketError(f"f_{n} for d={d} has values {lo_val}, {hi_val} at p=0, 1")
    return isolate_root(fn, 0.0, 1.0, tol)


@dataclass(frozen=True)
class BoundsRow:
    d: int
    ub_original: float
    ub_fmrt: float
    pbar: float
    vbar: float
    pbar_n_samples: tuple[tuple[int, float], ...] = field(default_factory=tuple)
    residual_Q: float = 0.0
    residual_R: float = 0.0
    # Bisection root of Q_d on (0, 1); cross-check only, not serialised.
    pbar_bisect: float = float("nan")


def bounds_row(d: int, n_samples: Sequence[int] = DEFAULT_N_SAMPLES) -> BoundsRow:
    d = check_degree(d)
    pbar = pbar_closed(d)
    vbar = beta(d, pbar)
    return BoundsRow(
        d=d,
        ub_original=ub_original(d),
        ub_fmrt=ub_fmrt(d),
        pbar=pbar,
        vbar=vbar,
        pbar_n_samples=tuple((int(n), pbar_n(d, n)) for n in n_samples),
        residual_Q=abs(poly_Q(d)(pbar)),
        residual_R=abs(poly_R(d)(vbar)),
        pbar_bisect=isolate_root(poly_Q(d), 0.0, 1.0, 1e-12),
    )


def bounds_table(
    d_min: int,
    d_max: int,
    n_samples: Sequence[int] = DEFAULT_N_SAMPLES,
    workers: int = 1,
) -> list[BoundsRow]:
    d_min, d_max = check_degree(d_min), check_degree(d_max)
    if d_min > d_max:
        raise ValueError(f"empty degree range [{d_min}, {d_max}]")
    degrees = range(d_min, d_max + 1)
    job = partial(bounds_row, n_samples=tuple(n_samples))
    if workers <= 1:
        return [job(d) for d in degrees]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(job, degrees))
