"""Upper bounds for the critical survival probability of the frog model on
homogeneous trees, with Monte Carlo oracles for each ingredient."""

from .analytic import beta, beta_inverse, classic_bounds, lambda_growth, psi, ub_fmrt, ub_original
from .bounds import BoundsRow, bounds_row, bounds_table, pbar_n
from .phi import (
    CharRoots,
    PhiForm,
    char_roots,
    f_limit,
    f_n,
    log_phi_scaled,
    phi,
    phi_closed,
    phi_direct,
    phi_recurrence,
)
from .quartic import (
    BracketError,
    NumericGuardError,
    PolyEval,
    QuarticConstants,
    descartes_constants,
    discriminant_H0,
    isolate_root,
    pbar_closed,
    poly_Q,
    poly_R,
    quartic_roots_reduced,
)
from .sim import (
    SimConfig,
    SurvivalEstimate,
    TreeArena,
    estimate_child_probability,
    estimate_hit_probability,
    simulate_branching_offspring,
    simulate_frog_model,
)

__version__ = "0.1.0"
