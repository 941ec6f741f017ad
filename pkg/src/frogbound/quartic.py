"""The quartic families behind the bound and their closed-form solution.

R_d(v) = d^2 v^4 - d(d+1) v^3 + 2 d v - 1 vanishes at vbar = beta(pbar), and
Q_d(p) is the same condition written in p.  Q_d is solved by Descartes'
method: shift p = z + (d+1)/(3d+1) to kill the cubic term, take K as the
square root of a root of the auxiliary (resolvent) cubic, and split the
depressed quartic into two quadratics in z.  The resolvent has one real root
for d <= 9 (Cardano) and three for d >= 10 (trigonometric form).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .analytic import check_degree

# Radicands in (-RADICAND_SLACK, 0) are rounding noise and are clamped to 0.
RADICAND_SLACK = 1e-12


class BracketError(ValueError):
    """The function does not change sign over the requested bracket."""


class NumericGuardError(ArithmeticError):
    """A quantity that must be real came out clearly negative under a root."""


class Branch(enum.Enum):
    CARDANO = "cardano"
    TRIGONOMETRIC = "trigonometric"


@dataclass(frozen=True)
class PolyEval:
    """Real polynomial of degree <= 4, coefficients from highest degree down.

    ``exact`` keeps the rational coefficients when they are known so callers
    can evaluate without rounding.
    """

    coeffs: tuple[float, ...]
    exact: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if not 1 <= len(self.coeffs) <= 5:
            raise ValueError("only polynomials of degree 0..4 are supported")
        if len(self.coeffs) > 1 and self.coeffs[0] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @classmethod
    def from_fractions(cls, coeffs: Sequence[Fraction]) -> PolyEval:
        exact = tuple(Fraction(c) for c in coeffs)
        return cls(tuple(float(c) for c in exact), exact)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def eval_exact(self, x) -> Fraction:
        coeffs = self.exact if self.exact is not None else [Fraction(c) for c in self.coeffs]
        x = Fraction(x)
        acc = Fraction(0)
        for c in coeffs:
            acc = acc * x + c
        return acc


def poly_R(d: int) -> PolyEval:
    d = check_degree(d)
    return PolyEval.from_fractions([d * d, -d * (d + 1), 0, 2 * d, -1])


def poly_Q(d: int) -> PolyEval:
    d = check_degree(d)
    D = 3 * d + 1
    return PolyEval.from_fractions(
        [
            Fraction(1),
            Fraction(-4 * (d + 1), D),
            Fraction(-2 * (d - 1) * (d + 1) ** 2, D * D),
            Fraction((d + 1) ** 3, d * D),
            Fraction(-((d + 1) ** 4), d * D * D),
        ]
    )


def shift(d: int) -> Fraction:
    """Translation p = z + shift(d) that removes the cubic term of Q_d."""
    d = check_degree(d)
    return Fraction(d + 1, 3 * d + 1)


def _exact_constants(d: int) -> dict[str, Fraction]:
    D = 3 * d + 1
    return {
        "Q": Fraction(-2 * (d + 1) ** 2 * (d + 2), D**2),
        "R": Fraction((d + 1) ** 3 * (5 * d * d + 2 * d + 1), d * D**3),
        "S": Fraction(-((d + 1) ** 4) * (2 * d + 1), D**4),
        "O": Fraction(
            -((d - 1) ** 2) * (d + 1) ** 6 * (16 * d**3 - 259 * d * d - 162 * d - 27),
            3456 * d * d * D**6,
        ),
        "P": Fraction(-((d - 1) ** 2) * (d + 1) ** 4, 36 * D**4),
    }


def reduced_quartic(d: int) -> PolyEval:
    """z^4 + Q z^2 + R z + S, i.e. Q_d(z + shift(d))."""
    c = _exact_constants(check_degree(d))
    return PolyEval.from_fractions([1, 0, c["Q"], c["R"], c["S"]])


def aux_cubic(d: int) -> PolyEval:
    """Resolvent cubic x^3 + Q/2 x^2 + (Q^2 - 4S)/16 x - R^2/64."""
    c = _exact_constants(check_degree(d))
    Q, R, S = c["Q"], c["R"], c["S"]
    return PolyEval.from_fractions([1, Q / 2, (Q * Q - 4 * S) / 16, -R * R / 64])


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


@dataclass(frozen=True)
class QuarticConstants:
    d: int
    Q: float
    R: float
    S: float
    O: float
    P: float
    Theta: float
    K: float
    branch: Branch


def descartes_constants(d: int) -> QuarticConstants:
    d = check_degree(d)
    exact = _exact_constants(d)
    Q, R, S, O, P = (float(exact[k]) for k in "QRSOP")
    sqrt_neg_p = math.sqrt(-P)
    # Theta is only used for d >= 10; below that |O| > sqrt(-P^3) and the
    # clamp keeps it defined.
    cos_arg = max(-1.0, min(1.0, O / sqrt_neg_p**3))
    theta = math.acos(cos_arg) / 3.0
    if d <= 9:
        branch = Branch.CARDANO
        # O^2 + P^3 = -(discriminant)/..., positive on this branch; evaluated
        # exactly because it is a small difference of large squares.
        rad = float(exact["O"] ** 2 + exact["P"] ** 3)
        if rad < 0.0:
            if rad < -RADICAND_SLACK:
                raise NumericGuardError(f"Cardano radicand {rad} < 0 at d={d}")
            rad = 0.0
        root = math.sqrt(rad)
        inner = -Q + 6.0 * (_cbrt(O + root) + _cbrt(O - root))
    else:
        branch = Branch.TRIGONOMETRIC
        inner = -Q + 12.0 * sqrt_neg_p * math.cos(theta)
    if inner <= 0.0:
        raise NumericGuardError(f"K^2 = {inner / 6} is not positive at d={d}")
    K = math.sqrt(inner / 6.0)
    return QuarticConstants(d, Q, R, S, O, P, theta, K, branch)


def _sqrt_guarded(x: float, what: str) -> float:
    if x < 0.0:
        if x < -RADICAND_SLACK:
            raise NumericGuardError(f"{what} radicand {x} is negative")
        return 0.0
    return math.sqrt(x)


def pbar_closed(d: int) -> float:
    """The quartic upper bound pbar(d) from the closed formula in radicals."""
    c = descartes_constants(d)
    K, Q, R = c.K, c.Q, c.R
    rad = K * (-4.0 * K**3 - 2.0 * K * Q + R)
    return float(shift(c.d)) - K + _sqrt_guarded(rad, "pbar") / (2.0 * K)


def discriminant_H0(d: int) -> int:
    """Sign-carrying factor of the resolvent-cubic discriminant (exact integer)."""
    d = check_degree(d)
    return (d - 1) ** 4 * (d + 1) ** 12 * (32 * d**3 - 275 * d * d - 162 * d - 27)


def aux_cubic_discriminant(d: int) -> Fraction:
    """Exact discriminant of the resolvent cubic, ``H0(d) / (4096 d^4 (3d+1)^10)``."""
    d = check_degree(d)
    return Fraction(discriminant_H0(d), 4096 * d**4 * (3 * d + 1) ** 10)


@dataclass(frozen=True)
class RootDescriptor:
    value: complex
    is_real: bool


def quartic_roots_reduced(d: int) -> tuple[RootDescriptor, ...]:
    """Roots z1..z4 of the depressed quartic; z1, z2 from g1 and z3, z4 from g2."""
    c = descartes_constants(d)
    K, Q, R = c.K, c.Q, c.R
    rad12 = K * (-4.0 * K**3 - 2.0 * K * Q + R)
    rad34 = -K * (4.0 * K**3 + 2.0 * K * Q + R)
    # rad12 must be real for pbar to exist; rad34 is legitimately negative
    # when z3, z4 are a conjugate pair.
    s12 = _sqrt_guarded(rad12, "g1")
    roots = [
        RootDescriptor(complex(-K - s12 / (2 * K)), True),
        RootDescriptor(complex(-K + s12 / (2 * K)), True),
    ]
    if rad34 < -RADICAND_SLACK:
        s34 = cmath.sqrt(rad34)
        roots.append(RootDescriptor(K - s34 / (2 * K), False))
        roots.append(RootDescriptor(K + s34 / (2 * K), False))
    else:
        s34 = math.sqrt(max(rad34, 0.0))
        roots.append(RootDescriptor(complex(K - s34 / (2 * K)), True))
        roots.append(RootDescriptor(complex(K + s34 / (2 * K)), True))
    return tuple(roots)


def isolate_root(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12
) -> float:
    """Bisection on a bracket with a strict sign change.

    Returns the midpoint of a final bracket no wider than ``2 * tol`` whose
    endpoints still straddle the sign change, so the true root is within
    ``tol`` of the result.  An endpoint where ``f`` is exactly zero is
    returned as is.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if not tol > 0:
        raise ValueError("tol must be positive")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f={flo:.6g}, {fhi:.6g}")
    while hi - lo > 2.0 * tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)
