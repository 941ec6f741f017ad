import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from frogbound.analytic import (
    FMRT_D2,
    beta,
    beta_inverse,
    classic_bounds,
    lambda_growth,
    psi,
)

from conftest import mp_beta

# mpmath at 40 digits
BETA_2_07 = 0.26646945217252536551
PSI_HALF = 1.4361406616345071650
PSI_THIRD = 1.6367688736284706172
LAMBDA_HALF = 0.79653516540862679124
LAMBDA_QUARTER = 0.45883475974784449140
FMRT_3 = 0.64583667613515327256


def test_beta_examples():
    assert beta(5, 0.0) == 0.0
    assert beta(2, 1.0) == 0.5
    assert beta(2, 0.7) == pytest.approx(BETA_2_07, abs=1e-15)


@pytest.mark.parametrize("d", [2, 3, 7, 50, 200])
def test_beta_matches_textbook_form(d):
    for p in np.linspace(0.0, 1.0, 41):
        assert beta(d, p) == pytest.approx(float(mp_beta(d, p)), rel=1e-14, abs=1e-300)


def test_beta_small_p_keeps_relative_accuracy():
    # beta(p) = p/(d+1) + O(p^3)
    p = 1e-12
    assert beta(2, p) == pytest.approx(p / 3, rel=1e-12)


def test_beta_inverse_examples():
    assert beta_inverse(4, 0.0) == 0.0
    assert beta_inverse(2, 0.5) == 1.0
    assert beta_inverse(2, 0.266468) == pytest.approx(0.69999713397213500, abs=1e-14)


@pytest.mark.parametrize("d", [2, 3, 5, 10, 57, 200])
def test_beta_range_and_monotone(d):
    values = [beta(d, p) for p in np.linspace(0.0, 1.0, 1001)]
    assert all(0.0 <= v <= 1.0 / d for v in values)
    assert all(a <= b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("d", [2, 3, 5, 10, 57, 200])
def test_roundtrip(d):
    for v in np.linspace(0.0, 1.0 / d, 201):
        assert abs(beta(d, beta_inverse(d, v)) - v) <= 1e-12
    for p in np.linspace(0.0, 1.0, 201)[1:]:
        assert abs(beta_inverse(d, beta(d, p)) - p) <= 1e-12


def test_psi_examples():
    assert psi(0.0) == 2.0
    assert psi(0.5) == pytest.approx(PSI_HALF, abs=1e-15)
    assert psi(1 / 3) == pytest.approx(PSI_THIRD, abs=1e-15)


def test_lambda_examples():
    assert lambda_growth(0.0) == 0.0
    assert lambda_growth(0.5) == pytest.approx(LAMBDA_HALF, abs=1e-15)
    assert lambda_growth(0.5) > 0.5
    assert lambda_growth(0.25) == pytest.approx(LAMBDA_QUARTER, abs=1e-15)


@given(st.floats(0.0, 0.5), st.floats(0.0, 0.5))
def test_psi_positive_lambda_monotone(a, b):
    lo, hi = sorted((a, b))
    assert psi(lo) > 0 and psi(hi) > 0
    assert lambda_growth(lo) <= lambda_growth(hi)


@pytest.mark.parametrize("d", range(2, 30))
def test_lambda_exceeds_inverse_degree_at_top(d):
    assert lambda_growth(1.0 / d) > 1.0 / d


def test_classic_bounds_examples(mp):
    assert classic_bounds(2) == (0.75, FMRT_D2)
    orig, fmrt = classic_bounds(3)
    assert orig == pytest.approx(2 / 3, abs=1e-16)
    assert fmrt == pytest.approx(FMRT_3, abs=1e-15)


def test_fmrt_matches_published_quotient(mp):
    for d in range(3, 201):
        a = mp.mpf(7 * d - 1)
        s = mp.sqrt(a * a - 14)
        literal = (d + 1) * (a - s) / (d * a**2 - 7 * d + 2 - d * a * s)
        assert classic_bounds(d)[1] == pytest.approx(float(literal), rel=1e-14)


def test_classic_chain():
    for d in range(2, 201):
        orig, fmrt = classic_bounds(d)
        assert fmrt < orig


@pytest.mark.parametrize("bad", [1, 0, -3, 2.5, True])
def test_degree_rejected(bad):
    with pytest.raises(ValueError):
        beta(bad, 0.5)


def test_domain_rejected():
    with pytest.raises(ValueError):
        beta(2, 1.01)
    with pytest.raises(ValueError):
        beta_inverse(2, 0.51)
    with pytest.raises(ValueError):
        psi(-0.1)
    with pytest.raises(ValueError):
        lambda_growth(math.nan)
