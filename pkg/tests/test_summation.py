import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from splab.families import FamilySpec
from splab.spectrum import BlockProfile, Spectrum, profile_of, sp_norm
from splab.summation import (
    SummationMethod,
    apply,
    approximation_error,
    binomial_terms,
    lambda_coeff,
    multipliers,
    taylor_pair,
    verify_identity_8,
    verify_inequality_12,
)

methods = st.one_of(
    st.builds(SummationMethod.partial, st.integers(0, 50)),
    st.builds(SummationMethod.fejer, st.integers(1, 50)),
    st.builds(SummationMethod.abel_poisson, st.floats(0.0, 0.999), st.floats(1.0, 3.0)),
    st.builds(SummationMethod.taylor, st.floats(0.0, 0.999), st.integers(1, 6)),
)


@given(methods)
def test_multipliers_in_unit_interval(method):
    row = multipliers(method, 80)
    assert ((row.values >= 0) & (row.values <= 1)).all()
    assert ((row.complements >= 0) & (row.complements <= 1 + 1e-15)).all()
    np.testing.assert_allclose(row.values + row.complements, 1.0, atol=1e-14)


def test_method_validation():
    with pytest.raises(ValueError):
        SummationMethod.fejer(0)
    with pytest.raises(ValueError):
        SummationMethod.taylor(1.0, 2)
    with pytest.raises(ValueError):
        SummationMethod("mystery")


def test_abel_keeps_constant_block():
    row = multipliers(SummationMethod.abel_poisson(0.0, 2.0), 5)
    assert row.values.tolist() == [1.0, 0, 0, 0, 0, 0]


@given(st.integers(1, 400), st.integers(1, 6), st.floats(0.001, 0.999))
def test_lambda_is_binomial_cdf(nu, r, rho):
    if nu < r:
        return
    # lambda_{nu,r}(rho) = P[Bin(nu, 1-rho) <= r-1]
    ref = stats.binom.cdf(r - 1, nu, 1.0 - rho)
    assert lambda_coeff(nu, r, rho) == pytest.approx(ref, rel=1e-10, abs=1e-300)


@given(st.integers(2, 6), st.floats(0.5, 0.99999))
def test_complement_matches_survival_function(r, rho):
    nu = np.arange(r, 3000, dtype=float)
    _, comp = taylor_pair(nu, r, rho)
    ref = stats.binom.sf(r - 1, nu, 1.0 - rho)
    live = ref > 1e-290
    np.testing.assert_allclose(comp[live], ref[live], rtol=1e-9)


def test_taylor_r1_is_abel_s1():
    for rho in np.linspace(0.0, 0.999, 37):
        a = multipliers(SummationMethod.abel_poisson(rho, 1.0), 10**4)
        t = multipliers(SummationMethod.taylor(rho, 1), 10**4)
        assert np.array_equal(a.values, t.values) and np.array_equal(a.complements, t.complements)


def test_lambda_domain():
    with pytest.raises(ValueError):
        lambda_coeff(1, 2, 0.5)
    assert lambda_coeff(5, 2, 0.0) == 0.0


def test_identity_and_inequality_examples():
    grid = [j / 100 for j in range(1, 100)]
    assert verify_identity_8(200, grid).passed
    rep = verify_inequality_12(200, 5, grid)
    assert rep.passed and rep.max_error <= 1e-12
    assert binomial_terms(4, 1.0).tolist() == [1, 0, 0, 0, 0]


def test_apply_partial_is_exact():
    f = FamilySpec("geometric", d=2, q=0.5).spectrum(2.0)
    g = apply(SummationMethod.partial(4), f)
    assert g.exact and set(np.unique(g.orders[np.abs(g.coefficients) > 0])) <= set(range(5))


def test_partial_error_zero_when_supported_below_n():
    f = Spectrum.from_dict(2, {(1, 1): 1.0, (0, 3): 2.0})
    assert approximation_error(SummationMethod.partial(3), profile_of(f, 2.0)).upper == 0.0


def test_fejer_single_block():
    prof = BlockProfile(2.0, [0, 0, 0, 3.0])
    assert approximation_error(SummationMethod.fejer(5), prof).upper == pytest.approx(0.5 * 3.0)


@given(methods, st.floats(1.0, 4.0))
def test_error_never_exceeds_norm(method, p):
    prof = FamilySpec("geometric", d=2, q=0.6).profile(p)
    assert approximation_error(method, prof).lower <= sp_norm(prof).upper * (1 + 1e-14)


def test_error_monotone_in_rho():
    prof = FamilySpec("power", beta=1.0).profile(2.0, 10**4)
    errs = [approximation_error(SummationMethod.taylor(rho, 2), prof).upper for rho in (0.5, 0.9, 0.99)]
    assert errs[0] > errs[1] > errs[2]


def test_sharper_tail_covers_truncation():
    fam = FamilySpec("geometric", d=1, q=0.9)
    small, big = fam.profile(2.0, 40), fam.profile(2.0, 2000)
    for method in (SummationMethod.abel_poisson(0.99, 2.0), SummationMethod.taylor(0.99, 3)):
        ref = approximation_error(method, big).lower
        iv = approximation_error(method, small)
        assert iv.lower <= ref <= iv.upper * (1 + 1e-14)
