import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from splab.calculus import (
    PoissonParams,
    PsiWeight,
    PsiZeroError,
    poisson_norm_of_derivative,
    poisson_of_bracket_derivative_norm,
    poisson_radial_derivative_norm,
    poisson_transform,
    psi_derivative,
)
from splab.families import FamilySpec
from splab.spectrum import BlockProfile, Spectrum, profile_of, sp_norm


def test_zero_sets():
    assert PsiWeight.radial_power(2).zero_set_orders == {0}
    assert PsiWeight.falling_factorial(3).zero_set_orders == {0, 1, 2}
    assert PsiWeight.falling_factorial(0).zero_set_orders == frozenset()


def test_weights_at_r1_coincide():
    nu = np.arange(50.0)
    a = PsiWeight.radial_power(1).inverse_weights(nu)
    b = PsiWeight.falling_factorial(1).inverse_weights(nu)
    assert (a == b).all()


def test_falling_factorial_values():
    psi = PsiWeight.falling_factorial(3)
    assert psi(5) == pytest.approx(1 / 60)
    assert psi(2) == 0.0
    assert PsiWeight.falling_factorial(3).inverse_weights(np.array([5.0]))[0] == 60.0


def test_custom_psi_zero_on_carried_block_raises():
    f = Spectrum.from_dict(1, {(2,): 1.0, (3,): 1.0})
    with pytest.raises(PsiZeroError):
        psi_derivative(f, PsiWeight.custom({2: 0.5}))
    g = psi_derivative(f, PsiWeight.custom({2: 0.5, 3: 0.25}))
    assert g.as_dict() == {(2,): 2.0, (3,): 4.0}


def test_derivative_zeroes_zero_set():
    f = Spectrum.from_dict(1, {(0,): 5.0, (1,): 1.0, (2,): 1.0})
    g = psi_derivative(f, PsiWeight.falling_factorial(2))
    assert g.as_dict() == {(0,): 0.0, (1,): 0.0, (2,): 2.0}


def test_derivative_keeps_certified_tail(power_r2):
    g = psi_derivative(profile_of(power_r2, 2.0), PsiWeight.falling_factorial(1))
    assert g.certified
    h = psi_derivative(profile_of(power_r2, 2.0), PsiWeight.falling_factorial(2))
    assert not h.certified


def test_huge_falling_factorial_does_not_overflow():
    prof = BlockProfile(2.0, np.exp(-np.arange(400.0)))
    g = psi_derivative(prof, PsiWeight.falling_factorial(150))
    assert np.isfinite(g.values).all()
    assert g.values[150] == pytest.approx(math.exp(-150 + math.lgamma(151)), rel=1e-10)


def test_poisson_transform_scales_blocks():
    prof = BlockProfile(2.0, [1.0, 1.0, 1.0])
    out = poisson_transform(prof, 0.5)
    np.testing.assert_allclose(out.values, [1.0, 0.5, 0.25])
    assert poisson_transform(prof, 0.0).values.tolist() == [1.0, 0.0, 0.0]


@given(
    st.integers(0, 3),
    st.floats(0.01, 0.99),
    st.lists(st.floats(0.0, 1.0), min_size=5, max_size=60),
)
def test_two_routes_agree(r, rho, vals):
    prof = BlockProfile(2.0, vals)
    composed = poisson_of_bracket_derivative_norm(prof, PoissonParams(rho, r)).upper
    radial = rho**r * poisson_radial_derivative_norm(prof, PoissonParams(rho, r)).upper
    assert composed == pytest.approx(radial, rel=1e-12, abs=1e-300)


def test_radial_derivative_single_block():
    prof = BlockProfile(2.0, [0, 0, 0, 0, 0, 1.0])
    assert poisson_radial_derivative_norm(prof, PoissonParams(0.5, 1)).upper == pytest.approx(0.3125)
    assert poisson_radial_derivative_norm(prof, PoissonParams(0.5, 2)).upper == pytest.approx(2.5)


def test_poisson_of_derivative_tail_certified():
    prof = FamilySpec("geometric", d=2, q=0.5).profile(2.0)
    iv = poisson_norm_of_derivative(prof, PsiWeight.radial_power(2), 0.9)
    assert iv.certified and iv.width < 1e-6 * iv.upper


def test_power_family_poisson_tail_shrinks_with_rho(power_r1):
    prof = profile_of(power_r1, 2.0)
    a = poisson_of_bracket_derivative_norm(prof, PoissonParams(0.5, 1))
    b = poisson_of_bracket_derivative_norm(prof, PoissonParams(0.999, 1))
    assert a.certified and b.certified
    assert a.upper < b.upper


def test_poisson_params_validation():
    with pytest.raises(ValueError):
        PoissonParams(1.0)
    with pytest.raises(ValueError):
        PoissonParams(0.5, -1)


def test_exact_input_stays_exact():
    f = Spectrum.from_dict(1, {(3,): 1.0})
    g = psi_derivative(f, PsiWeight.radial_power(1.5))
    assert g.exact
    assert sp_norm(g, 2.0).upper == pytest.approx(3**1.5)
