import numpy as np
import pytest

from splab import oracle
from splab.calculus import PoissonParams, poisson_radial_derivative_norm
from splab.families import FamilySpec
from splab.spectrum import BlockProfile, ResourceError, Spectrum, enumerate_ball, profile_of
from splab.summation import SummationMethod, approximation_error
from splab.tails import TailMajorant
from splab.verify import oracle_agreement


def single(nu):
    vals = np.zeros(nu + 1)
    vals[nu] = 1.0
    return BlockProfile(2.0, vals)


def test_fd_examples():
    assert oracle.fd_radial_derivative(single(5), 1, 0.5, 1e-4) == pytest.approx(0.3125, abs=1e-6)
    assert oracle.fd_radial_derivative(single(5), 2, 0.5, 1e-4) == pytest.approx(2.5, abs=1e-5)
    assert oracle.fd_radial_derivative(single(5), 0, 0.5) == pytest.approx(0.5**5)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_fd_is_second_order(r):
    prof = BlockProfile(2.0, 0.8 ** np.arange(30.0))
    exact = poisson_radial_derivative_norm(prof, PoissonParams(0.4, r)).upper
    e1 = abs(oracle.fd_radial_derivative(prof, r, 0.4, 2e-3) - exact)
    e2 = abs(oracle.fd_radial_derivative(prof, r, 0.4, 1e-3) - exact)
    assert 0.2 <= e2 / e1 <= 0.3


def test_fd_domain_error():
    with pytest.raises(ValueError):
        oracle.fd_radial_derivative(single(3), 2, 0.999, 1e-3)


def test_naive_error_examples():
    f = Spectrum.from_dict(2, {(1, 0): 1.0, (1, 1): 2.0})
    assert oracle.naive_error(SummationMethod.partial(2), f, 2.0) == 0.0
    g = Spectrum.from_dict(1, {(3,): 2.0, (-3,): 2.0})
    a3 = 2.0 * 2**0.5
    assert oracle.naive_error(SummationMethod.fejer(5), g, 2.0) == pytest.approx(0.5 * a3)


def test_naive_error_requires_exact_and_small():
    f = FamilySpec("geometric").spectrum(2.0, 10)
    with pytest.raises(ValueError):
        oracle.naive_error(SummationMethod.fejer(3), f, 2.0)
    big = Spectrum(2, enumerate_ball(2, 80), np.ones(len(enumerate_ball(2, 80))), 80)
    with pytest.raises(ResourceError):
        oracle.naive_error(SummationMethod.fejer(3), big, 2.0)


def test_oracle_agreement_small_batch():
    worst = oracle_agreement(count=15, seed=3)
    assert max(worst.values()) <= 1e-12


def test_series_registry():
    assert oracle.series_reference("geometric_block_sum").value == 2.0
    with pytest.raises(oracle.UnknownSeriesError):
        oracle.series_reference("nope")


def test_zeta_tail_reference_vs_majorant():
    ref = oracle.series_reference("zeta_tail", s=1.5, n=10**5, cutoff=10**6)
    bound = TailMajorant(1.0, -1.5).sum(10**5 + 1)
    assert ref.value <= bound <= ref.value * (1 + 1e-3)


def test_fejer_reference_fixture():
    ref = oracle.series_reference("fejer_power_error")
    prof = FamilySpec("power", beta=1.0).profile(2.0, 10**5)
    iv = approximation_error(SummationMethod.fejer(1024), prof)
    assert iv.lower - ref.error_bound <= ref.value <= iv.upper + ref.error_bound


def test_oracle_config_bounds():
    with pytest.raises(ValueError):
        oracle.OracleConfig(fd_step=0.1)
    with pytest.raises(ValueError):
        oracle.OracleConfig(max_cutoff=10**7)
