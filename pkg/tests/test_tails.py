import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from splab.tails import Interval, TailMajorant


def test_interval_rejects_empty():
    with pytest.raises(ValueError):
        Interval(2.0, 1.0)


def test_interval_from_power_sums():
    iv = Interval.from_power_sums(9.0, 16.0, 2.0)
    assert iv.lower == 3.0 and iv.upper == 5.0
    assert 4.0 in iv
    assert not Interval.from_power_sums(1.0, math.inf, 2.0).certified


def test_scaled_uses_modulus():
    assert Interval(1.0, 2.0).scaled(-3.0) == Interval(3.0, 6.0)


@given(
    coef=st.floats(0.1, 10.0),
    exponent=st.floats(-3.0, 3.0),
    ratio=st.floats(0.05, 0.95),
    start=st.integers(1, 200),
)
def test_geometric_majorant_sum_is_upper_bound(coef, exponent, ratio, start):
    maj = TailMajorant(coef, exponent, ratio)
    nu = np.arange(start, start + 5000, dtype=float)
    brute = math.fsum(coef * nu**exponent * ratio**nu)
    bound = maj.sum(start)
    assert bound >= brute * (1 - 1e-12)
    assert bound <= brute * 1.5 + 1e-300


@given(exponent=st.floats(-4.0, -1.1), start=st.integers(1, 10**4))
def test_power_majorant_sum_brackets_tail(exponent, start):
    bound = TailMajorant(1.0, exponent, 1.0).sum(start)
    lower = start ** (exponent + 1) / (-exponent - 1)
    assert lower <= bound * (1 + 1e-12)


def test_divergent_power_sum_is_infinite():
    assert TailMajorant(1.0, -1.0, 1.0).sum(5) == math.inf


def test_finite_stop_matches_explicit_sum():
    maj = TailMajorant(2.0, 1.0, 0.9)
    nu = np.arange(3, 51, dtype=float)
    assert maj.sum(3, 50) == pytest.approx(math.fsum(2.0 * nu * 0.9**nu), rel=1e-14)


def test_transforms_compose():
    maj = TailMajorant(1.0, -2.0, 1.0).times_power(2.0).times_geometric(0.5).scaled(3.0)
    assert (maj.coef, maj.exponent, maj.ratio) == (3.0, 0.0, 0.5)
    assert maj.term(4) == pytest.approx(3.0 * 0.5**4)
