import math

import numpy as np
import pytest

from splab.families import CATALOG, FamilyError, FamilySpec, family_from_dict
from splab.spectrum import profile_of, sp_norm


def test_catalog_lists_five_families():
    assert sorted(CATALOG) == ["geometric", "lacunary", "power", "single_block", "y_power"]


@pytest.mark.parametrize(
    "spec",
    [
        {"name": "geometric", "d": 2, "q": 0.5},
        {"name": "power", "d": 2, "beta": 1.5},
        {"name": "y_power", "d": 2, "beta": 1.5},
        {"name": "single_block", "d": 3, "nu0": 4},
        {"name": "lacunary", "d": 1, "base": 3},
    ],
)
def test_closed_form_profile_matches_spectrum(spec):
    fam = family_from_dict(spec)
    closed = fam.profile(2.0, 30)
    built = profile_of(fam.spectrum(2.0, 30), 2.0)
    np.testing.assert_allclose(built.values, closed.values, rtol=1e-12)
    assert built.tail_bound == pytest.approx(closed.tail_bound)


def test_invalid_parameters():
    with pytest.raises(FamilyError):
        FamilySpec("geometric", q=1.0)
    with pytest.raises(FamilyError):
        FamilySpec("power", beta=0.4).check(2.0)
    with pytest.raises(FamilyError):
        FamilySpec("nope")
    with pytest.raises(FamilyError):
        FamilySpec("geometric", d=5)


def test_tail_bounds_cover_truncated_mass():
    for fam in (FamilySpec("power", beta=1.0), FamilySpec("lacunary", base=2), FamilySpec("geometric", q=0.8)):
        small, big = fam.profile(2.0, 64), fam.profile(2.0, 4096)
        missing = math.fsum(big.values[65:] ** 2)
        assert missing <= small.tail_bound


def test_y_supported_flags():
    assert FamilySpec("power", d=1).y_supported
    assert not FamilySpec("power", d=2).y_supported
    assert FamilySpec("y_power", d=3).spectrum(2.0, 6).y_supported


def test_default_geometric_cutoff_certifies_1e12():
    fam = FamilySpec("geometric", q=0.5, d=2)
    prof = fam.profile(2.0)
    assert prof.tail_bound <= 1e-12
    assert sp_norm(prof).width < 1e-12
