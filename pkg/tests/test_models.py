import pathlib

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dpcheck.distributions import Exponential, Normal
from dpcheck.errors import DataError, DegeneracyError
from dpcheck.models import FAMILY_TAGS, FittedModel, ParametricFamily, fit

KEVLAR_CSV = pathlib.Path(__file__).resolve().parent.parent / "data" / "kevlar.csv"


def test_location_normal_fit_is_mean_with_unit_variance():
    m = fit("location-normal", [1.0, 2.0, 3.0])
    assert m.theta == (2.0,)
    assert m.dist == Normal(2.0, 1.0)


def test_location_scale_normal_uses_divisor_n():
    m = fit("location-scale-normal", [0.0, 2.0])
    assert m.theta == (1.0, 1.0)
    assert m.dist == Normal(1.0, 1.0)


def test_scale_exponential_fit_is_mean():
    m = fit("scale-exponential", [2.0, 4.0])
    assert m.theta == (3.0,)
    assert m.dist == Exponential(3.0)


def test_family_accepts_instance_or_tag():
    fam = ParametricFamily("location-normal")
    assert fit(fam, [0.0, 1.0]).family == fam


def test_unknown_tag_rejected():
    with pytest.raises(DataError):
        ParametricFamily("weibull")


@pytest.mark.parametrize("data", [[1.0], [], [1.0, np.nan], [1.0, np.inf], [[1.0, 2.0]]])
def test_bad_samples_rejected(data):
    with pytest.raises(DataError):
        fit("location-normal", data)


def test_constant_data_degenerates_location_scale():
    with pytest.raises(DegeneracyError):
        fit("location-scale-normal", [5.0, 5.0, 5.0])


@pytest.mark.parametrize("data", [[1.0, -2.0], [0.0, 1.0]])
def test_nonpositive_data_rejected_by_exponential(data):
    with pytest.raises(DataError):
        fit("scale-exponential", data)


@given(
    shift=st.floats(min_value=-50, max_value=50),
    vals=st.lists(st.floats(min_value=-10, max_value=10), min_size=2, max_size=30),
)
@settings(max_examples=60, deadline=None)
def test_location_fits_are_shift_equivariant(shift, vals):
    x = np.asarray(vals)
    base = fit("location-normal", x).theta[0]
    moved = fit("location-normal", x + shift).theta[0]
    assert moved == pytest.approx(base + shift, abs=1e-9 * (1 + abs(shift)))


@given(
    scale=st.floats(min_value=0.01, max_value=100),
    vals=st.lists(st.floats(min_value=0.1, max_value=10), min_size=2, max_size=30),
)
@settings(max_examples=60, deadline=None)
def test_exponential_fit_is_scale_equivariant(scale, vals):
    x = np.asarray(vals)
    base = fit("scale-exponential", x).theta[0]
    scaled = fit("scale-exponential", x * scale).theta[0]
    assert scaled == pytest.approx(base * scale, rel=1e-9)


@pytest.mark.parametrize("tag", FAMILY_TAGS)
def test_fitted_cdf_round_trips(tag):
    data = np.abs(np.sin(np.arange(1.0, 21.0))) + 0.5
    m = fit(tag, data)
    assert isinstance(m, FittedModel)
    p = np.linspace(0.01, 0.99, 99)
    assert np.max(np.abs(m.dist.cdf(m.dist.quantile(p)) - p)) < 1e-10


@pytest.mark.skipif(not KEVLAR_CSV.exists(), reason="lifetimes dataset not bundled")
def test_lifetimes_fit_matches_published_estimates():
    data = np.loadtxt(KEVLAR_CSV, skiprows=1)
    m = fit("location-scale-normal", data)
    assert m.theta[0] == pytest.approx(209.171, abs=0.01)
    assert m.theta[1] == pytest.approx(37606.56, abs=1.0)
