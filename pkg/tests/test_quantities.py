import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkdwdm.errors import DomainError
from qkdwdm.quantities import (
    PLANCK,
    SPEED_OF_LIGHT,
    PhotonFlux,
    check_wavelength,
    db_to_linear,
    dbm_to_watts,
    flux_to_power,
    linear_to_db,
    photon_energy,
    watts_to_dbm,
)


def test_db_examples():
    assert db_to_linear(0.0) == 1.0
    assert db_to_linear(10.0) == pytest.approx(10.0, rel=1e-15)
    assert dbm_to_watts(-18.5) == pytest.approx(1.413e-5, rel=1e-3)


def test_db_accepts_arrays():
    out = db_to_linear(np.array([0.0, 10.0, 20.0]))
    np.testing.assert_allclose(out, [1.0, 10.0, 100.0])


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan")])
def test_linear_to_db_rejects_nonpositive(bad):
    with pytest.raises(DomainError):
        linear_to_db(bad)


def test_watts_to_dbm_rejects_zero():
    with pytest.raises(DomainError):
        watts_to_dbm(0.0)


@given(st.floats(-100, 100))
def test_db_round_trip(x):
    assert linear_to_db(db_to_linear(x)) == pytest.approx(x, rel=1e-12, abs=1e-12)
    y = db_to_linear(x)
    assert db_to_linear(linear_to_db(y)) == pytest.approx(y, rel=1e-12)


def test_photon_energy_examples():
    assert photon_energy(1550.0) == pytest.approx(1.282e-19, rel=1e-3)
    assert photon_energy(1611.0) == pytest.approx(1.233e-19, rel=1e-3)
    assert photon_energy(1550.0) == pytest.approx(PLANCK * SPEED_OF_LIGHT / 1550e-9, rel=1e-15)


def test_energy_inversely_proportional_to_wavelength():
    # 775 nm is outside the validity range; the scaling is checked inside it
    assert photon_energy(1000.0) == pytest.approx(1.5 * photon_energy(1500.0), rel=1e-12)
    with pytest.raises(DomainError):
        photon_energy(775.0)


@pytest.mark.parametrize("nm", [899.9, 1700.1, -5.0])
def test_wavelength_range(nm):
    with pytest.raises(DomainError):
        check_wavelength(nm)


def test_flux_examples():
    p = flux_to_power(PhotonFlux(0.5, 1e9), 1550.0)
    assert p == pytest.approx(6.41e-11, rel=1e-3)
    assert watts_to_dbm(p) == pytest.approx(-71.9, abs=0.05)
    assert flux_to_power(PhotonFlux(0.0, 123.0), 1311.0) == 0.0
    assert flux_to_power(PhotonFlux(1.0, 10e6), 1571.0) == pytest.approx(1.265e-12, rel=1e-3)


def test_flux_validation():
    with pytest.raises(DomainError):
        PhotonFlux(-0.1, 1e9)
    with pytest.raises(DomainError):
        PhotonFlux(0.5, 0.0)


@given(st.floats(0, 10), st.floats(1e3, 1e10), st.floats(0.1, 10))
def test_flux_linear(mu, rate, k):
    base = flux_to_power(PhotonFlux(mu, rate), 1551.0)
    assert flux_to_power(PhotonFlux(mu * k, rate), 1551.0) == pytest.approx(k * base, rel=1e-12, abs=1e-300)
    assert flux_to_power(PhotonFlux(mu, rate * k), 1551.0) == pytest.approx(k * base, rel=1e-12, abs=1e-300)
    assert math.isfinite(base)
