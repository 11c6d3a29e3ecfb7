import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkdwdm.detector import (
    TEMPORAL_REJECTION_CAP_DB,
    DetectorSpec,
    ReceiverSpec,
    jitter_efficiency_factor,
    temporal_rejection_db,
)
from qkdwdm.errors import ConfigurationError


def test_temporal_rejection_examples():
    assert temporal_rejection_db(DetectorSpec(eta_sync=0.2, eta_async=0.0229)) == pytest.approx(9.4, abs=0.05)
    assert temporal_rejection_db(DetectorSpec()) == pytest.approx(9.4, abs=1e-6)
    assert temporal_rejection_db(DetectorSpec(eta_sync=0.1, eta_async=0.1)) == 0.0
    assert temporal_rejection_db(DetectorSpec(eta_sync=0.2, eta_async=0.02)) == pytest.approx(10.0, abs=1e-12)
    assert temporal_rejection_db(DetectorSpec(eta_sync=0.2, eta_async=0.0)) == TEMPORAL_REJECTION_CAP_DB


@pytest.mark.parametrize(
    "kwargs",
    [
        {"eta_sync": 1.2},
        {"eta_async": -0.1},
        {"eta_sync": 0.1, "eta_async": 0.2},
        {"active_fwhm_ps": 600.0},
        {"active_fwhm_ps": 0.0},
        {"dark_per_gate": 1.0},
        {"afterpulse_prob": -0.01},
    ],
)
def test_detector_validation(kwargs):
    with pytest.raises(ConfigurationError):
        DetectorSpec(**kwargs)


def test_eta_bob_composition():
    r = ReceiverSpec(DetectorSpec(eta_sync=0.2), optical_loss_db=3.0)
    assert r.eta_bob == 0.2 * 10 ** (-0.3)
    with pytest.raises(ConfigurationError):
        ReceiverSpec(DetectorSpec(), optical_loss_db=-1.0)


def test_jitter_examples(detector):
    assert jitter_efficiency_factor(detector, 0.0) == pytest.approx(1.0, abs=1e-12)
    assert jitter_efficiency_factor(detector, 10.0) >= 0.97
    floor = detector.eta_async / detector.eta_sync
    assert jitter_efficiency_factor(detector, 1e9) == pytest.approx(floor, rel=1e-6)
    with pytest.raises(ConfigurationError):
        jitter_efficiency_factor(detector, -1.0)


def test_jitter_overlap_formula(detector):
    sigma_w = 100.0 / (2 * math.sqrt(2 * math.log(2)))
    assert sigma_w == pytest.approx(42.5, abs=0.05)
    floor = detector.eta_async / detector.eta_sync
    expected = floor + (1 - floor) / math.sqrt(1 + (10.0 / sigma_w) ** 2)
    assert jitter_efficiency_factor(detector, 10.0) == pytest.approx(expected, rel=1e-14)


@given(st.floats(0, 1e4), st.floats(0, 1e4))
def test_jitter_nonincreasing(a, b):
    d = DetectorSpec()
    lo, hi = sorted((a, b))
    assert jitter_efficiency_factor(d, hi) <= jitter_efficiency_factor(d, lo)
    assert 0 < jitter_efficiency_factor(d, hi) <= 1


def test_jitter_continuous(detector):
    for x in (0.0, 5.0, 42.0, 300.0):
        assert jitter_efficiency_factor(detector, x + 1e-9) == pytest.approx(jitter_efficiency_factor(detector, x), abs=1e-9)
