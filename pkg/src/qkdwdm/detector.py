"""Gated single-photon detector and receiver efficiency model."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigurationError

FWHM_TO_SIGMA = 1.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)))

TEMPORAL_REJECTION_CAP_DB = 200.0


@dataclass(frozen=True)
class DetectorSpec:
    """Gated InGaAs detector pair.

    ``eta_sync`` is the peak efficiency for photons arriving in step with the
    gate; ``eta_async`` is the efficiency for photons with random arrival
    times. Dark counts are summed over both detectors.
    """

    eta_sync: float = 0.20
    eta_async: float = 0.0229630724
    active_fwhm_ps: float = 100.0
    gate_period_ps: float = 500.0
    dark_per_gate: float = 2.9e-5
    afterpulse_prob: float = 0.005

    def __post_init__(self):
        for name in ("eta_sync", "eta_async"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigurationError(f"{name} must lie in [0, 1], got {v}")
        if not self.eta_async <= self.eta_sync:
            raise ConfigurationError("eta_async must not exceed eta_sync")
        if not 0.0 < self.active_fwhm_ps < self.gate_period_ps:
            raise ConfigurationError("active window must be positive and shorter than the gate period")
        for name in ("dark_per_gate", "afterpulse_prob"):
            v = getattr(self, name)
            if not 0.0 <= v < 1.0:
                raise ConfigurationError(f"{name} must lie in [0, 1), got {v}")


@dataclass(frozen=True)
class ReceiverSpec:
    """Bob's receiver: detectors behind interferometer and coupler losses."""

    detector: DetectorSpec
    optical_loss_db: float = 0.0

    def __post_init__(self):
        if self.optical_loss_db < 0:
            raise ConfigurationError("receiver optical loss must be >= 0 dB")

    @property
    def eta_bob(self) -> float:
        return self.detector.eta_sync * 10.0 ** (-self.optical_loss_db / 10.0)


def temporal_rejection_db(detector: DetectorSpec) -> float:
    """Suppression of randomly timed photons relative to synchronised ones."""
    if detector.eta_async <= 0:
        return TEMPORAL_REJECTION_CAP_DB
    return 10.0 * math.log10(detector.eta_sync / detector.eta_async)


def jitter_efficiency_factor(detector: DetectorSpec, jitter_rms_ps: float) -> float:
    """Relative detection efficiency for signal pulses with timing jitter.

    The gate's acceptance profile is a Gaussian with the measured FWHM and
    the arrival-time spread is a Gaussian of width ``jitter_rms_ps``. Their
    overlap, ``1/sqrt(1 + (sigma_j/sigma_w)**2)``, interpolates between the
    synchronised efficiency (factor 1) and the random-arrival floor
    ``eta_async/eta_sync``.
    """
    if jitter_rms_ps < 0:
        raise ConfigurationError(f"jitter must be >= 0 ps, got {jitter_rms_ps}")
    if detector.eta_sync == 0:
        return 1.0
    floor = detector.eta_async / detector.eta_sync
    sigma_w = detector.active_fwhm_ps * FWHM_TO_SIGMA
    overlap = 1.0 / math.sqrt(1.0 + (jitter_rms_ps / sigma_w) ** 2)
    return floor + (1.0 - floor) * overlap
