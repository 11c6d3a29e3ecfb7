"""Unit conversions shared across the simulator.

Powers are carried in watts internally; decibel forms only appear at the
edges (config files, CSV output, human-facing reports).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# CODATA 2018 exact values (SI redefinition).
PLANCK = 6.62607015e-34  # J s
SPEED_OF_LIGHT = 299_792_458.0  # m / s

WAVELENGTH_MIN_NM = 900.0
WAVELENGTH_MAX_NM = 1700.0


@dataclass(frozen=True)
class PhotonFlux:
    """Mean photon number per pulse at a fixed pulse rate."""

    photons_per_pulse: float
    pulse_rate: float  # Hz

    def __post_init__(self):
        if self.photons_per_pulse < 0:
            raise DomainError(f"photons_per_pulse must be >= 0, got {self.photons_per_pulse}")
        if self.pulse_rate <= 0:
            raise DomainError(f"pulse_rate must be > 0, got {self.pulse_rate}")


def check_wavelength(nm: float) -> float:
    if not WAVELENGTH_MIN_NM <= nm <= WAVELENGTH_MAX_NM:
        raise DomainError(
            f"wavelength {nm} nm outside the supported range "
            f"[{WAVELENGTH_MIN_NM:g}, {WAVELENGTH_MAX_NM:g}] nm"
        )
    return float(nm)


def check_power(watts: float) -> float:
    if watts < 0 or math.isnan(watts):
        raise DomainError(f"optical power must be >= 0 W, got {watts}")
    return float(watts)


def _scalar_or_array(out: np.ndarray):
    return out if out.ndim else float(out)


def db_to_linear(db):
    """Convert a decibel ratio to a linear factor, ``10**(db/10)``."""
    return _scalar_or_array(np.power(10.0, np.asarray(db, dtype=float) / 10.0))


def linear_to_db(x):
    """Inverse of :func:`db_to_linear`.

    Raises:
        DomainError: if any input is not strictly positive.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"decibel conversion needs a positive ratio, got {x!r}")
    return _scalar_or_array(10.0 * np.log10(arr))


def dbm_to_watts(dbm):
    return _scalar_or_array(np.asarray(db_to_linear(dbm)) * 1e-3)


def watts_to_dbm(watts):
    return linear_to_db(np.asarray(watts, dtype=float) * 1e3)


def photon_energy(wavelength_nm: float) -> float:
    """Energy of one photon at ``wavelength_nm``, in joules."""
    check_wavelength(wavelength_nm)
    return PLANCK * SPEED_OF_LIGHT / (wavelength_nm * 1e-9)


def flux_to_power(flux: PhotonFlux, wavelength_nm: float) -> float:
    """Average optical power (W) of a pulse train with the given photon flux."""
    return flux.photons_per_pulse * flux.pulse_rate * photon_energy(wavelength_nm)
