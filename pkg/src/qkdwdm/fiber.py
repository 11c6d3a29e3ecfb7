"""Fiber and CWDM grid model.

Attenuation is tabulated per wavelength in dB/km and interpolated linearly
between table entries. Every loss helper here returns decibels except
:func:`attenuation_linear`, which returns the transmission factor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import ConfigurationError, PlanningError
from .quantities import check_wavelength

DB_PER_KM_TO_PER_KM = math.log(10.0) / 10.0

# Single measured point for the dispersion penalty: 1 dB on the 1.25 Gb/s data
# channels at 90 km of 4 ps/(nm km) fiber.
DISPERSION_ANCHOR_LENGTH_KM = 90.0
DISPERSION_ANCHOR_PS_PER_NM_KM = 4.0
DISPERSION_ANCHOR_BIT_RATE = 1.25e9
DISPERSION_ANCHOR_PENALTY_DB = 1.0


@dataclass(frozen=True)
class FiberSpec:
    attenuation_db_per_km: Mapping[float, float]
    dispersion_ps_per_nm_km: float = 4.0
    length_km: float = 0.0
    connector_loss_db: float = 0.0

    def __post_init__(self):
        table = {float(k): float(v) for k, v in dict(self.attenuation_db_per_km).items()}
        if not table:
            raise ConfigurationError("attenuation table is empty")
        for nm, a in table.items():
            check_wavelength(nm)
            if not a > 0:
                raise ConfigurationError(f"attenuation at {nm:g} nm must be > 0 dB/km, got {a}")
        if self.length_km < 0:
            raise ConfigurationError(f"fiber length must be >= 0 km, got {self.length_km}")
        if self.connector_loss_db < 0:
            raise ConfigurationError("connector loss must be >= 0 dB")
        object.__setattr__(self, "attenuation_db_per_km", dict(sorted(table.items())))

    def with_length(self, length_km: float) -> "FiberSpec":
        return replace(self, length_km=float(length_km))


@dataclass(frozen=True)
class CwdmGrid:
    passband_centers: Sequence[float]
    passband_width_nm: float = 13.0
    insertion_loss_db: Sequence[float] = ()
    adjacent_isolation_db: float = 30.0

    def __post_init__(self):
        centers = tuple(float(c) for c in self.passband_centers)
        if any(b <= a for a, b in zip(centers, centers[1:])):
            raise ConfigurationError(f"passband centers must be strictly increasing: {centers}")
        for c in centers:
            check_wavelength(c)
        losses = tuple(float(x) for x in self.insertion_loss_db) or (0.0,) * len(centers)
        if len(losses) != len(centers):
            raise ConfigurationError("need one insertion loss per passband")
        if any(not 0.0 <= x <= 3.0 for x in losses):
            raise ConfigurationError(f"CWDM insertion losses must lie in [0, 3] dB: {losses}")
        if self.passband_width_nm <= 0:
            raise ConfigurationError("passband width must be positive")
        if self.adjacent_isolation_db < 0:
            raise ConfigurationError("adjacent isolation must be >= 0 dB")
        object.__setattr__(self, "passband_centers", centers)
        object.__setattr__(self, "insertion_loss_db", losses)

    def index_of(self, wavelength_nm: float) -> int:
        for i, c in enumerate(self.passband_centers):
            if abs(c - wavelength_nm) < 1e-6:
                return i
        raise PlanningError(
            f"{wavelength_nm:g} nm is not assigned to a CWDM passband "
            f"(centers: {', '.join(f'{c:g}' for c in self.passband_centers)})"
        )

    def insertion_loss_at(self, wavelength_nm: float) -> float:
        return self.insertion_loss_db[self.index_of(wavelength_nm)]


@dataclass(frozen=True)
class QuantumChannelSpec:
    center: float = 1551.0
    nbf_bandwidth_nm: float = 0.56
    nbf_insertion_loss_db: float = 0.6
    nbf_rejection_db: float = 15.0

    def __post_init__(self):
        check_wavelength(self.center)
        if self.nbf_bandwidth_nm <= 0:
            raise ConfigurationError("NBF bandwidth must be positive")
        if self.nbf_insertion_loss_db < 0 or self.nbf_rejection_db < 0:
            raise ConfigurationError("NBF losses must be >= 0 dB")

    def check_fits(self, grid: CwdmGrid) -> None:
        if not self.nbf_bandwidth_nm < grid.passband_width_nm:
            raise ConfigurationError(
                f"NBF bandwidth {self.nbf_bandwidth_nm} nm must be narrower than the "
                f"CWDM passband ({grid.passband_width_nm} nm)"
            )


def attenuation_db_per_km(fiber: FiberSpec, wavelength_nm: float) -> float:
    """Attenuation coefficient at ``wavelength_nm``, linearly interpolated in dB/km."""
    nms = np.fromiter(fiber.attenuation_db_per_km.keys(), float)
    vals = np.fromiter(fiber.attenuation_db_per_km.values(), float)
    if not nms[0] - 1e-9 <= wavelength_nm <= nms[-1] + 1e-9:
        raise ConfigurationError(
            f"{wavelength_nm:g} nm lies outside the attenuation table "
            f"[{nms[0]:g}, {nms[-1]:g}] nm"
        )
    return float(np.interp(wavelength_nm, nms, vals))


def alpha_per_km(fiber: FiberSpec, wavelength_nm: float) -> float:
    """Attenuation as a natural (1/km) power-decay rate."""
    return attenuation_db_per_km(fiber, wavelength_nm) * DB_PER_KM_TO_PER_KM


def attenuation_linear(fiber: FiberSpec, wavelength_nm: float, distance_km: float) -> float:
    """Power transmission through ``distance_km`` of fiber, in (0, 1]."""
    a = attenuation_db_per_km(fiber, wavelength_nm)
    return 10.0 ** (-a * distance_km / 10.0)


def dispersion_penalty_db(fiber: FiberSpec, wavelength_nm: float, bit_rate: float) -> float:
    """Receiver power penalty from chromatic dispersion.

    Linear in the bit-rate x dispersion x length product, scaled from the one
    measured point (1 dB at 90 km, 4 ps/(nm km), 1.25 Gb/s). The fiber
    dispersion is taken as wavelength-flat over the CWDM grid, so
    ``wavelength_nm`` is only range-checked.
    """
    if bit_rate <= 0:
        raise ConfigurationError(f"bit rate must be positive, got {bit_rate}")
    check_wavelength(wavelength_nm)
    scale = (
        (fiber.length_km / DISPERSION_ANCHOR_LENGTH_KM)
        * (abs(fiber.dispersion_ps_per_nm_km) / DISPERSION_ANCHOR_PS_PER_NM_KM)
        * (bit_rate / DISPERSION_ANCHOR_BIT_RATE)
    )
    return DISPERSION_ANCHOR_PENALTY_DB * scale


def end_to_end_loss_db(
    fiber: FiberSpec,
    grid: CwdmGrid,
    wavelength_nm: float,
    quantum: Optional[QuantumChannelSpec] = None,
) -> float:
    """Total loss of a channel: fiber + mux + demux + connectors (+ NBF).

    Pass ``quantum`` when the channel is the quantum channel so that the
    narrow bandpass filter insertion loss is added. The dispersion penalty is
    not a loss and is kept separate (see :func:`dispersion_penalty_db`).
    """
    cwdm = grid.insertion_loss_at(wavelength_nm)
    fiber_db = attenuation_db_per_km(fiber, wavelength_nm) * fiber.length_km
    total = fiber_db + 2.0 * cwdm + fiber.connector_loss_db
    if quantum is not None:
        total += quantum.nbf_insertion_loss_db
    return total
