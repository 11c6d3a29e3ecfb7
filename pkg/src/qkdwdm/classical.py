"""Data and clock channel feasibility: BER curve, launch power, clock jitter."""
from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import ConfigurationError
from .fiber import CwdmGrid, FiberSpec, dispersion_penalty_db, end_to_end_loss_db
from .raman import ALICE_TO_BOB, BOB_TO_ALICE

BER_AT_SENSITIVITY = 1e-9
BER_FLOOR = 1e-15
BER_CEILING = 0.5

JITTER_CSV_HEADER = ("received_dbm", "jitter_ps")


class JitterTableClampWarning(UserWarning):
    """Received clock power fell outside the tabulated jitter curve."""


@dataclass(frozen=True)
class DataChannelSpec:
    """One direction of the bidirectional Gb/s data link.

    ``launch_power_dbm=None`` means the launch power is set per fiber length
    to the receiver sensitivity plus path loss plus ``launch_margin_db``.
    """

    wavelength: float
    bit_rate: float = 1.25e9
    sensitivity_dbm: float = -36.8
    launch_power_dbm: Optional[float] = None
    direction: str = ALICE_TO_BOB
    launch_margin_db: float = 3.0
    ber_slope_decades_per_db: float = -1.5

    def __post_init__(self):
        if self.bit_rate <= 0:
            raise ConfigurationError("bit rate must be positive")
        if self.direction not in (ALICE_TO_BOB, BOB_TO_ALICE):
            raise ConfigurationError(f"unknown direction {self.direction!r}")
        if self.ber_slope_decades_per_db >= 0:
            raise ConfigurationError("BER slope must be negative (BER falls with power)")


@dataclass(frozen=True)
class ClockChannelSpec:
    wavelength: float
    pulse_rate: float = 10e6
    launch_power_dbm: float = -28.7
    jitter_table: Sequence[Tuple[float, float]] = ()

    def __post_init__(self):
        if self.pulse_rate <= 0:
            raise ConfigurationError("clock pulse rate must be positive")
        table = tuple((float(p), float(j)) for p, j in self.jitter_table)
        if any(b[0] <= a[0] for a, b in zip(table, table[1:])):
            raise ConfigurationError("jitter table must be sorted by strictly increasing power")
        if any(b[1] > a[1] for a, b in zip(table, table[1:])):
            raise ConfigurationError("jitter must not increase with received power")
        if any(j < 0 for _, j in table):
            raise ConfigurationError("jitter values must be >= 0 ps")
        object.__setattr__(self, "jitter_table", table)


def load_jitter_table(path) -> Tuple[Tuple[float, float], ...]:
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.DictReader(line for line in fh if not line.lstrip().startswith("#"))
        missing = set(JITTER_CSV_HEADER) - set(reader.fieldnames or ())
        if missing:
            raise ConfigurationError(f"{path}: missing columns {sorted(missing)}")
        rows = [(float(r["received_dbm"]), float(r["jitter_ps"])) for r in reader]
    return tuple(sorted(rows))


def ber_at_power(spec: DataChannelSpec, received_dbm: float) -> float:
    """Bit error ratio at a received power, log-linear around the sensitivity."""
    log_ber = np.log10(BER_AT_SENSITIVITY) + spec.ber_slope_decades_per_db * (
        received_dbm - spec.sensitivity_dbm
    )
    return float(np.clip(10.0 ** log_ber, BER_FLOOR, BER_CEILING))


def data_path_loss_db(spec: DataChannelSpec, fiber: FiberSpec, grid: CwdmGrid) -> float:
    """Path loss plus dispersion penalty for a data channel."""
    return end_to_end_loss_db(fiber, grid, spec.wavelength) + dispersion_penalty_db(
        fiber, spec.wavelength, spec.bit_rate
    )


def min_launch_power(spec: DataChannelSpec, fiber: FiberSpec, grid: CwdmGrid, margin_db: float = 0.0) -> float:
    """Smallest launch power (dBm) meeting the sensitivity with ``margin_db`` to spare."""
    return spec.sensitivity_dbm + data_path_loss_db(spec, fiber, grid) + margin_db


def data_launch_dbm(spec: DataChannelSpec, fiber: FiberSpec, grid: CwdmGrid) -> float:
    """Launch power actually used: fixed if configured, else power-controlled."""
    if spec.launch_power_dbm is not None:
        return spec.launch_power_dbm
    return min_launch_power(spec, fiber, grid, spec.launch_margin_db)


def clock_received_dbm(spec: ClockChannelSpec, fiber: FiberSpec, grid: CwdmGrid) -> float:
    return spec.launch_power_dbm - end_to_end_loss_db(fiber, grid, spec.wavelength)


def interpolate_jitter(table: Sequence[Tuple[float, float]], received_dbm: float) -> float:
    if not table:
        raise ConfigurationError("clock jitter table is empty")
    powers = np.array([p for p, _ in table])
    jitters = np.array([j for _, j in table])
    if received_dbm < powers[0] or received_dbm > powers[-1]:
        warnings.warn(
            f"received clock power {received_dbm:.2f} dBm outside jitter table "
            f"[{powers[0]:g}, {powers[-1]:g}] dBm; using nearest entry",
            JitterTableClampWarning,
            stacklevel=3,
        )
    return float(np.interp(received_dbm, powers, jitters))


def clock_jitter_at(spec: ClockChannelSpec, fiber: FiberSpec, grid: CwdmGrid, length_km: Optional[float] = None) -> float:
    """RMS Alice-Bob timing jitter (ps) at the clock power received over the link."""
    if length_km is not None:
        fiber = fiber.with_length(length_km)
    return interpolate_jitter(spec.jitter_table, clock_received_dbm(spec, fiber, grid))
