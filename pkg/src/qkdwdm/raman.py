"""Spontaneous Raman noise from classical lasers into the quantum passband.

Scatter coefficients are per km of fiber (integral-consistent): the forward
and backward closed forms below are exact integrals of the local scatter
``beta * P(l)`` propagated to Bob's receiver. Anti-Stokes/Stokes asymmetry and
the CWDM passband shape are folded into one coefficient per
(pump wavelength, direction).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Literal, Mapping, Optional, Tuple

import numpy as np

from .detector import DetectorSpec
from .errors import ConfigurationError
from .fiber import CwdmGrid, FiberSpec, QuantumChannelSpec, alpha_per_km
from .quantities import db_to_linear, photon_energy

Direction = Literal["forward", "backward"]
BackwardForm = Literal["integral", "paper"]

ALICE_TO_BOB = "alice_to_bob"
BOB_TO_ALICE = "bob_to_alice"

# Degenerate forward case: below this attenuation mismatch (1/km) the
# closed form is replaced by its analytic limit.
_DEGENERATE_ALPHA = 1e-9

RAMAN_TOLERANCE_DB = 10.0
TOLERANCE_MARGIN_CAP_DB = 200.0

BETA_CSV_HEADER = ("pump_nm", "direction", "beta_per_km", "ref_bandwidth_nm")


@dataclass(frozen=True)
class RamanCoefficientTable:
    """Measured scatter coefficients keyed by (pump nm, direction).

    ``entries`` maps ``(pump_nm, direction)`` to ``(beta_per_km, ref_bandwidth_nm)``.
    Coefficients give the scattered power collected in a band of
    ``ref_bandwidth_nm`` around the quantum channel per watt of in-fiber pump
    power and per km; they are rescaled linearly for other bandwidths.
    """

    entries: Mapping[Tuple[float, str], Tuple[float, float]]

    def __post_init__(self):
        clean = {}
        for (pump, direction), (beta, ref_bw) in dict(self.entries).items():
            if direction not in ("forward", "backward"):
                raise ConfigurationError(f"direction must be 'forward' or 'backward', got {direction!r}")
            if beta < 0:
                raise ConfigurationError(f"beta for {pump:g} nm/{direction} must be >= 0")
            if ref_bw <= 0:
                raise ConfigurationError(f"reference bandwidth for {pump:g} nm/{direction} must be > 0")
            clean[(float(pump), direction)] = (float(beta), float(ref_bw))
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_csv(cls, path) -> "RamanCoefficientTable":
        path = Path(path)
        entries = {}
        with path.open(newline="") as fh:
            reader = csv.DictReader(line for line in fh if not line.lstrip().startswith("#"))
            missing = set(BETA_CSV_HEADER) - set(reader.fieldnames or ())
            if missing:
                raise ConfigurationError(f"{path}: missing columns {sorted(missing)}")
            for row in reader:
                key = (float(row["pump_nm"]), row["direction"].strip())
                if key in entries:
                    raise ConfigurationError(f"{path}: duplicate entry for {key}")
                entries[key] = (float(row["beta_per_km"]), float(row["ref_bandwidth_nm"]))
        return cls(entries)

    def has(self, pump_nm: float, direction: str) -> bool:
        return self._key(pump_nm, direction) is not None

    def _key(self, pump_nm, direction):
        for p, d in self.entries:
            if d == direction and abs(p - pump_nm) < 1e-6:
                return (p, d)
        return None

    def beta(self, pump_nm: float, direction: str, bandwidth_nm: Optional[float] = None) -> float:
        key = self._key(pump_nm, direction)
        if key is None:
            raise ConfigurationError(
                f"no Raman coefficient for the {pump_nm:g} nm channel ({direction} scatter)"
            )
        beta, ref_bw = self.entries[key]
        if bandwidth_nm is None:
            return beta
        return beta * bandwidth_nm / ref_bw

    def scaled(self, factor: float) -> "RamanCoefficientTable":
        return RamanCoefficientTable({k: (b * factor, bw) for k, (b, bw) in self.entries.items()})


@dataclass(frozen=True)
class LaserSource:
    """A classical laser launched into the link.

    ``direction`` is the propagation direction; lasers travelling with the
    quantum signal (Alice to Bob) produce forward scatter at Bob.
    """

    name: str
    wavelength_nm: float
    direction: str
    launch_w: float

    @property
    def scatter_direction(self) -> str:
        return "forward" if self.direction == ALICE_TO_BOB else "backward"


@dataclass(frozen=True)
class NoiseBudget:
    forward_w: float
    backward_w: float
    raman_power_w: float  # at Bob's quantum receiver input (after demux)
    after_nbf_w: float
    effective_counts_per_gate: float = 0.0
    per_laser_w: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.after_nbf_w > self.raman_power_w * (1 + 1e-12):
            raise ConfigurationError("NBF output cannot exceed its input")
        if not 0.0 <= self.effective_counts_per_gate <= 1.0:
            raise ConfigurationError("counts per gate must lie in [0, 1]")


def forward_scatter(beta, power_w, alpha_d, alpha_q, length_km):
    """Co-propagating Raman power reaching the far end.

    Closed form of ``beta*I*exp(-alpha_q L) * int_0^L exp((alpha_q-alpha_d) l) dl``;
    attenuations are natural rates in 1/km. Accepts numpy arrays.
    """
    beta, power_w, alpha_d, alpha_q, length_km = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (beta, power_w, alpha_d, alpha_q, length_km))
    )
    delta = alpha_q - alpha_d
    degenerate = np.abs(delta) < _DEGENERATE_ALPHA
    safe = np.where(degenerate, 1.0, delta)
    # expm1 keeps full precision when the two attenuations nearly coincide
    integral = np.where(degenerate, length_km, np.expm1(delta * length_km) / safe)
    out = beta * power_w * np.exp(-alpha_q * length_km) * integral
    return out if out.ndim else float(out)


def backward_scatter(beta, power_w, alpha_d, alpha_q, length_km, form: BackwardForm = "integral"):
    """Counter-propagating Raman power returning to the launch end.

    ``form="integral"`` is ``beta*I*(1-exp(-(a_d+a_q)L))/(a_d+a_q)``, the exact
    integral with per-km ``beta``. ``form="paper"`` drops the
    ``1/(a_d+a_q)`` factor, which changes the units of ``beta`` to a
    saturated-power ratio.
    """
    beta, power_w, alpha_d, alpha_q, length_km = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (beta, power_w, alpha_d, alpha_q, length_km))
    )
    s = alpha_d + alpha_q
    saturation = -np.expm1(-s * length_km)
    if form == "integral":
        out = beta * power_w * saturation / s
    elif form == "paper":
        out = beta * power_w * saturation
    else:
        raise ConfigurationError(f"unknown backward form {form!r}")
    return out if out.ndim else float(out)


def forward_peak_length(alpha_d: float, alpha_q: float) -> float:
    """Fiber length at which forward scatter peaks (km)."""
    if abs(alpha_q - alpha_d) < _DEGENERATE_ALPHA:
        return 1.0 / alpha_q
    return math.log(alpha_q / alpha_d) / (alpha_q - alpha_d)


def total_raman_into_receiver(
    lasers: Iterable[LaserSource],
    fiber: FiberSpec,
    grid: CwdmGrid,
    qspec: QuantumChannelSpec,
    table: RamanCoefficientTable,
    length_km: float,
    backward_form: BackwardForm = "integral",
) -> NoiseBudget:
    """Raman power from all active lasers at Bob's quantum receiver.

    Each laser's in-fiber power is its launch power after its CWDM mux port.
    The collected scatter passes Bob's quantum demux port and then the
    narrow bandpass filter, whose rejection (including its own insertion loss)
    is applied as a single factor.
    """
    alpha_q = alpha_per_km(fiber, qspec.center)
    per_laser: Dict[str, float] = {}
    fwd = bwd = 0.0
    for laser in lasers:
        if laser.launch_w < 0:
            raise ConfigurationError(f"{laser.name}: launch power must be >= 0 W")
        direction = laser.scatter_direction
        beta = table.beta(laser.wavelength_nm, direction, grid.passband_width_nm)
        in_fiber = laser.launch_w * db_to_linear(-grid.insertion_loss_at(laser.wavelength_nm))
        alpha_d = alpha_per_km(fiber, laser.wavelength_nm)
        if direction == "forward":
            p = forward_scatter(beta, in_fiber, alpha_d, alpha_q, length_km)
            fwd += p
        else:
            p = backward_scatter(beta, in_fiber, alpha_d, alpha_q, length_km, form=backward_form)
            bwd += p
        per_laser[laser.name] = p
    demux = db_to_linear(-grid.insertion_loss_at(qspec.center))
    fwd *= demux
    bwd *= demux
    per_laser = {k: v * demux for k, v in per_laser.items()}
    total = fwd + bwd
    return NoiseBudget(
        forward_w=fwd,
        backward_w=bwd,
        raman_power_w=total,
        after_nbf_w=total * db_to_linear(-qspec.nbf_rejection_db),
        per_laser_w=per_laser,
    )


def counts_per_gate(
    noise_power_w: float,
    wavelength_nm: float,
    clock_rate: float,
    detector: DetectorSpec,
    receiver_loss_db: float = 0.0,
) -> float:
    """Probability that Raman noise registers a count in one detector gate.

    Noise photons arrive at random times, so they are detected with the
    non-synchronised efficiency. ``receiver_loss_db`` is any optical loss
    between the filter output and the detectors (interferometer, couplers).
    """
    if clock_rate <= 0:
        raise ConfigurationError(f"clock rate must be positive, got {clock_rate}")
    photons_per_gate = noise_power_w / photon_energy(wavelength_nm) / clock_rate
    p = photons_per_gate * detector.eta_async * db_to_linear(-receiver_loss_db)
    return min(p, 1.0)


@dataclass(frozen=True)
class ToleranceCheck:
    passed: bool
    margin_db: float


def raman_tolerance_check(signal_power_w: float, noise_power_w: float) -> ToleranceCheck:
    """Does the noise sit at least 10 dB below the quantum signal?

    ``margin_db`` is how far the noise is below that threshold (negative when
    the requirement is violated). Zero noise reports a capped margin.
    """
    if not signal_power_w > 0:
        raise ConfigurationError("signal power must be positive")
    if noise_power_w <= 0:
        return ToleranceCheck(True, TOLERANCE_MARGIN_CAP_DB)
    margin = 10.0 * math.log10(signal_power_w / noise_power_w) - RAMAN_TOLERANCE_DB
    margin = min(margin, TOLERANCE_MARGIN_CAP_DB)
    return ToleranceCheck(margin >= -1e-9, margin)
