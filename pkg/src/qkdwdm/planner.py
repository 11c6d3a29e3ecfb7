"""Assignment of quantum, clock and data channels to CWDM passbands.

The search is exhaustive: every injective role-to-band map is scored by the
worst Raman power reaching the quantum receiver over a set of fiber lengths.
Candidates that break a constraint stay in the report with an infinite
objective and the list of what they violate.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .classical import ClockChannelSpec, DataChannelSpec, data_launch_dbm, min_launch_power
from .errors import ConfigurationError, PlanningError
from .fiber import CwdmGrid, FiberSpec, QuantumChannelSpec, attenuation_db_per_km
from .quantities import dbm_to_watts
from .raman import ALICE_TO_BOB, BackwardForm, LaserSource, RamanCoefficientTable, total_raman_into_receiver

QUANTUM = "quantum"
CLOCK = "clock"
ALICE_DATA = "alice_data"
BOB_DATA = "bob_data"
ROLES = (QUANTUM, CLOCK, ALICE_DATA, BOB_DATA)
DATA_ROLES = (ALICE_DATA, BOB_DATA)

DEFAULT_LENGTHS_KM = tuple(float(x) for x in np.arange(0.0, 100.0 + 1e-9, 5.0))


@dataclass(frozen=True)
class ChannelAssignment:
    """Passband per role, plus the channel specs placed on those bands.

    ``data`` and ``clock`` carry the wavelength of their assigned band.
    Data launch powers may depend on fiber length (power control), so they
    are computed on demand by :meth:`launch_powers_dbm`.
    """

    wavelengths: Mapping[str, float]
    data: Mapping[str, DataChannelSpec] = field(default_factory=dict)
    clock: Optional[ClockChannelSpec] = None
    include_clock_raman: bool = True

    def __post_init__(self):
        wl = {r: float(w) for r, w in dict(self.wavelengths).items()}
        unknown = set(wl) - set(ROLES)
        if unknown:
            raise ConfigurationError(f"unknown roles {sorted(unknown)}")
        if len(set(wl.values())) != len(wl):
            raise ConfigurationError(f"roles must occupy distinct passbands: {wl}")
        object.__setattr__(self, "wavelengths", wl)
        object.__setattr__(self, "data", dict(self.data))

    @property
    def quantum_nm(self) -> float:
        return self.wavelengths[QUANTUM]

    def launch_powers_dbm(self, fiber: FiberSpec, grid: CwdmGrid) -> Dict[str, float]:
        out = {role: data_launch_dbm(spec, fiber, grid) for role, spec in self.data.items()}
        if self.clock is not None:
            out[CLOCK] = self.clock.launch_power_dbm
        return out

    def lasers(self, fiber: FiberSpec, grid: CwdmGrid) -> List[LaserSource]:
        """Classical lasers in the fiber at ``fiber.length_km``."""
        out = [
            LaserSource(role, spec.wavelength, spec.direction, float(dbm_to_watts(data_launch_dbm(spec, fiber, grid))))
            for role, spec in sorted(self.data.items())
        ]
        if self.clock is not None and self.include_clock_raman:
            out.append(LaserSource(CLOCK, self.clock.wavelength, ALICE_TO_BOB, float(dbm_to_watts(self.clock.launch_power_dbm))))
        return out


def assign(
    wavelengths: Mapping[str, float],
    data_templates: Mapping[str, DataChannelSpec],
    clock_template: Optional[ClockChannelSpec],
    include_clock_raman: bool = True,
) -> ChannelAssignment:
    """Place channel templates on the bands given in ``wavelengths``."""
    data = {
        role: replace(data_templates[role], wavelength=wavelengths[role])
        for role in DATA_ROLES
        if role in wavelengths
    }
    clock = None
    if CLOCK in wavelengths:
        if clock_template is None:
            raise ConfigurationError("clock role assigned but no clock channel configured")
        clock = replace(clock_template, wavelength=wavelengths[CLOCK])
    return ChannelAssignment(wavelengths, data, clock, include_clock_raman)


def evaluate_assignment(
    a: ChannelAssignment,
    fiber: FiberSpec,
    grid: CwdmGrid,
    table: RamanCoefficientTable,
    length_km: float,
    quantum: Optional[QuantumChannelSpec] = None,
    backward_form: BackwardForm = "integral",
) -> float:
    """Raman power (W) entering the quantum receiver, before the NBF."""
    qspec = replace(quantum or QuantumChannelSpec(), center=a.quantum_nm)
    fiber_l = fiber.with_length(length_km)
    budget = total_raman_into_receiver(a.lasers(fiber_l, grid), fiber_l, grid, qspec, table, length_km, backward_form)
    return budget.raman_power_w


@dataclass(frozen=True)
class PlanConstraints:
    roles: Tuple[str, ...] = ROLES
    data_templates: Mapping[str, DataChannelSpec] = field(default_factory=dict)
    clock_template: Optional[ClockChannelSpec] = None
    quantum: QuantumChannelSpec = field(default_factory=QuantumChannelSpec)
    lengths_km: Tuple[float, ...] = DEFAULT_LENGTHS_KM
    max_launch_dbm: float = 0.0
    pin_quantum: bool = True
    include_clock_raman: bool = True
    backward_form: BackwardForm = "integral"

    def __post_init__(self):
        roles = tuple(self.roles)
        if QUANTUM not in roles:
            raise ConfigurationError("the quantum role is required")
        if len(set(roles)) != len(roles) or set(roles) - set(ROLES):
            raise ConfigurationError(f"roles must be distinct members of {ROLES}, got {roles}")
        missing = [r for r in roles if r in DATA_ROLES and r not in self.data_templates]
        if missing:
            raise ConfigurationError(f"no channel spec for roles {missing}")
        if not self.lengths_km:
            raise ConfigurationError("at least one planning length is required")
        object.__setattr__(self, "roles", roles)
        object.__setattr__(self, "lengths_km", tuple(float(x) for x in self.lengths_km))


@dataclass(frozen=True)
class Candidate:
    wavelengths: Mapping[str, float]
    objective_w: float  # inf when infeasible
    violations: Tuple[str, ...] = ()

    @property
    def feasible(self) -> bool:
        return not self.violations

    def key(self, roles: Sequence[str]) -> Tuple[float, ...]:
        return tuple(self.wavelengths[r] for r in roles)


@dataclass(frozen=True)
class PlanResult:
    assignment: ChannelAssignment
    objective_w: float
    candidates: Tuple[Candidate, ...]
    roles: Tuple[str, ...]


def lowest_loss_band(fiber: FiberSpec, bands: Sequence[float]) -> float:
    """Band with the smallest fiber attenuation; ties go to the shorter wavelength."""
    return min(sorted(bands), key=lambda nm: attenuation_db_per_km(fiber, nm))


def _violations(a: ChannelAssignment, fiber, grid, table, c: PlanConstraints, pinned) -> List[str]:
    out = []
    if pinned is not None and a.quantum_nm != pinned:
        out.append(f"quantum must use the lowest-loss band {pinned:g} nm")
    longest = fiber.with_length(max(c.lengths_km))
    for role, spec in sorted(a.data.items()):
        need = min_launch_power(spec, longest, grid, spec.launch_margin_db)
        if need > c.max_launch_dbm:
            out.append(
                f"{role} at {spec.wavelength:g} nm needs {need:.2f} dBm at {longest.length_km:g} km, "
                f"above the {c.max_launch_dbm:g} dBm launch cap"
            )
        elif spec.launch_power_dbm is not None and spec.launch_power_dbm < need:
            out.append(f"{role} launch {spec.launch_power_dbm:g} dBm is below the required {need:.2f} dBm")
    for laser in a.lasers(longest, grid):
        if not table.has(laser.wavelength_nm, laser.scatter_direction):
            out.append(f"no Raman coefficient for {laser.name} at {laser.wavelength_nm:g} nm ({laser.scatter_direction})")
    return out


def search(
    fiber: FiberSpec,
    grid: CwdmGrid,
    table: RamanCoefficientTable,
    constraints: PlanConstraints,
    bands: Optional[Sequence[float]] = None,
) -> PlanResult:
    """Score every injective role-to-band map and pick the best feasible one.

    Args:
        bands: Subset of grid passbands to use; defaults to all of them. Order
            does not matter.

    Raises:
        PlanningError: Fewer bands than roles, or no candidate is feasible.
    """
    c = constraints
    bands = sorted(float(b) for b in (grid.passband_centers if bands is None else bands))
    if len(set(bands)) != len(bands):
        raise PlanningError(f"duplicate bands in {bands}")
    for b in bands:
        grid.index_of(b)
    if len(bands) < len(c.roles):
        raise PlanningError(
            f"{len(c.roles)} roles need at least {len(c.roles)} passbands, got {len(bands)}",
            violations=[f"only {len(bands)} passbands for roles {list(c.roles)}"],
        )
    pinned = lowest_loss_band(fiber, bands) if c.pin_quantum else None

    candidates = []
    for combo in itertools.permutations(bands, len(c.roles)):
        wl = dict(zip(c.roles, combo))
        a = assign(wl, c.data_templates, c.clock_template, c.include_clock_raman)
        bad = _violations(a, fiber, grid, table, c, pinned)
        if bad:
            candidates.append(Candidate(wl, math.inf, tuple(bad)))
            continue
        worst = max(
            evaluate_assignment(a, fiber, grid, table, length, c.quantum, c.backward_form) for length in c.lengths_km
        )
        candidates.append(Candidate(wl, worst))

    candidates.sort(key=lambda cand: (cand.objective_w, cand.key(c.roles)))
    best = candidates[0]
    if not best.feasible:
        seen = []
        for cand in candidates:
            for v in cand.violations:
                if v not in seen:
                    seen.append(v)
        raise PlanningError("no feasible channel assignment", violations=seen)
    assignment = assign(best.wavelengths, c.data_templates, c.clock_template, c.include_clock_raman)
    return PlanResult(assignment, best.objective_w, tuple(candidates), c.roles)


def plan(
    fiber: FiberSpec,
    grid: CwdmGrid,
    table: RamanCoefficientTable,
    constraints: PlanConstraints,
    bands: Optional[Sequence[float]] = None,
) -> ChannelAssignment:
    """Best feasible assignment; see :func:`search` for the full candidate table."""
    return search(fiber, grid, table, constraints, bands).assignment
