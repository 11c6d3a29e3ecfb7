"""Scenario files, validation and fiber-length sweeps.

A scenario is a TOML document (schema in ``data/default.toml``). Fixture
files it references (Raman coefficients, clock jitter curve) are resolved
relative to the TOML file. :func:`validate_config` reports every problem it
finds with a dotted field path instead of stopping at the first one.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .classical import ClockChannelSpec, DataChannelSpec, clock_jitter_at, load_jitter_table
from .detector import DetectorSpec, ReceiverSpec, jitter_efficiency_factor
from .errors import ConfigurationError, QkdWdmError
from .fiber import CwdmGrid, FiberSpec, QuantumChannelSpec, attenuation_linear, end_to_end_loss_db
from .keyrate import N_MAX_DEFAULT, DecoyProtocolSpec, KeyRateReport, LinkParams, key_rate
from .planner import (
    ALICE_DATA,
    BOB_DATA,
    CLOCK,
    DATA_ROLES,
    QUANTUM,
    ROLES,
    ChannelAssignment,
    PlanConstraints,
    assign,
)
from .quantities import PhotonFlux, db_to_linear, flux_to_power
from .raman import ALICE_TO_BOB, BOB_TO_ALICE, NoiseBudget, RamanCoefficientTable, counts_per_gate
from .raman import raman_tolerance_check, total_raman_into_receiver

DATA_DIR = Path(__file__).resolve().parent / "data"
DEFAULT_CONFIG = DATA_DIR / "default.toml"

SWEEP_COLUMNS = (
    "length_km",
    "raman_fwd_w",
    "raman_bwd_w",
    "raman_after_filters_w",
    "p_r",
    "qber",
    "qber_floor",
    "qber_dark",
    "qber_raman",
    "sifted_bps",
    "secure_bps",
    "tolerance_margin_db",
)

BACKWARD_FORMS = ("integral", "paper")


@dataclass(frozen=True)
class Diagnostic:
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


class ScenarioError(ConfigurationError):
    """Scenario failed validation; ``diagnostics`` lists every problem."""

    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = tuple(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class SweepRange:
    from_km: float = 0.0
    to_km: float = 100.0
    step_km: float = 5.0

    def __post_init__(self):
        if not self.step_km > 0:
            raise ConfigurationError(f"sweep step must be > 0 km, got {self.step_km}")
        if self.from_km < 0 or self.to_km < self.from_km:
            raise ConfigurationError(f"sweep range [{self.from_km}, {self.to_km}] km is invalid")

    def lengths(self) -> np.ndarray:
        """Sweep points; ``to_km`` is included, an empty range gives no points."""
        if self.to_km == self.from_km:
            return np.empty(0)
        n = int(math.floor((self.to_km - self.from_km) / self.step_km + 1e-9))
        return self.from_km + self.step_km * np.arange(n + 1)


@dataclass(frozen=True)
class Scenario:
    fiber: FiberSpec
    grid: CwdmGrid
    quantum: QuantumChannelSpec
    receiver: ReceiverSpec
    protocol: DecoyProtocolSpec
    assignment: ChannelAssignment
    raman_table: RamanCoefficientTable
    sweep: SweepRange = field(default_factory=SweepRange)
    data_templates: Mapping[str, DataChannelSpec] = field(default_factory=dict)
    clock_template: Optional[ClockChannelSpec] = None
    backward_form: str = "integral"
    include_clock_raman: bool = True
    apply_jitter_penalty: bool = True
    session_s: float = 1.0
    n_max: int = N_MAX_DEFAULT
    pin_quantum: bool = True
    max_launch_dbm: float = 0.0
    raman_table_path: Optional[Path] = None
    jitter_table_path: Optional[Path] = None

    @property
    def detector(self) -> DetectorSpec:
        return self.receiver.detector

    def with_overrides(self, **changes) -> "Scenario":
        """Copy with fields replaced; mode flags also update the assignment."""
        s = replace(self, **{k: v for k, v in changes.items() if v is not None})
        if s.include_clock_raman != s.assignment.include_clock_raman:
            s = replace(s, assignment=replace(s.assignment, include_clock_raman=s.include_clock_raman))
        return s

    def with_assignment(self, wavelengths: Mapping[str, float]) -> "Scenario":
        a = assign(wavelengths, self.data_templates, self.clock_template, self.include_clock_raman)
        return replace(self, assignment=a, quantum=replace(self.quantum, center=a.quantum_nm))

    def plan_constraints(self, roles: Sequence[str] = ROLES, lengths_km: Optional[Sequence[float]] = None) -> PlanConstraints:
        kwargs = {}
        if lengths_km is not None:
            kwargs["lengths_km"] = tuple(lengths_km)
        return PlanConstraints(
            roles=tuple(roles),
            data_templates=self.data_templates,
            clock_template=self.clock_template,
            quantum=self.quantum,
            max_launch_dbm=self.max_launch_dbm,
            pin_quantum=self.pin_quantum,
            include_clock_raman=self.include_clock_raman,
            backward_form=self.backward_form,
            **kwargs,
        )


@dataclass(frozen=True)
class LinkReport:
    """Everything computed at one fiber length."""

    length_km: float
    noise: NoiseBudget
    raman_after_filters_w: float  # after NBF and temporal filtering
    p_r: float
    signal_w: float  # quantum signal power at the NBF output
    tolerance_margin_db: float
    jitter_ps: float
    eta_bob: float
    channel_transmission: float
    launch_dbm: Mapping[str, float]
    keyrate: KeyRateReport

    def row(self) -> Tuple[float, ...]:
        k = self.keyrate
        return (
            self.length_km,
            self.noise.forward_w,
            self.noise.backward_w,
            self.raman_after_filters_w,
            self.p_r,
            k.qber,
            k.qber_floor,
            k.qber_dark,
            k.qber_raman,
            k.sifted_rate_bps,
            k.secure_rate_bps,
            self.tolerance_margin_db,
        )


def fixed_quantum_loss_db(s: Scenario) -> float:
    """Length-independent losses on the quantum path: CWDM pair, connectors, NBF."""
    return end_to_end_loss_db(s.fiber.with_length(0.0), s.grid, s.quantum.center, s.quantum)


def evaluate_point(s: Scenario, length_km: float) -> LinkReport:
    length_km = float(length_km)
    fiber_l = s.fiber.with_length(length_km)
    det = s.detector
    budget = total_raman_into_receiver(
        s.assignment.lasers(fiber_l, s.grid), fiber_l, s.grid, s.quantum, s.raman_table, length_km, s.backward_form
    )
    p_r = counts_per_gate(budget.after_nbf_w, s.quantum.center, s.protocol.clock_rate, det, s.receiver.optical_loss_db)
    budget = replace(budget, effective_counts_per_gate=p_r)

    jitter = 0.0
    if s.assignment.clock is not None and s.assignment.clock.jitter_table:
        jitter = clock_jitter_at(s.assignment.clock, fiber_l, s.grid)
    factor = jitter_efficiency_factor(det, jitter) if s.apply_jitter_penalty else 1.0

    fixed = db_to_linear(-fixed_quantum_loss_db(s))
    eta_bob = s.receiver.eta_bob * fixed * factor
    t = attenuation_linear(s.fiber, s.quantum.center, length_km)
    link = LinkParams(t, eta_bob, det.dark_per_gate, p_r, det.afterpulse_prob)
    report = key_rate(s.protocol, link, s.session_s, s.n_max)

    mu = s.protocol.signal.mu
    signal_w = 0.0
    if mu > 0:
        signal_w = flux_to_power(PhotonFlux(mu, s.protocol.clock_rate), s.quantum.center) * t * fixed
    effective = budget.after_nbf_w * (det.eta_async / det.eta_sync if det.eta_sync else 0.0)
    margin = raman_tolerance_check(signal_w, effective).margin_db if signal_w > 0 else -math.inf
    return LinkReport(
        length_km=length_km,
        noise=budget,
        raman_after_filters_w=effective,
        p_r=p_r,
        signal_w=signal_w,
        tolerance_margin_db=margin,
        jitter_ps=jitter,
        eta_bob=eta_bob,
        channel_transmission=t,
        launch_dbm=s.assignment.launch_powers_dbm(fiber_l, s.grid),
        keyrate=report,
    )


def run_sweep(s: Scenario, lengths: Optional[Sequence[float]] = None) -> List[LinkReport]:
    """Evaluate every sweep length, in increasing order."""
    pts = s.sweep.lengths() if lengths is None else np.sort(np.asarray(lengths, dtype=float))
    return [evaluate_point(s, L) for L in pts]


def format_value(x: float) -> str:
    return format(float(x), ".10g")


def write_csv(header: Sequence[str], rows, out=None) -> str:
    """Render rows with fixed formatting; also writes ``out`` (path or file) if given."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else format_value(v) for v in row])
    text = buf.getvalue()
    if out is not None:
        if hasattr(out, "write"):
            out.write(text)
        else:
            Path(out).write_text(text, encoding="utf-8")
    return text


def sweep_csv(reports: Sequence[LinkReport], out=None) -> str:
    return write_csv(SWEEP_COLUMNS, (r.row() for r in reports), out)


# ---------------------------------------------------------------- loading


def _get(d: Mapping, key: str, default=None):
    return d.get(key, default) if isinstance(d, Mapping) else default


class _Collector:
    def __init__(self):
        self.items: List[Diagnostic] = []

    def add(self, path: str, message: str):
        self.items.append(Diagnostic(path, message))

    def build(self, path: str, fn, *args, **kwargs):
        """Call a constructor, turning its error into a diagnostic."""
        try:
            return fn(*args, **kwargs)
        except (QkdWdmError, ValueError, TypeError, KeyError) as exc:
            self.add(path, str(exc))
            return None


def _num(c: _Collector, d: Mapping, section: str, key: str, default=None, lo=None, hi=None, lo_open=False):
    if key not in d:
        if default is None:
            c.add(f"{section}.{key}", "missing")
        return default
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        c.add(f"{section}.{key}", f"expected a finite number, got {v!r}")
        return default
    v = float(v)
    if lo is not None and (v <= lo if lo_open else v < lo):
        c.add(f"{section}.{key}", f"must be {'>' if lo_open else '>='} {lo:g}, got {v:g}")
    if hi is not None and v > hi:
        c.add(f"{section}.{key}", f"must be <= {hi:g}, got {v:g}")
    return v


def _resolve(base: Path, name: str) -> Path:
    p = Path(name)
    return p if p.is_absolute() else base / p


def _parse(raw: Mapping[str, Any], base: Path, c: _Collector) -> Optional[Scenario]:
    """Build a scenario, recording every problem in ``c``."""
    sw = _get(raw, "sweep", {})
    f0 = _num(c, sw, "sweep", "from_km", 0.0, lo=0.0)
    f1 = _num(c, sw, "sweep", "to_km", 100.0, lo=0.0)
    step = _num(c, sw, "sweep", "step_km", 5.0, lo=0.0, lo_open=True)
    if f0 is not None and f1 is not None and f1 < f0:
        c.add("sweep.to_km", f"must be >= from_km ({f0:g}), got {f1:g}")
    sweep = c.build("sweep", SweepRange, f0, f1, step)

    modes = _get(raw, "modes", {})
    backward_form = modes.get("backward_form", "integral")
    if backward_form not in BACKWARD_FORMS:
        c.add("modes.backward_form", f"must be one of {BACKWARD_FORMS}, got {backward_form!r}")
    flags = {}
    for key, default in (("include_clock_raman", True), ("apply_jitter_penalty", True)):
        v = modes.get(key, default)
        if not isinstance(v, bool):
            c.add(f"modes.{key}", f"expected true/false, got {v!r}")
            v = default
        flags[key] = v

    fb = _get(raw, "fiber", {})
    atten = fb.get("attenuation_db_per_km")
    table = {}
    if not isinstance(atten, Mapping) or not atten:
        c.add("fiber.attenuation_db_per_km", "missing or empty wavelength -> dB/km table")
    else:
        for k, v in atten.items():
            try:
                nm = float(k)
            except ValueError:
                c.add(f"fiber.attenuation_db_per_km.{k}", "key must be a wavelength in nm")
                continue
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0:
                c.add(f"fiber.attenuation_db_per_km.{k}", f"must be > 0 dB/km, got {v!r}")
                continue
            table[nm] = float(v)
    fiber = c.build(
        "fiber",
        FiberSpec,
        table,
        _num(c, fb, "fiber", "dispersion_ps_per_nm_km", 4.0),
        0.0,
        _num(c, fb, "fiber", "connector_loss_db", 0.0, lo=0.0),
    ) if table else None

    gd = _get(raw, "grid", {})
    centers = gd.get("passband_centers_nm")
    if not isinstance(centers, list) or not centers:
        c.add("grid.passband_centers_nm", "missing or empty list")
        centers = []
    losses = gd.get("insertion_loss_db", [])
    grid = c.build(
        "grid",
        CwdmGrid,
        centers,
        _num(c, gd, "grid", "passband_width_nm", 13.0, lo=0.0, lo_open=True),
        losses,
        _num(c, gd, "grid", "adjacent_isolation_db", 30.0, lo=0.0),
    ) if centers else None

    qd = _get(raw, "quantum", {})
    quantum = c.build(
        "quantum",
        QuantumChannelSpec,
        _num(c, qd, "quantum", "center_nm", 1551.0),
        _num(c, qd, "quantum", "nbf_bandwidth_nm", 0.56, lo=0.0, lo_open=True),
        _num(c, qd, "quantum", "nbf_insertion_loss_db", 0.6, lo=0.0),
        _num(c, qd, "quantum", "nbf_rejection_db", 15.0, lo=0.0),
    )
    if quantum is not None and grid is not None:
        c.build("quantum.nbf_bandwidth_nm", quantum.check_fits, grid)

    dd = _get(raw, "detector", {})
    eta_sync = _num(c, dd, "detector", "eta_sync", 0.2, lo=0.0, hi=1.0)
    eta_async = _num(c, dd, "detector", "eta_async", 0.022962, lo=0.0, hi=1.0)
    if eta_sync is not None and eta_async is not None and eta_async > eta_sync:
        c.add("detector.eta_async", f"must not exceed eta_sync ({eta_sync:g}), got {eta_async:g}")
    detector = c.build(
        "detector",
        DetectorSpec,
        eta_sync,
        eta_async,
        _num(c, dd, "detector", "active_fwhm_ps", 100.0, lo=0.0, lo_open=True),
        _num(c, dd, "detector", "gate_period_ps", 500.0, lo=0.0, lo_open=True),
        _num(c, dd, "detector", "dark_per_gate", 0.0, lo=0.0, hi=1.0),
        _num(c, dd, "detector", "afterpulse_prob", 0.0, lo=0.0, hi=1.0),
    )
    rd = _get(raw, "receiver", {})
    rloss = _num(c, rd, "receiver", "optical_loss_db", 0.0, lo=0.0)
    receiver = c.build("receiver", ReceiverSpec, detector, rloss) if detector else None

    pd = _get(raw, "protocol", {})
    intens = pd.get("intensities")
    classes = []
    if not isinstance(intens, list) or not intens:
        c.add("protocol.intensities", "missing list of [mu, probability] pairs")
    else:
        for i, pair in enumerate(intens):
            if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, (int, float)) for x in pair)):
                c.add(f"protocol.intensities[{i}]", f"expected [mu, probability], got {pair!r}")
                continue
            classes.append((float(pair[0]), float(pair[1])))
        if classes:
            total = math.fsum(p for _, p in classes)
            if abs(total - 1.0) > 1e-12:
                c.add("protocol.intensities", f"class probabilities sum to {total!r}, not 1")
            if len(classes) < 3:
                c.add("protocol.intensities", f"decoy estimation needs >= 3 intensity classes, got {len(classes)}")
    signal_index = pd.get("signal_index", 0)
    protocol = None
    if classes and abs(math.fsum(p for _, p in classes) - 1.0) <= 1e-12:
        protocol = c.build(
            "protocol",
            DecoyProtocolSpec,
            classes,
            _num(c, pd, "protocol", "clock_rate_hz", 1e9, lo=0.0, lo_open=True),
            _num(c, pd, "protocol", "sifting_factor", 0.5, lo=0.0, lo_open=True, hi=1.0),
            _num(c, pd, "protocol", "f_ec", 1.1, lo=1.0),
            _num(c, pd, "protocol", "e_opt", 0.0, lo=0.0, hi=0.5),
            signal_index,
        )
    session_s = _num(c, pd, "protocol", "session_s", 1.0, lo=0.0, lo_open=True)
    n_max = pd.get("n_max", N_MAX_DEFAULT)
    if not isinstance(n_max, int) or isinstance(n_max, bool) or n_max < 2:
        c.add("protocol.n_max", f"must be an integer >= 2, got {n_max!r}")
        n_max = N_MAX_DEFAULT

    ad = _get(raw, "assignment", {})
    wavelengths = {}
    for role in ROLES:
        if role in ad:
            v = ad[role]
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                c.add(f"assignment.{role}", f"expected a wavelength in nm, got {v!r}")
                continue
            wavelengths[role] = float(v)
            if grid is not None:
                try:
                    grid.index_of(float(v))
                except QkdWdmError as exc:
                    c.add(f"assignment.{role}", str(exc))
    for k in ad:
        if k not in ROLES:
            c.add(f"assignment.{k}", f"unknown role; expected one of {ROLES}")
    if QUANTUM not in wavelengths:
        c.add("assignment.quantum", "missing")
    elif quantum is not None and wavelengths[QUANTUM] != quantum.center:
        c.add("assignment.quantum", f"{wavelengths[QUANTUM]:g} nm differs from quantum.center_nm {quantum.center:g}")
    if len(set(wavelengths.values())) != len(wavelengths):
        c.add("assignment", f"roles must occupy distinct passbands: {wavelengths}")

    data_templates = {}
    default_dir = {ALICE_DATA: ALICE_TO_BOB, BOB_DATA: BOB_TO_ALICE}
    for role in DATA_ROLES:
        sec = raw.get(role)
        if sec is None:
            if role in wavelengths:
                c.add(role, "section missing for an assigned data channel")
            continue
        launch = sec.get("launch_power_dbm", "auto")
        if launch == "auto":
            launch = None
        elif isinstance(launch, bool) or not isinstance(launch, (int, float)):
            c.add(f"{role}.launch_power_dbm", f"expected dBm or \"auto\", got {launch!r}")
            launch = None
        direction = sec.get("direction", default_dir[role])
        if direction not in (ALICE_TO_BOB, BOB_TO_ALICE):
            c.add(f"{role}.direction", f"must be {ALICE_TO_BOB!r} or {BOB_TO_ALICE!r}, got {direction!r}")
        spec = c.build(
            role,
            DataChannelSpec,
            wavelengths.get(role, 0.0),
            _num(c, sec, role, "bit_rate", 1.25e9, lo=0.0, lo_open=True),
            _num(c, sec, role, "sensitivity_dbm", -36.8),
            launch,
            direction,
            _num(c, sec, role, "launch_margin_db", 3.0, lo=0.0),
            _num(c, sec, role, "ber_slope_decades_per_db", -1.5),
        )
        if spec is not None:
            data_templates[role] = spec

    clock_template = None
    jitter_path = None
    cd = raw.get("clock")
    if cd is None:
        if CLOCK in wavelengths:
            c.add("clock", "section missing for an assigned clock channel")
    else:
        jitter = ()
        if "jitter_table" in cd:
            jitter_path = _resolve(base, str(cd["jitter_table"]))
            if not jitter_path.is_file():
                c.add("clock.jitter_table", f"file not found: {jitter_path}")
            else:
                jitter = c.build("clock.jitter_table", load_jitter_table, jitter_path) or ()
                if not jitter:
                    c.add("clock.jitter_table", f"{jitter_path} has no rows")
        clock_template = c.build(
            "clock",
            ClockChannelSpec,
            wavelengths.get(CLOCK, 0.0),
            _num(c, cd, "clock", "pulse_rate_hz", 10e6, lo=0.0, lo_open=True),
            _num(c, cd, "clock", "launch_power_dbm", -28.7),
            jitter,
        )

    raman = None
    beta_path = None
    rm = _get(raw, "raman", {})
    if "table" not in rm:
        c.add("raman.table", "missing path to the Raman coefficient CSV")
    else:
        beta_path = _resolve(base, str(rm["table"]))
        if not beta_path.is_file():
            c.add("raman.table", f"file not found: {beta_path}")
        else:
            raman = c.build("raman.table", RamanCoefficientTable.from_csv, beta_path)

    pl = _get(raw, "planner", {})
    pin = pl.get("pin_quantum", True)
    if not isinstance(pin, bool):
        c.add("planner.pin_quantum", f"expected true/false, got {pin!r}")
        pin = True
    max_launch = _num(c, pl, "planner", "max_launch_dbm", 0.0)

    assignment = None
    if QUANTUM in wavelengths and len(set(wavelengths.values())) == len(wavelengths):
        assignment = c.build(
            "assignment",
            assign,
            wavelengths,
            data_templates,
            clock_template,
            flags["include_clock_raman"],
        )

    if assignment is not None and raman is not None and fiber is not None and grid is not None:
        for role, nm in sorted(assignment.wavelengths.items()):
            if role == QUANTUM:
                continue
            try:
                end_to_end_loss_db(fiber, grid, nm)
            except QkdWdmError as exc:
                c.add(f"assignment.{role}", str(exc))
        probe = fiber.with_length(0.0)
        for laser in assignment.lasers(probe, grid):
            if not raman.has(laser.wavelength_nm, laser.scatter_direction):
                c.add(
                    "raman.table",
                    f"no beta entry for {laser.name} ({laser.wavelength_nm:g} nm, {laser.scatter_direction} scatter)",
                )
    if quantum is not None and fiber is not None:
        try:
            end_to_end_loss_db(fiber, grid, quantum.center, quantum) if grid is not None else None
        except QkdWdmError as exc:
            c.add("quantum.center_nm", str(exc))

    if c.items:
        return None
    return Scenario(
        fiber=fiber,
        grid=grid,
        quantum=quantum,
        receiver=receiver,
        protocol=protocol,
        assignment=assignment,
        raman_table=raman,
        sweep=sweep,
        data_templates=data_templates,
        clock_template=clock_template,
        backward_form=backward_form,
        include_clock_raman=flags["include_clock_raman"],
        apply_jitter_penalty=flags["apply_jitter_penalty"],
        session_s=session_s,
        n_max=n_max,
        pin_quantum=pin,
        max_launch_dbm=max_launch,
        raman_table_path=beta_path,
        jitter_table_path=jitter_path,
    )


def read_config(path=None) -> Tuple[Dict[str, Any], Path]:
    """Parse a TOML scenario; returns the raw mapping and its directory."""
    path = Path(path) if path is not None else DEFAULT_CONFIG
    try:
        with path.open("rb") as fh:
            return tomllib.load(fh), path.resolve().parent
    except OSError as exc:
        raise ScenarioError([Diagnostic("config", f"cannot read {path}: {exc.strerror or exc}")]) from exc
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioError([Diagnostic("config", f"{path}: {exc}")]) from exc


def validate_config(raw: Mapping[str, Any], base_dir=DATA_DIR) -> List[Diagnostic]:
    """All problems in a raw scenario mapping; empty when it is valid."""
    c = _Collector()
    _parse(raw, Path(base_dir), c)
    return c.items


def validate(path=None) -> List[Diagnostic]:
    try:
        raw, base = read_config(path)
    except ScenarioError as exc:
        return list(exc.diagnostics)
    return validate_config(raw, base)


def scenario_from_mapping(raw: Mapping[str, Any], base_dir=DATA_DIR) -> Scenario:
    c = _Collector()
    s = _parse(raw, Path(base_dir), c)
    if c.items:
        raise ScenarioError(c.items)
    return s


def load_scenario(path=None) -> Scenario:
    """Load and validate a scenario file (the shipped default if ``path`` is None).

    Raises:
        ScenarioError: With one diagnostic per problem found.
    """
    raw, base = read_config(path)
    return scenario_from_mapping(raw, base)


def default_scenario() -> Scenario:
    return load_scenario(DEFAULT_CONFIG)
