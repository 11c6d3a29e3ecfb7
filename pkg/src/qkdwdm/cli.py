"""Command-line interface: ``qkdwdm <subcommand> [options]``.

Every subcommand writes CSV or plain text to ``--out`` (default stdout) and
reports problems on stderr with a nonzero exit code.
"""
from __future__ import annotations

import argparse
import math
import sys
import warnings
from typing import List, Optional, Sequence

from .errors import EstimationError, PlanningError, QkdWdmError
from .keyrate import LinkParams, transmittances
from .montecarlo import monte_carlo_session
from .planner import ROLES, search
from .quantities import watts_to_dbm
from .scenario import (
    ScenarioError,
    SweepRange,
    evaluate_point,
    format_value,
    load_scenario,
    run_sweep,
    sweep_csv,
    validate,
    write_csv,
)

RAMAN_COLUMNS = (
    "length_km",
    "raman_fwd_w",
    "raman_bwd_w",
    "raman_w",
    "raman_dbm",
    "raman_after_nbf_w",
    "raman_after_nbf_dbm",
    "raman_after_filters_w",
    "raman_after_filters_dbm",
    "signal_w",
    "signal_dbm",
    "p_r",
    "tolerance_margin_db",
)

MC_COLUMNS = (
    "class",
    "mu",
    "pulses",
    "events",
    "errors",
    "transmittance",
    "transmittance_model",
    "error_rate",
    "error_rate_model",
    "sifted",
    "sifted_errors",
)

PLAN_COLUMNS = ROLES + ("objective_w", "feasible", "violations")


def _bool(text: str) -> bool:
    low = text.lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _bands(text: str) -> List[float]:
    try:
        return [float(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bands must be wavelengths in nm, got {text!r}") from None


def _dbm(w: float) -> float:
    return float(watts_to_dbm(w)) if w > 0 else -math.inf


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="scenario TOML file (default: bundled fixture)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--backward-form", choices=("integral", "paper"), help="backward Raman closed form")
    p.add_argument("--include-clock-raman", type=_bool, metavar="{true|false}", help="count Raman from the clock laser")


def _range(p: argparse.ArgumentParser):
    p.add_argument("--from", dest="from_km", type=float, help="first length (km)")
    p.add_argument("--to", dest="to_km", type=float, help="last length (km)")
    p.add_argument("--step", dest="step_km", type=float, help="length step (km)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qkdwdm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="key rate, QBER and noise versus fiber length (CSV)")
    _common(p)
    _range(p)

    p = sub.add_parser("raman", help="Raman noise budget versus fiber length (CSV)")
    _common(p)
    _range(p)

    p = sub.add_parser("keyrate", help="detailed breakdown at one fiber length")
    _common(p)
    p.add_argument("--length", type=float, required=True, help="fiber length (km)")

    p = sub.add_parser("plan", help="search channel-to-passband assignments")
    _common(p)
    p.add_argument("--bands", type=_bands, help="passbands to use, e.g. 1551,1571,1591,1611")
    p.add_argument("--roles", type=lambda s: tuple(s.replace(",", " ").split()), help=f"roles to place (default: {','.join(ROLES)})")
    p.add_argument("--candidates", help="write the per-candidate table as CSV to this file")

    p = sub.add_parser("mc", help="Monte-Carlo session compared with the analytic model (CSV)")
    _common(p)
    p.add_argument("--length", type=float, default=50.0, help="fiber length (km)")
    p.add_argument("--pulses", type=int, default=1_000_000, help="number of pulses")
    p.add_argument("--seed", type=int, default=42, help="random seed (default 42)")

    p = sub.add_parser("validate", help="check a scenario file and list every problem")
    p.add_argument("--config", help="scenario TOML file (default: bundled fixture)")
    return parser


def _scenario(args):
    s = load_scenario(args.config)
    overrides = {"backward_form": args.backward_form, "include_clock_raman": args.include_clock_raman}
    if getattr(args, "from_km", None) is not None or getattr(args, "to_km", None) is not None or getattr(args, "step_km", None) is not None:
        sw = s.sweep
        overrides["sweep"] = SweepRange(
            sw.from_km if args.from_km is None else args.from_km,
            sw.to_km if args.to_km is None else args.to_km,
            sw.step_km if args.step_km is None else args.step_km,
        )
    return s.with_overrides(**overrides)


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_sweep(args) -> int:
    s = _scenario(args)
    _emit(sweep_csv(run_sweep(s)), args.out)
    return 0


def cmd_raman(args) -> int:
    s = _scenario(args)
    rows = []
    for r in run_sweep(s):
        n = r.noise
        rows.append((
            r.length_km,
            n.forward_w,
            n.backward_w,
            n.raman_power_w,
            _dbm(n.raman_power_w),
            n.after_nbf_w,
            _dbm(n.after_nbf_w),
            r.raman_after_filters_w,
            _dbm(r.raman_after_filters_w),
            r.signal_w,
            _dbm(r.signal_w),
            r.p_r,
            r.tolerance_margin_db,
        ))
    _emit(write_csv(RAMAN_COLUMNS, rows), args.out)
    return 0


def cmd_keyrate(args) -> int:
    s = _scenario(args)
    r = evaluate_point(s, args.length)
    k = r.keyrate
    est = k.estimate
    lines = [
        f"length_km            {r.length_km:g}",
        f"channel_transmission {r.channel_transmission:.6g}",
        f"eta_bob              {r.eta_bob:.6g}",
        f"clock_jitter_ps      {r.jitter_ps:.4g}",
    ]
    lines += [f"launch_{role:<14s}{v:.3f} dBm" for role, v in sorted(r.launch_dbm.items())]
    lines += [
        f"raman_fwd            {r.noise.forward_w:.6g} W",
        f"raman_bwd            {r.noise.backward_w:.6g} W",
        f"raman_after_nbf      {r.noise.after_nbf_w:.6g} W",
        f"raman_after_filters  {r.raman_after_filters_w:.6g} W",
        f"signal_after_nbf     {r.signal_w:.6g} W",
        f"tolerance_margin     {r.tolerance_margin_db:.3f} dB",
        f"p_r                  {r.p_r:.6g}",
        f"p_d                  {s.detector.dark_per_gate:.6g}",
        f"qber                 {100 * k.qber:.3f} %",
        f"  floor              {100 * k.qber_floor:.3f} %",
        f"  dark               {100 * k.qber_dark:.3f} %",
        f"  raman              {100 * k.qber_raman:.3f} %",
    ]
    for i, (c, t, e) in enumerate(zip(s.protocol.intensities, k.observables.transmittances, k.observables.qber_per_class)):
        lines.append(f"class {i} mu={c.mu:g}   T={t:.6g} E={e:.5f}")
    lines += [
        f"Y0                   {est.y0:.6g}",
        f"Y1                   {est.y1:.6g}",
        f"e1                   {est.e1:.5f}",
        f"sifted_rate          {k.sifted_rate_bps:.6g} bit/s",
        f"secure_rate          {k.secure_rate_bps:.6g} bit/s",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_plan(args) -> int:
    s = _scenario(args)
    roles = args.roles or ROLES
    result = search(s.fiber, s.grid, s.raman_table, s.plan_constraints(roles), bands=args.bands)
    if args.candidates:
        rows = []
        for cand in result.candidates:
            rows.append(
                tuple(format_value(cand.wavelengths[r]) if r in cand.wavelengths else "" for r in ROLES)
                + (cand.objective_w, "true" if cand.feasible else "false", "; ".join(cand.violations))
            )
        write_csv(PLAN_COLUMNS, rows, args.candidates)
    a = result.assignment
    lines = [f"{role:<11s}{a.wavelengths[role]:g} nm" for role in result.roles]
    lines.append(f"worst-case Raman into quantum receiver: {result.objective_w:.6g} W")
    feasible = sum(c.feasible for c in result.candidates)
    lines.append(f"candidates: {len(result.candidates)} ({feasible} feasible)")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_mc(args) -> int:
    s = _scenario(args)
    r = evaluate_point(s, args.length)
    det = s.detector
    params = LinkParams(r.channel_transmission, r.eta_bob, det.dark_per_gate, r.p_r, det.afterpulse_prob)
    mc = monte_carlo_session(s.protocol, params, args.pulses, seed=args.seed)
    model = transmittances(s.protocol, params)
    rows = []
    for i, c in enumerate(s.protocol.intensities):
        rows.append((
            i,
            c.mu,
            mc.pulses[i],
            mc.events[i],
            mc.errors[i],
            mc.transmittances[i],
            model.transmittances[i],
            mc.error_rates[i],
            model.qber_per_class[i],
            mc.sifted[i],
            mc.sifted_errors[i],
        ))
    _emit(write_csv(MC_COLUMNS, rows), args.out)
    return 0


def cmd_validate(args) -> int:
    diags = validate(args.config)
    for d in diags:
        print(d, file=sys.stderr)
    if diags:
        return 1
    print("ok")
    return 0


COMMANDS = {
    "sweep": cmd_sweep,
    "raman": cmd_raman,
    "keyrate": cmd_keyrate,
    "plan": cmd_plan,
    "mc": cmd_mc,
    "validate": cmd_validate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return COMMANDS[args.command](args)
    except ScenarioError as exc:
        for d in exc.diagnostics:
            print(f"error: {d}", file=sys.stderr)
    except PlanningError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for v in exc.violations:
            print(f"  - {v}", file=sys.stderr)
    except EstimationError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (QkdWdmError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
