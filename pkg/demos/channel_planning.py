"""Pick CWDM bands for the quantum, clock and two data channels.

Every role-to-band map is scored by its worst-case Raman power into the
quantum receiver over 0-100 km. The quantum channel is pinned to the band
with the lowest fiber loss. Lifting the pin adds candidates, but the bundled
coefficient table only covers scatter into 1551 nm, so those candidates are
reported as infeasible with the missing entry named.

Run:  python3 demos/channel_planning.py
"""
from dataclasses import replace

from qkdwdm import PlanningError, default_scenario, search


def show(result, top=6):
    for cand in result.candidates[:top]:
        bands = "  ".join(f"{r}={cand.wavelengths[r]:g}" for r in result.roles)
        if cand.feasible:
            print(f"  {cand.objective_w:10.3e} W  {bands}")
        else:
            print(f"  {'infeasible':>12s}  {bands}  ({cand.violations[0]})")


def main():
    s = default_scenario()
    c = s.plan_constraints()

    pinned = search(s.fiber, s.grid, s.raman_table, c)
    feasible = sum(x.feasible for x in pinned.candidates)
    print(f"Pinned quantum band: {len(pinned.candidates)} candidates, {feasible} feasible")
    show(pinned)

    free = search(s.fiber, s.grid, s.raman_table, replace(c, pin_quantum=False))
    feasible = sum(x.feasible for x in free.candidates)
    print(f"\nQuantum band free: {feasible} feasible, top of the ranking:")
    show(free, top=8)

    # Three bands cannot hold four roles.
    try:
        search(s.fiber, s.grid, s.raman_table, c, bands=[1551, 1571, 1591])
    except PlanningError as exc:
        print(f"\nThree bands: {exc}")


if __name__ == "__main__":
    main()
