"""Where the Raman noise comes from at one fiber length.

Builds the default link, then prints how much scattered light each
classical laser sends into the quantum band, how much the narrowband
filter and gating remove, and what is left per detector gate.

Run:  python3 demos/noise_budget.py [length_km]
"""
import sys

from qkdwdm import default_scenario, evaluate_point
from qkdwdm.quantities import watts_to_dbm


def dbm(w):
    return f"{float(watts_to_dbm(w)):8.2f} dBm" if w > 0 else "      -inf dBm"


def main(length_km=50.0):
    s = default_scenario()
    r = evaluate_point(s, length_km)
    n = r.noise

    print(f"Link length {length_km:g} km, quantum band {s.assignment.quantum_nm:g} nm")
    print("\nLaunch powers")
    for role, p in sorted(r.launch_dbm.items()):
        print(f"  {role:<11s} {p:7.2f} dBm")

    # Each laser contributes forward or backward scatter depending on which
    # end it is launched from relative to Bob's receiver.
    print("\nRaman power reaching Bob's quantum receiver")
    for name, w in sorted(n.per_laser_w.items()):
        print(f"  {name:<11s} {dbm(w)}")
    print(f"  {'forward':<11s} {dbm(n.forward_w)}")
    print(f"  {'backward':<11s} {dbm(n.backward_w)}")
    print(f"  {'total':<11s} {dbm(n.raman_power_w)}")

    print("\nFiltering")
    print(f"  after NBF           {dbm(n.after_nbf_w)}")
    print(f"  after gating        {dbm(r.raman_after_filters_w)}")
    print(f"  quantum signal      {dbm(r.signal_w)}")
    print(f"  margin over noise   {r.tolerance_margin_db:8.2f} dB")
    print(f"  noise clicks/gate   {r.p_r:.3e}  (dark {s.detector.dark_per_gate:.3e})")


if __name__ == "__main__":
    main(float(sys.argv[1]) if len(sys.argv) > 1 else 50.0)
