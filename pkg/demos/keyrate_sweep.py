"""Secure key rate and QBER from 0 to 100 km, with and without the clock.

The clock laser sits one band above the quantum channel and is the
strongest Raman source at short range. Dropping it from the noise budget
shows how much key rate it costs.

Run:  python3 demos/keyrate_sweep.py
"""
from qkdwdm import default_scenario, run_sweep

LENGTHS = range(0, 101, 10)


def table(s):
    return {r.length_km: r.keyrate for r in run_sweep(s, LENGTHS)}


def main():
    base = default_scenario()
    with_clock = table(base)
    without = table(base.with_overrides(include_clock_raman=False))

    print(" km   secure kbit/s        QBER %        QBER % parts (floor/dark/Raman)")
    print("      clock  no clock   clock  no clock")
    for L in LENGTHS:
        a, b = with_clock[float(L)], without[float(L)]
        print(
            f"{L:3d}  {a.secure_rate_bps / 1e3:7.1f}  {b.secure_rate_bps / 1e3:7.1f}   "
            f"{100 * a.qber:5.2f}  {100 * b.qber:5.2f}    "
            f"{100 * a.qber_floor:4.2f}/{100 * a.qber_dark:4.2f}/{100 * a.qber_raman:4.2f}"
        )


if __name__ == "__main__":
    main()
