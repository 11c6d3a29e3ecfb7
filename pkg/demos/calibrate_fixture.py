"""Refit the three free parameters of the default fixture.

The dark-count probability, the receiver's internal optical loss and the
overall scale of the Raman coefficient table are not measured directly.
This script fits them to the target secure key rates and the 90 km QBER
breakdown, then prints the values to paste into ``data/default.toml`` and
``data/raman_beta.csv``.

Run:  python3 demos/calibrate_fixture.py
"""
from dataclasses import replace

import numpy as np
from scipy.optimize import least_squares

from qkdwdm import default_scenario, evaluate_point

RATE_TARGETS = {35.0: 935e3, 50.0: 507e3, 80.0: 72e3, 90.0: 7.6e3}
QBER_90 = {"total": 0.079, "dark": 0.025, "raman": 0.024}


def configure(base, log_pd, rx_loss_db, log_beta_scale):
    det = replace(base.detector, dark_per_gate=10.0 ** log_pd)
    receiver = replace(base.receiver, detector=det, optical_loss_db=rx_loss_db)
    table = base.raman_table.scaled(10.0 ** log_beta_scale)
    return replace(base, receiver=receiver, raman_table=table)


def residuals(x, base):
    s = configure(base, *x)
    out = []
    for length, target in RATE_TARGETS.items():
        rate = evaluate_point(s, length).keyrate.secure_rate_bps
        # 25 % is the acceptance band, so scale residuals to it
        out.append((rate - target) / (0.25 * target))
    k = evaluate_point(s, 90.0).keyrate
    out.append((k.qber - QBER_90["total"]) / 0.005)
    out.append((k.qber_dark - QBER_90["dark"]) / 0.003)
    out.append((k.qber_raman - QBER_90["raman"]) / 0.003)
    return np.array(out)


def main():
    base = default_scenario()
    x0 = [np.log10(base.detector.dark_per_gate), base.receiver.optical_loss_db, 0.0]
    fit = least_squares(residuals, x0, args=(base,), diff_step=1e-3, bounds=([-6, 0, -2], [-3, 6, 2]))
    log_pd, rx_loss, log_scale = fit.x
    print(f"dark_per_gate   = {10 ** log_pd:.4g}")
    print(f"optical_loss_db = {rx_loss:.4g}")
    print(f"beta scale      = {10 ** log_scale:.4g}")
    s = configure(base, *fit.x)
    for length in (35.0, 50.0, 80.0, 90.0, 100.0):
        k = evaluate_point(s, length).keyrate
        print(
            f"{length:5.0f} km  secure {k.secure_rate_bps / 1e3:8.2f} kbit/s  "
            f"QBER {100 * k.qber:5.2f} %  (dark {100 * k.qber_dark:4.2f}, Raman {100 * k.qber_raman:4.2f})"
        )


if __name__ == "__main__":
    main()
