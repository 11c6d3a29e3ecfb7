"""Compare a simulated session with the analytic count model.

Simulates 10^7 pulses at 50 km on the default link and reports, per
intensity class, the event rate and error rate next to the model values
together with the deviation in binomial standard errors.

Run:  python3 demos/monte_carlo_check.py
"""
import math

from qkdwdm import LinkParams, default_scenario, evaluate_point
from qkdwdm.keyrate import transmittances
from qkdwdm.montecarlo import monte_carlo_session

PULSES = 10_000_000


def main(length_km=50.0):
    s = default_scenario()
    r = evaluate_point(s, length_km)
    det = s.detector
    link = LinkParams(r.channel_transmission, r.eta_bob, det.dark_per_gate, r.p_r, det.afterpulse_prob)

    mc = monte_carlo_session(s.protocol, link, PULSES, seed=1)
    model = transmittances(s.protocol, link)

    print("class     mu      T (MC)     T (model)   z_T     E (MC)   E (model)")
    for i, c in enumerate(s.protocol.intensities):
        t, tm = mc.transmittances[i], model.transmittances[i]
        z = (t - tm) / math.sqrt(tm * (1 - tm) / mc.pulses[i])
        print(
            f"{i:5d}  {c.mu:7.4f}  {t:.4e}  {tm:.4e}  {z:+5.2f}   "
            f"{mc.error_rates[i]:.4f}   {model.qber_per_class[i]:.4f}"
        )


if __name__ == "__main__":
    main()
