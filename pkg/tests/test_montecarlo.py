import numpy as np
import pytest

from qkdwdm.keyrate import DecoyProtocolSpec, LinkParams, qber_breakdown, transmittances
from qkdwdm.montecarlo import monte_carlo_session


def test_same_seed_identical(protocol):
    link = LinkParams(0.1, 0.07, 3e-5, 2e-5, 0.01)
    a = monte_carlo_session(protocol, link, 300_000, seed=42, block_size=100_000)
    b = monte_carlo_session(protocol, link, 300_000, seed=42, block_size=100_000)
    for name in ("pulses", "events", "errors", "sifted", "sifted_errors"):
        np.testing.assert_array_equal(getattr(a, name), getattr(b, name))
    c = monte_carlo_session(protocol, link, 300_000, seed=43, block_size=100_000)
    assert not np.array_equal(a.events, c.events)


def test_silent_channel_has_no_clicks():
    spec = DecoyProtocolSpec([(0.0, 1.0)], e_opt=0.0)
    mc = monte_carlo_session(spec, LinkParams(1.0, 1.0, 0.0, 0.0, 0.0), 200_000)
    assert mc.events.sum() == 0
    assert mc.e == 0.0


def test_pulse_count_and_class_mix(protocol):
    mc = monte_carlo_session(protocol, LinkParams(0.1, 0.1, 0.0, 0.0, 0.0), 1_234_567, block_size=500_000)
    assert mc.pulses.sum() == 1_234_567
    frac = mc.pulses / mc.pulses.sum()
    np.testing.assert_allclose(frac, protocol.probabilities, atol=5e-4)


def test_rejects_empty_session(protocol):
    with pytest.raises(ValueError):
        monte_carlo_session(protocol, LinkParams(0.1, 0.1, 0.0), 0)


def test_agrees_with_analytic_model(protocol):
    link = LinkParams(0.05, 0.08, 2e-5, 3e-5, 0.02)
    n = 2_000_000
    mc = monte_carlo_session(protocol, link, n, seed=3)
    obs = transmittances(protocol, link)
    se = np.sqrt(obs.transmittances * (1 - obs.transmittances) / mc.pulses)
    assert np.all(np.abs(mc.transmittances - obs.transmittances) <= 4 * se)
    e = qber_breakdown(protocol, link)[0]
    assert abs(mc.e - e) <= 4 * np.sqrt(e * (1 - e) / mc.Q)


def test_afterpulses_follow_previous_gate():
    # every gate has a noise click, so each gate after the first gets afterpulse draws
    spec = DecoyProtocolSpec([(0.0, 1.0)], e_opt=0.0)
    link = LinkParams(1.0, 1.0, 1.0, 0.0, 0.5)
    mc = monte_carlo_session(spec, link, 100_000, seed=1, block_size=30_000)
    extra = mc.events.sum() - 100_000
    assert extra == pytest.approx(0.5 * 99_999, abs=5 * np.sqrt(0.25 * 1e5))
