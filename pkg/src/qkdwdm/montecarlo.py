"""Pulse-by-pulse Monte-Carlo of a QKD session.

Serves as an independent check of the analytic count model in
:mod:`qkdwdm.keyrate`. Each pulse draws an intensity class, a Poisson photon
number and per-photon survival; dark/Raman noise and afterpulses (triggered
by the previous gate's primary detections) are added on top. A gate can
register more than one detection event; transmittances are events per pulse.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .keyrate import DecoyProtocolSpec, LinkParams

DEFAULT_BLOCK = 1_000_000


@dataclass(frozen=True)
class MonteCarloResult:
    pulses: np.ndarray  # per class
    events: np.ndarray
    errors: np.ndarray
    sifted: np.ndarray
    sifted_errors: np.ndarray
    signal_index: int

    @property
    def transmittances(self) -> np.ndarray:
        return self.events / np.maximum(self.pulses, 1)

    @property
    def error_rates(self) -> np.ndarray:
        return np.where(self.events > 0, self.errors / np.maximum(self.events, 1), 0.0)

    @property
    def Q(self) -> int:
        return int(self.sifted[self.signal_index])

    @property
    def e(self) -> float:
        q = self.sifted[self.signal_index]
        return float(self.sifted_errors[self.signal_index] / q) if q else 0.0


def monte_carlo_session(
    spec: DecoyProtocolSpec,
    link: LinkParams,
    n_pulses: int,
    seed: int = 42,
    block_size: int = DEFAULT_BLOCK,
) -> MonteCarloResult:
    """Simulate ``n_pulses`` gates. Output is a deterministic function of ``seed``.

    Blocks draw from independent child streams of ``seed``; only the
    previous-gate detection count is carried across block boundaries.
    """
    if n_pulses < 1:
        raise ValueError("n_pulses must be >= 1")
    k = len(spec.intensities)
    mus = spec.mus
    probs = spec.probabilities
    n_blocks = -(-n_pulses // block_size)
    streams = np.random.SeedSequence(seed).spawn(n_blocks)

    pulses = np.zeros(k, dtype=np.int64)
    events = np.zeros(k, dtype=np.int64)
    errors = np.zeros(k, dtype=np.int64)
    sifted = np.zeros(k, dtype=np.int64)
    sifted_err = np.zeros(k, dtype=np.int64)
    carry = 0
    eff = link.signal_efficiency
    noise_p = link.noise_per_gate

    for b, stream in enumerate(streams):
        rng = np.random.default_rng(stream)
        m = min(block_size, n_pulses - b * block_size)
        cls = rng.choice(k, size=m, p=probs)
        photons = rng.poisson(mus[cls])
        signal = rng.binomial(photons, eff)
        noise = (rng.random(m) < noise_p).astype(np.int64)
        primary = signal + noise
        previous = np.empty(m, dtype=np.int64)
        previous[0] = carry
        previous[1:] = primary[:-1]
        carry = int(primary[-1])
        after = rng.binomial(previous, link.afterpulse_prob)
        ev = primary + after
        err = rng.binomial(signal, spec.e_opt) + rng.binomial(noise + after, 0.5)
        kept_err = rng.binomial(err, spec.sifting_factor)
        kept_ok = rng.binomial(ev - err, spec.sifting_factor)

        pulses += np.bincount(cls, minlength=k)
        events += np.bincount(cls, weights=ev, minlength=k).astype(np.int64)
        errors += np.bincount(cls, weights=err, minlength=k).astype(np.int64)
        sifted += np.bincount(cls, weights=kept_err + kept_ok, minlength=k).astype(np.int64)
        sifted_err += np.bincount(cls, weights=kept_err, minlength=k).astype(np.int64)

    return MonteCarloResult(pulses, events, errors, sifted, sifted_err, spec.signal_index)
