"""Decoy-state BB84 key-rate engine.

The chain is: per-gate noise probabilities and channel transmission ->
per-class transmittances and error rates -> linear-programming estimate of
the single- and zero-photon yields -> asymptotic secure key rate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linprog, lsq_linear
from scipy.stats import poisson

from .errors import ConfigurationError, DomainError, EstimationError

N_MAX_DEFAULT = 9


@dataclass(frozen=True)
class IntensityClass:
    mu: float
    probability: float
    name: str = ""


@dataclass(frozen=True)
class DecoyProtocolSpec:
    """Intensity classes and post-processing constants of the protocol.

    ``intensities`` accepts :class:`IntensityClass` objects or ``(mu, p)``
    pairs. ``signal_index`` picks the class used for key generation.
    """

    intensities: Sequence[IntensityClass]
    clock_rate: float = 1e9
    sifting_factor: float = 0.5
    f_ec: float = 1.1
    e_opt: float = 0.0255
    signal_index: int = 0

    def __post_init__(self):
        classes = []
        for item in self.intensities:
            if not isinstance(item, IntensityClass):
                item = IntensityClass(*item)
            classes.append(item)
        classes = tuple(classes)
        if not classes:
            raise ConfigurationError("at least one intensity class is required")
        mus = [c.mu for c in classes]
        if any(m < 0 for m in mus):
            raise ConfigurationError("intensities must be >= 0")
        if len(set(mus)) != len(mus):
            raise ConfigurationError(f"intensities must be distinct: {mus}")
        probs = [c.probability for c in classes]
        if any(not 0.0 <= p <= 1.0 for p in probs):
            raise ConfigurationError("class probabilities must lie in [0, 1]")
        if abs(math.fsum(probs) - 1.0) > 1e-12:
            raise ConfigurationError(f"class probabilities sum to {math.fsum(probs)!r}, not 1")
        if not 0 <= self.signal_index < len(classes):
            raise ConfigurationError(f"signal_index {self.signal_index} out of range")
        if self.clock_rate <= 0:
            raise ConfigurationError("clock rate must be positive")
        if not 0.0 < self.sifting_factor <= 1.0:
            raise ConfigurationError("sifting factor must lie in (0, 1]")
        if self.f_ec < 1.0:
            raise ConfigurationError("error-correction efficiency f_EC must be >= 1")
        if not 0.0 <= self.e_opt < 0.5:
            raise ConfigurationError("e_opt must lie in [0, 0.5)")
        object.__setattr__(self, "intensities", classes)

    @property
    def mus(self) -> np.ndarray:
        return np.array([c.mu for c in self.intensities])

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([c.probability for c in self.intensities])

    @property
    def signal(self) -> IntensityClass:
        return self.intensities[self.signal_index]


@dataclass(frozen=True)
class LinkParams:
    """Physical inputs to the count model at one fiber length.

    ``channel_transmission`` is the fiber transmission of the quantum
    channel; ``eta_bob`` collects every other efficiency factor seen by
    signal photons (fixed path losses, receiver, detector, jitter).
    """

    channel_transmission: float
    eta_bob: float
    dark_per_gate: float
    raman_per_gate: float = 0.0
    afterpulse_prob: float = 0.0

    def __post_init__(self):
        for name in ("channel_transmission", "eta_bob", "dark_per_gate", "raman_per_gate", "afterpulse_prob"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {v}")

    @property
    def noise_per_gate(self) -> float:
        return self.dark_per_gate + self.raman_per_gate

    @property
    def signal_efficiency(self) -> float:
        return self.channel_transmission * self.eta_bob


@dataclass(frozen=True)
class LinkObservables:
    transmittances: np.ndarray  # T_i, afterpulsing included
    overall_T: float  # Bob's detection probability without afterpulsing
    qber_per_class: np.ndarray  # E_i from the per-event error model
    dark_per_gate: float
    raman_per_gate: float

    def __post_init__(self):
        floor = self.dark_per_gate + self.raman_per_gate
        if np.any(self.transmittances < floor * (1 - 1e-12)):
            raise DomainError("class transmittance below the noise floor")


@dataclass(frozen=True)
class DecoyEstimate:
    y0: float
    y1: float
    e1: float
    z1_max: float  # upper bound on e1 * Y1


@dataclass(frozen=True)
class SessionCounts:
    Q: float
    Q1: float
    Q0: float
    e: float
    e1: float
    t: float

    def __post_init__(self):
        if self.t <= 0:
            raise DomainError("session duration must be positive")
        if not 0.0 <= self.e1 <= 0.5:
            raise DomainError(f"e1 must lie in [0, 0.5], got {self.e1}")
        if not 0.0 <= self.e <= 0.5:
            raise DomainError(f"e must lie in [0, 0.5], got {self.e}")
        if self.Q1 + self.Q0 > self.Q * (1 + 1e-9) + 1e-12:
            raise DomainError("single- and zero-photon counts exceed the sifted total")


@dataclass(frozen=True)
class KeyRateReport:
    sifted_rate_bps: float
    secure_rate_bps: float
    qber: float
    qber_floor: float
    qber_dark: float
    qber_raman: float
    observables: LinkObservables = field(repr=False)
    estimate: DecoyEstimate = field(repr=False)
    counts: SessionCounts = field(repr=False)


def binary_entropy(x):
    """Shannon entropy of a biased coin, in bits. ``0*log2(0)`` is taken as 0."""
    arr = np.asarray(x, dtype=float)
    if np.any((arr < 0) | (arr > 1)) or np.any(np.isnan(arr)):
        raise DomainError(f"binary entropy is defined on [0, 1], got {x!r}")
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -(arr * np.log2(arr)) - (1 - arr) * np.log2(1 - arr)
    h = np.where((arr == 0) | (arr == 1), 0.0, h)
    return h if h.ndim else float(h)


def noise_qber_component(mu, transmission, eta_bob, p_d, p_r):
    """Error contribution of dark and Raman counts, which are wrong half the time."""
    noise = p_d + p_r
    denominator = mu * transmission * eta_bob + noise
    if np.any(np.asarray(denominator) <= 0):
        raise DomainError("no signal and no noise: QBER is undefined")
    return 0.5 * noise / denominator


def total_qber(e_opt, p_a, e_n):
    """Signal-state QBER: optical floor + half the afterpulses + noise part."""
    return float(np.clip(e_opt + 0.5 * p_a + e_n, 0.0, 0.5))


def qber_breakdown(spec: DecoyProtocolSpec, link: LinkParams) -> Tuple[float, float, float, float]:
    """Return ``(total, floor, dark, raman)`` for the signal class.

    The noise term is split between dark and Raman counts in proportion to
    their per-gate probabilities, so ``dark + raman`` is exactly the noise
    component.
    """
    mu = spec.signal.mu
    floor = spec.e_opt + 0.5 * link.afterpulse_prob
    denominator = mu * link.signal_efficiency + link.noise_per_gate
    if denominator <= 0:
        raise DomainError("no signal and no noise: QBER is undefined")
    dark = 0.5 * link.dark_per_gate / denominator
    raman = 0.5 * link.raman_per_gate / denominator
    return total_qber(spec.e_opt, link.afterpulse_prob, dark + raman), floor, dark, raman


def transmittances(spec: DecoyProtocolSpec, link: LinkParams) -> LinkObservables:
    """Per-class detection probabilities and error rates.

    ``T`` (no afterpulsing) is the class-weighted signal detection plus noise;
    each ``T_i`` adds afterpulses triggered at rate ``P_a`` by the previous
    gate, whose detection probability is ``T``. Error rates follow the
    per-event model: signal detections err with ``e_opt``; noise and
    afterpulse counts err with probability 1/2.
    """
    mus, probs = spec.mus, spec.probabilities
    signal = mus * link.signal_efficiency
    noise = link.noise_per_gate
    overall = float(np.dot(probs, signal) + noise)
    afterpulse = overall * link.afterpulse_prob
    t_i = signal + noise + afterpulse
    with np.errstate(invalid="ignore", divide="ignore"):
        errors = (spec.e_opt * signal + 0.5 * (noise + afterpulse)) / t_i
    errors = np.where(t_i > 0, errors, 0.0)
    return LinkObservables(
        transmittances=t_i,
        overall_T=overall,
        qber_per_class=errors,
        dark_per_gate=link.dark_per_gate,
        raman_per_gate=link.raman_per_gate,
    )


def poisson_weights(mus: Sequence[float], n_max: int) -> np.ndarray:
    """Matrix ``P[i, n] = exp(-mu_i) mu_i**n / n!`` for ``n = 0..n_max``."""
    n = np.arange(n_max + 1)
    return poisson.pmf(n[None, :], np.asarray(mus, dtype=float)[:, None])


def decoy_estimate(
    mus: Sequence[float],
    transmittances: Sequence[float],
    error_rates: Sequence[float],
    n_max: int = N_MAX_DEFAULT,
) -> DecoyEstimate:
    """Asymptotic decoy-state estimate of ``Y_0``, ``Y_1`` and ``e_1``.

    Unknowns are the photon-number yields ``Y_n`` and error yields
    ``Z_n = e_n Y_n`` for ``n <= n_max`` plus one tail pair for ``n > n_max``.
    Observed gains and error gains enter as equalities (no finite-size
    slack). ``Z_0 = Y_0/2`` and ``Z_n <= Y_n/2`` otherwise. Three programs
    are solved: min ``Y_1``, min ``Y_0`` and max ``Z_1``; the error rate
    bound is ``max Z_1 / min Y_1`` capped at 1/2.

    Raises:
        EstimationError: if the observations admit no feasible yields.
    """
    mus = np.asarray(mus, dtype=float)
    t = np.asarray(transmittances, dtype=float)
    e = np.asarray(error_rates, dtype=float)
    if mus.ndim != 1 or len(mus) < 3:
        raise ConfigurationError("decoy estimation needs at least three intensity classes")
    if t.shape != mus.shape or e.shape != mus.shape:
        raise ConfigurationError("one transmittance and one error rate per class are required")
    if np.any(t < 0) or np.any((e < 0) | (e > 1)):
        raise DomainError("transmittances must be >= 0 and error rates in [0, 1]")

    k = len(mus)
    n_y = n_max + 2  # Y_0..Y_nmax, Y_tail
    weights = poisson_weights(mus, n_max)
    tail = np.clip(1.0 - weights.sum(axis=1), 0.0, None)
    gains = np.hstack([weights, tail[:, None]])

    scale = float(t.max())
    if scale <= 0:
        return DecoyEstimate(0.0, 0.0, 0.5, 0.0)

    a_eq = np.zeros((2 * k + 1, 2 * n_y))
    b_eq = np.zeros(2 * k + 1)
    a_eq[:k, :n_y] = gains
    b_eq[:k] = t / scale
    a_eq[k : 2 * k, n_y:] = gains
    b_eq[k : 2 * k] = e * t / scale
    a_eq[2 * k, 0] = 0.5
    a_eq[2 * k, n_y] = -1.0
    row_scale = np.abs(a_eq).max(axis=1)
    a_eq /= row_scale[:, None]
    b_eq /= row_scale

    # Z_n - c*Y_n <= 0: error yields at most half (tail: at most all)
    a_ub = np.zeros((n_y - 1, 2 * n_y))
    for j, n in enumerate(range(1, n_y)):
        a_ub[j, n_y + n] = 1.0
        a_ub[j, n] = -0.5 if n <= n_max else -1.0
    b_ub = np.zeros(n_y - 1)
    # Y_n <= 1, and nonnegativity plus the gain equalities imply
    # Y_n <= T_i / p(n|mu_i); the tighter box keeps the simplex well scaled.
    with np.errstate(divide="ignore"):
        implied = np.min(np.where(gains > 0, (t / scale)[:, None] / gains, np.inf), axis=0)
    upper = np.minimum(1.0 / scale, implied)
    bounds = [(0.0, float(u)) for u in np.concatenate([upper, upper])]

    def solve(objective: np.ndarray) -> np.ndarray:
        last = None
        attempts = (
            ("highs-ds", {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}),
            ("highs-ds", {}),
            ("highs-ipm", {}),
        )
        for method, options in attempts:
            res = linprog(objective, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                          bounds=bounds, method=method, options=options)
            if res.status == 0:
                return res.x * scale
            last = res
        fit = lsq_linear(a_eq, b_eq, bounds=(np.zeros(2 * n_y), np.concatenate([upper, upper]) + 1e-300))
        raise EstimationError(
            f"decoy linear program failed: {last.message}", residuals=fit.fun * row_scale * scale
        )

    c = np.zeros(2 * n_y)
    c[1] = 1.0
    y1 = solve(c)[1]
    c = np.zeros(2 * n_y)
    c[0] = 1.0
    y0 = solve(c)[0]
    c = np.zeros(2 * n_y)
    c[n_y + 1] = -1.0
    z1 = solve(c)[n_y + 1]
    e1 = 0.5 if y1 <= 0 else min(z1 / y1, 0.5)
    return DecoyEstimate(y0=float(max(y0, 0.0)), y1=float(max(y1, 0.0)), e1=float(max(e1, 0.0)), z1_max=float(z1))


def session_counts(
    spec: DecoyProtocolSpec,
    obs: LinkObservables,
    est: DecoyEstimate,
    qber: float,
    duration_s: float = 1.0,
) -> SessionCounts:
    """Sifted-bit tallies of the signal class over a session of ``duration_s``."""
    sig = spec.signal
    n_signal = spec.clock_rate * duration_s * sig.probability
    sifted = spec.sifting_factor * n_signal
    q = sifted * float(obs.transmittances[spec.signal_index])
    q1 = sifted * math.exp(-sig.mu) * sig.mu * est.y1
    q0 = sifted * math.exp(-sig.mu) * est.y0
    return SessionCounts(Q=q, Q1=q1, Q0=q0, e=qber, e1=est.e1, t=duration_s)


def secure_rate(counts: SessionCounts, f_ec: float) -> float:
    """Asymptotic secure key rate in bit/s, clamped at zero."""
    bits = (
        counts.Q1 * (1.0 - binary_entropy(counts.e1))
        - counts.Q * f_ec * binary_entropy(counts.e)
        + counts.Q0
    )
    return max(bits / counts.t, 0.0)


def sifted_rate(spec: DecoyProtocolSpec, obs: LinkObservables) -> float:
    """Rate of basis-matched detections over all classes, in bit/s."""
    return spec.clock_rate * spec.sifting_factor * float(np.dot(spec.probabilities, obs.transmittances))


def key_rate(
    spec: DecoyProtocolSpec,
    link: LinkParams,
    duration_s: float = 1.0,
    n_max: int = N_MAX_DEFAULT,
) -> KeyRateReport:
    """Full key-rate evaluation at one operating point."""
    obs = transmittances(spec, link)
    qber, floor, dark, raman = qber_breakdown(spec, link)
    est = decoy_estimate(spec.mus, obs.transmittances, obs.qber_per_class, n_max=n_max)
    counts = session_counts(spec, obs, est, qber, duration_s)
    sifted = sifted_rate(spec, obs)
    secure = min(secure_rate(counts, spec.f_ec), sifted)
    return KeyRateReport(
        sifted_rate_bps=sifted,
        secure_rate_bps=secure,
        qber=qber,
        qber_floor=floor,
        qber_dark=dark,
        qber_raman=raman,
        observables=obs,
        estimate=est,
        counts=counts,
    )
