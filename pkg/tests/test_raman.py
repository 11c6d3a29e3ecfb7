import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from qkdwdm.detector import DetectorSpec
from qkdwdm.errors import ConfigurationError
from qkdwdm.fiber import DB_PER_KM_TO_PER_KM, alpha_per_km
from qkdwdm.quantities import db_to_linear
from qkdwdm.raman import (
    ALICE_TO_BOB,
    BOB_TO_ALICE,
    TOLERANCE_MARGIN_CAP_DB,
    LaserSource,
    RamanCoefficientTable,
    backward_scatter,
    counts_per_gate,
    forward_peak_length,
    forward_scatter,
    raman_tolerance_check,
    total_raman_into_receiver,
)
from qkdwdm.scenario import DATA_DIR

alphas = st.floats(0.01, 0.2)
lengths = st.floats(0.0, 200.0)
betas = st.floats(1e-10, 1e-6)
powers = st.floats(1e-6, 1e-1)


def forward_integrand_oracle(beta, power, a_d, a_q, length):
    f = lambda l: beta * power * math.exp(-a_d * l) * math.exp(-a_q * (length - l))
    return quad(f, 0.0, length, epsabs=0, epsrel=1e-13, limit=200)[0]


def backward_integrand_oracle(beta, power, a_d, a_q, length):
    f = lambda l: beta * power * math.exp(-(a_d + a_q) * l)
    return quad(f, 0.0, length, epsabs=0, epsrel=1e-13, limit=200)[0]


@pytest.fixture(scope="module")
def table():
    return RamanCoefficientTable.from_csv(DATA_DIR / "raman_beta.csv")


def test_zero_length_gives_zero():
    assert forward_scatter(1e-7, 1e-3, 0.05, 0.046, 0.0) == 0.0
    assert backward_scatter(1e-7, 1e-3, 0.05, 0.046, 0.0) == 0.0
    assert backward_scatter(1e-7, 1e-3, 0.05, 0.046, 0.0, form="paper") == 0.0


@given(betas, powers, alphas, alphas, lengths)
def test_forward_matches_quadrature(beta, power, a_d, a_q, length):
    assume(length > 0)
    exact = forward_integrand_oracle(beta, power, a_d, a_q, length)
    assert forward_scatter(beta, power, a_d, a_q, length) == pytest.approx(exact, rel=1e-9)


@given(betas, powers, alphas, alphas, lengths)
def test_backward_matches_quadrature(beta, power, a_d, a_q, length):
    assume(length > 0)
    exact = backward_integrand_oracle(beta, power, a_d, a_q, length)
    assert backward_scatter(beta, power, a_d, a_q, length) == pytest.approx(exact, rel=1e-9)


def test_forward_degenerate_limit():
    a = 0.046
    limit = 1e-7 * 1e-3 * 30.0 * math.exp(-a * 30.0)
    assert forward_scatter(1e-7, 1e-3, a, a, 30.0) == pytest.approx(limit, rel=1e-15)
    # continuous across the switch-over threshold
    near = forward_scatter(1e-7, 1e-3, a + 2e-9, a, 30.0)
    assert near == pytest.approx(limit, rel=1e-6)


def test_forward_peak_example():
    a_q = 0.20 * DB_PER_KM_TO_PER_KM
    a_d = 0.22 * DB_PER_KM_TO_PER_KM
    peak = forward_peak_length(a_d, a_q)
    assert peak == pytest.approx(20.7, abs=0.05)
    res = minimize_scalar(lambda L: -forward_scatter(1.0, 1.0, a_d, a_q, L), bounds=(0, 100), method="bounded", options={"xatol": 1e-9})
    assert res.x == pytest.approx(peak, abs=1e-6)


@given(st.floats(0.03, 0.1), st.floats(0.0, 0.05))
def test_forward_single_interior_maximum(a_q, gap):
    a_d = a_q + gap + 1e-3
    peak = forward_peak_length(a_d, a_q)
    grid = np.linspace(0, 10 * peak, 4001)
    vals = forward_scatter(1.0, 1.0, a_d, a_q, grid)
    diffs = np.sign(np.diff(vals))
    assert np.count_nonzero(np.diff(diffs) != 0) == 1
    assert abs(grid[np.argmax(vals)] - peak) <= grid[1]


def test_backward_saturates():
    a_d, a_q = 0.05, 0.046
    assert backward_scatter(2e-8, 1e-3, a_d, a_q, 1e4) == pytest.approx(2e-8 * 1e-3 / (a_d + a_q), rel=1e-12)
    assert backward_scatter(2e-8, 1e-3, a_d, a_q, 1e4, form="paper") == pytest.approx(2e-8 * 1e-3, rel=1e-12)


@given(betas, powers, alphas, alphas, lengths, lengths)
def test_backward_monotone(beta, power, a_d, a_q, l1, l2):
    lo, hi = sorted((l1, l2))
    for form in ("integral", "paper"):
        assert backward_scatter(beta, power, a_d, a_q, lo, form) <= backward_scatter(beta, power, a_d, a_q, hi, form)


@given(betas, powers, alphas, alphas, st.floats(0.01, 200.0), st.floats(0.1, 100.0))
def test_scatter_linear_in_power_and_beta(beta, power, a_d, a_q, length, k):
    f = forward_scatter(beta, power, a_d, a_q, length)
    b = backward_scatter(beta, power, a_d, a_q, length)
    assert forward_scatter(beta, k * power, a_d, a_q, length) == pytest.approx(k * f, rel=1e-12)
    assert forward_scatter(k * beta, power, a_d, a_q, length) == pytest.approx(k * f, rel=1e-12)
    assert backward_scatter(beta, k * power, a_d, a_q, length) == pytest.approx(k * b, rel=1e-12)
    assert backward_scatter(k * beta, power, a_d, a_q, length) == pytest.approx(k * b, rel=1e-12)


@given(betas, powers, alphas, st.floats(0.0, 0.1), st.floats(0.01, 200.0))
def test_backward_exceeds_forward(beta, power, a_q, extra, length):
    a_d = a_q + extra
    assert backward_scatter(beta, power, a_d, a_q, length) > forward_scatter(beta, power, a_d, a_q, length)


def test_unknown_backward_form():
    with pytest.raises(ConfigurationError):
        backward_scatter(1e-8, 1e-3, 0.05, 0.046, 10.0, form="other")


def test_table_lookup_and_bandwidth_scaling(table):
    b = table.beta(1591, "forward")
    assert b > 0
    assert table.beta(1591, "forward", 6.5) == pytest.approx(b / 2)
    assert table.has(1611, "backward")
    assert not table.has(1531, "forward")
    with pytest.raises(ConfigurationError, match="1531"):
        table.beta(1531, "forward")


def test_table_validation(tmp_path):
    with pytest.raises(ConfigurationError):
        RamanCoefficientTable({(1591.0, "sideways"): (1e-8, 13.0)})
    with pytest.raises(ConfigurationError):
        RamanCoefficientTable({(1591.0, "forward"): (-1e-8, 13.0)})
    bad = tmp_path / "beta.csv"
    bad.write_text("pump_nm,beta_per_km\n1591,1e-8\n")
    with pytest.raises(ConfigurationError, match="missing columns"):
        RamanCoefficientTable.from_csv(bad)


def test_bundled_table_ordering(table):
    # scatter weakens with spectral distance from the quantum band
    for d in ("forward", "backward"):
        assert table.beta(1571, d) > table.beta(1591, d) > table.beta(1611, d)


def test_no_lasers_zero_noise(fiber, grid, qspec, table):
    budget = total_raman_into_receiver([], fiber, grid, qspec, table, 50.0)
    assert budget.raman_power_w == 0.0
    assert budget.after_nbf_w == 0.0


def test_nbf_rejection_15db(fiber, grid, qspec, table):
    lasers = [LaserSource("a", 1591, ALICE_TO_BOB, 1e-3), LaserSource("b", 1611, BOB_TO_ALICE, 1e-3)]
    budget = total_raman_into_receiver(lasers, fiber, grid, qspec, table, 40.0)
    assert 10 * math.log10(budget.raman_power_w / budget.after_nbf_w) == pytest.approx(15.0, abs=1e-12)


def test_superposition(fiber, grid, qspec, table):
    a = LaserSource("a", 1591, ALICE_TO_BOB, 1e-3)
    b = LaserSource("b", 1611, BOB_TO_ALICE, 2e-4)
    for L in np.arange(0, 101, 5.0):
        both = total_raman_into_receiver([a, b], fiber, grid, qspec, table, L)
        sa = total_raman_into_receiver([a], fiber, grid, qspec, table, L)
        sb = total_raman_into_receiver([b], fiber, grid, qspec, table, L)
        assert both.raman_power_w == pytest.approx(sa.raman_power_w + sb.raman_power_w, rel=1e-12)
        assert both.forward_w == pytest.approx(sa.forward_w)
        assert both.backward_w == pytest.approx(sb.backward_w)


def test_mux_and_demux_losses_applied(fiber, grid, qspec, table):
    laser = LaserSource("a", 1591, ALICE_TO_BOB, 1e-3)
    budget = total_raman_into_receiver([laser], fiber, grid, qspec, table, 30.0)
    raw = forward_scatter(
        table.beta(1591, "forward", grid.passband_width_nm),
        1e-3,
        alpha_per_km(fiber, 1591),
        alpha_per_km(fiber, 1551),
        30.0,
    )
    assert budget.forward_w == pytest.approx(raw * db_to_linear(-1.5), rel=1e-12)


def test_missing_coefficient_names_channel(fiber, grid, qspec):
    table = RamanCoefficientTable({(1591.0, "forward"): (1e-8, 13.0)})
    laser = LaserSource("bob_data", 1611, BOB_TO_ALICE, 1e-3)
    with pytest.raises(ConfigurationError, match="1611"):
        total_raman_into_receiver([laser], fiber, grid, qspec, table, 10.0)


def test_backward_only_sweep_monotone(fiber, grid, qspec, table):
    lasers = [LaserSource("b", 1611, BOB_TO_ALICE, 1e-3), LaserSource("c", 1571, BOB_TO_ALICE, 1e-4)]
    vals = [total_raman_into_receiver(lasers, fiber, grid, qspec, table, L).raman_power_w for L in np.arange(0, 101, 5.0)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_counts_per_gate_examples():
    det = DetectorSpec(eta_sync=0.2, eta_async=0.023)
    assert counts_per_gate(0.0, 1551, 1e9, det) == 0.0
    assert counts_per_gate(1e-12, 1551, 1e9, det) == pytest.approx(1.80e-4, rel=5e-3)
    assert counts_per_gate(1.0, 1551, 1e9, det) == 1.0
    with pytest.raises(ConfigurationError):
        counts_per_gate(1e-12, 1551, 0.0, det)


def test_temporal_factor(detector):
    p = counts_per_gate(1e-12, 1551, 1e9, detector)
    peak = counts_per_gate(1e-12, 1551, 1e9, DetectorSpec(eta_sync=0.2, eta_async=0.2))
    assert p / peak == pytest.approx(10 ** -0.94, rel=1e-6)
    assert p / peak == pytest.approx(0.114, abs=1e-3)


def test_receiver_loss_reduces_counts(detector):
    base = counts_per_gate(1e-12, 1551, 1e9, detector)
    assert counts_per_gate(1e-12, 1551, 1e9, detector, receiver_loss_db=3.0) == pytest.approx(base * db_to_linear(-3.0))


def test_tolerance_examples():
    ok = raman_tolerance_check(1e-10, 1e-11)
    assert ok.passed and ok.margin_db == pytest.approx(0.0, abs=1e-9)
    zero = raman_tolerance_check(1e-10, 0.0)
    assert zero.passed and zero.margin_db == TOLERANCE_MARGIN_CAP_DB
    loud = raman_tolerance_check(1e-10, 1e-10 * 10 ** 2.7)
    assert not loud.passed and loud.margin_db == pytest.approx(-37.0)
    with pytest.raises(ConfigurationError):
        raman_tolerance_check(0.0, 1e-12)
