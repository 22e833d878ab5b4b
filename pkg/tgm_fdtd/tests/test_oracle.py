import math

import numpy as np
import pytest
from scipy.constants import epsilon_0

from tgm_fdtd import DomainException
from tgm_fdtd import oracle, tgm
from tgm_fdtd.dispersion import LorentzPole


def test_direct_sum_of_zero_history(table1_pole, table1_dt):
    assert oracle.direct_convolution_sum(np.zeros(50), table1_pole, table1_dt, 49.5 * table1_dt) == 0.0


def test_direct_sum_of_single_sample(table1_pole, table1_dt):
    t_eval = (0.5 + 7) * table1_dt
    gain = epsilon_0 * table1_pole.numerator()
    expected = gain * tgm.green_function(table1_pole, t_eval, 0.0, table1_dt)
    assert oracle.direct_convolution_sum([1.0], table1_pole, table1_dt, t_eval) == pytest.approx(expected, rel=1e-14)


def test_direct_sum_skips_unfinished_impulses(table1_pole, table1_dt):
    history = [1.0, 2.0, 3.0]
    full = oracle.direct_convolution_sum(history, table1_pole, table1_dt, 1.5 * table1_dt)
    assert full == pytest.approx(oracle.direct_convolution_sum(history[:2], table1_pole, table1_dt,
                                                                1.5 * table1_dt), rel=1e-15)
    assert oracle.direct_convolution_sum(history, table1_pole, table1_dt, 0.25 * table1_dt) == 0.0


def test_direct_sum_is_linear(table1_pole, table1_dt):
    rng = np.random.default_rng(2)
    a, b = rng.standard_normal(100), rng.standard_normal(100)
    t_eval = 99.5 * table1_dt

    def total(history):
        return oracle.direct_convolution_sum(history, table1_pole, table1_dt, t_eval)

    assert total(a + 4.0 * b) == pytest.approx(total(a) + 4.0 * total(b), rel=1e-12,
                                               abs=1e-12 * (abs(total(a)) + abs(total(b))))


def test_fine_step_must_resolve_the_impulse(table1_pole, table1_dt):
    with pytest.raises(DomainException):
        oracle.green_rk4(table1_pole, 0.0, table1_dt, 10 * table1_dt, table1_dt / 10)
    with pytest.raises(DomainException):
        oracle.polarization_rk4([1.0], table1_pole, table1_dt, 0.0)


def test_green_trace_starts_at_impulse_edge(table1_pole, table1_dt):
    trace = oracle.green_rk4(table1_pole, 1e-10, table1_dt, 1e-10 + 10 * table1_dt, table1_dt / 100)
    assert trace.times[0] == pytest.approx(1e-10 - 0.5 * table1_dt)
    assert trace.times[-1] >= 1e-10 + 10 * table1_dt * (1 - 1e-12)
    assert tuple(trace.values[0]) == (0.0, 0.0)
    np.testing.assert_allclose(np.diff(trace.times), table1_dt / 100, rtol=1e-9)


def test_strongly_damped_green_trace_returns_to_rest():
    pole = LorentzPole(1.0, 1.0, 0.5)
    trace = oracle.green_rk4(pole, 0.0, 0.1, 30.0, 0.001)
    peak = np.max(np.abs(trace.values[:, 0]))
    assert abs(trace.values[-1, 0]) < 1e-3 * peak


def test_undamped_green_trace_keeps_its_amplitude():
    pole = LorentzPole(1.0, 1.0, 0.0)
    period = 2 * math.pi
    dt = period / 10
    trace = oracle.green_rk4(pole, 0.0, dt, 20 * period, dt / 100)
    after = trace.values[100:]
    energy = after[:, 0] ** 2 + after[:, 1] ** 2
    assert np.max(np.abs(energy - energy[0])) < 1e-6 * energy[0]


def test_green_trace_derivative_is_consistent(table1_pole, table1_dt):
    trace = oracle.green_rk4(table1_pole, 0.0, table1_dt, 60 * table1_dt, table1_dt / 200)
    h = trace.times[1] - trace.times[0]
    after = slice(210, -1)
    slope = (trace.values[2:, 0] - trace.values[:-2, 0]) / (2 * h)
    derivative = trace.values[1:-1, 1]
    error = np.abs(slope[after] - derivative[after])
    assert np.max(error) < 1e-6 * np.max(np.abs(derivative))


def test_polarization_of_zero_drive(table1_pole, table1_dt):
    trace = oracle.polarization_rk4(np.zeros(5), table1_pole, table1_dt, table1_dt / 100)
    assert not np.any(trace.values)


def test_recurrence_is_exact_for_the_staircase(table1_pole):
    dt = 1e-12
    per_step = 100
    t = dt * np.arange(300)
    samples = np.exp(-0.5 * ((t - 100e-12) / 20e-12) ** 2) * np.cos(2 * math.pi * 30e9 * t)
    trace = oracle.polarization_rk4(samples, table1_pole, dt, dt / per_step)
    coeffs = tgm.make_coefficients(table1_pole, dt)
    state = tgm.zero_state()
    estimate = np.empty(len(samples))
    for k, e in enumerate(samples):
        state = tgm.advance_state(state, e, coeffs)
        estimate[k] = tgm.polarization_half_step(state, coeffs)
    reference = trace.values[per_step::per_step, 0]
    assert len(reference) == len(samples)
    assert np.max(np.abs(estimate - reference)) < 1e-8 * np.max(np.abs(reference))


def test_continuous_drive_reaches_static_polarization(table1_pole):
    e0 = 3.0
    t_end = 10 / table1_pole.delta_p
    trace = oracle.polarization_rk4_continuous(lambda t: e0 * np.ones_like(t), table1_pole, 0.0, t_end,
                                               t_end / 20000)
    assert trace.values[-1, 0] == pytest.approx(epsilon_0 * table1_pole.delta_eps * e0, rel=1e-3)
