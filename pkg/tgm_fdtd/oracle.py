"""Brute-force references for the recurrence: explicit convolution sums and fixed-step RK4.

The RK4 routines integrate the oscillator

    x'' + 2 delta_p x' + w_p**2 x = gain * u(t)

from rest. The staircase drives hold each sample u^n on [t_n - dt/2, t_n + dt/2),
with the fine mesh aligned to those edges so that no RK4 step straddles a jump.
"""
import math
from collections import namedtuple

import numpy as np
from scipy.constants import epsilon_0

from tgm_fdtd import DomainException
from tgm_fdtd import tgm

OdeTrace = namedtuple('OdeTrace', ['times', 'values'])


def _substeps(dt, fine_step):
    if not 0 < fine_step <= dt / 100.0 * (1 + 1e-12):
        raise DomainException('fine_step must satisfy 0 < fine_step <= dt/100, got {} for dt {}'.format(
            fine_step, dt))
    return int(math.ceil(dt / fine_step - 1e-9))


def _rk4(pole, gain, u_start, u_mid, u_end, t_start, h):
    """Classical RK4 with per-step forcing samples at the step start, midpoint and end."""
    w2 = pole.omega_p ** 2
    two_delta = 2.0 * pole.delta_p
    n_steps = len(u_start)
    values = np.empty((n_steps + 1, 2))
    x = v = 0.0
    values[0] = x, v
    for k in range(n_steps):
        f0, f1, f2 = gain * u_start[k], gain * u_mid[k], gain * u_end[k]
        k1x, k1v = v, f0 - w2 * x - two_delta * v
        xs, vs = x + 0.5 * h * k1x, v + 0.5 * h * k1v
        k2x, k2v = vs, f1 - w2 * xs - two_delta * vs
        xs, vs = x + 0.5 * h * k2x, v + 0.5 * h * k2v
        k3x, k3v = vs, f1 - w2 * xs - two_delta * vs
        xs, vs = x + h * k3x, v + h * k3v
        k4x, k4v = vs, f2 - w2 * xs - two_delta * vs
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        values[k + 1] = x, v
    times = t_start + h * np.arange(n_steps + 1)
    return OdeTrace(times, values)


def _staircase(held):
    held = np.asarray(held, dtype=float)
    return held, held, held


def direct_convolution_sum(e_history, pole, dt, t_eval):
    """P(t_eval) as the explicit sum of closed-form Green functions over every finished impulse."""
    e_history = np.asarray(e_history, dtype=float)
    t_n = dt * np.arange(len(e_history))
    done = t_n + 0.5 * dt <= t_eval * (1 + 1e-15)
    if not np.any(done):
        return 0.0
    coeffs = tgm.make_coefficients(pole, dt)
    kernel, scale = tgm.green_kernel(coeffs, t_eval - t_n[done])
    terms = e_history[done] * kernel
    total = tgm.real_part(np.sum(terms), np.sum(np.abs(e_history[done]) * scale), 'convolution sum')
    return epsilon_0 * pole.numerator() * total


def green_rk4(pole, t_n, dt, t_end, fine_step):
    """Response to the unit rectangle on [t_n - dt/2, t_n + dt/2]; values are (G, G')."""
    per_step = _substeps(dt, fine_step)
    h = dt / per_step
    t_start = t_n - 0.5 * dt
    n_steps = max(per_step, int(math.ceil((t_end - t_start) / h - 1e-9)))
    forcing = np.zeros(n_steps)
    forcing[:per_step] = 1.0
    return _rk4(pole, 1.0, *_staircase(forcing), t_start=t_start, h=h)


def polarization_rk4(e_samples, pole, dt, fine_step):
    """P and P' under the zero-order-hold staircase of ``e_samples``; the trace ends at t_N + dt/2."""
    per_step = _substeps(dt, fine_step)
    h = dt / per_step
    held = np.repeat(np.asarray(e_samples, dtype=float), per_step)
    gain = epsilon_0 * pole.numerator()
    return _rk4(pole, gain, *_staircase(held), t_start=-0.5 * dt, h=h)


def polarization_rk4_continuous(drive, pole, t_start, t_end, fine_step):
    """P and P' under a smooth drive E(t) given as a vectorized callable."""
    n_steps = int(math.ceil((t_end - t_start) / fine_step - 1e-9))
    h = (t_end - t_start) / n_steps
    starts = t_start + h * np.arange(n_steps)
    gain = epsilon_0 * pole.numerator()
    return _rk4(pole, gain, drive(starts), drive(starts + 0.5 * h), drive(starts + h),
                t_start=t_start, h=h)
