"""Auxiliary differential equation update for one Lorentz pole.

Central differences for both time derivatives of

    w_p**2 P + 2 delta_p dP/dt + d2P/dt2 = eps0 d_eps_p w_p**2 E

with E sampled at step N give an explicit three-level update for P^{N+1}.
The scheme is stable only while w_p * dt is small; nothing checks that here.
"""
from collections import namedtuple

import numpy as np
from scipy.constants import epsilon_0

AdePoleState = namedtuple('AdePoleState', ['p_now', 'p_prev'])


def zero_state(shape=()):
    if shape == ():
        return AdePoleState(0.0, 0.0)
    return AdePoleState(np.zeros(shape), np.zeros(shape))


def ade_advance(state, e_now, pole, dt):
    """Return (next state, P^{N+1}); the next state holds (P^{N+1}, P^N)."""
    w2dt2 = (pole.omega_p * dt) ** 2
    damping = pole.delta_p * dt
    drive = epsilon_0 * pole.numerator() * dt ** 2 * e_now
    p_next = ((2.0 - w2dt2) * state.p_now - (1.0 - damping) * state.p_prev + drive) / (1.0 + damping)
    return AdePoleState(p_next, state.p_now), p_next


def ade_current_half_step(state, dt):
    """dP/dt at t_N + dt/2 from a state returned by ade_advance."""
    return (state.p_now - state.p_prev) / dt
