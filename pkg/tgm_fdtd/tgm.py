"""Transient Green Method for one Lorentz pole.

The polarization driven by a sampled field E^n (each sample held over
[t_n - dt/2, t_n + dt/2]) is the superposition of closed-form Green functions
of the oscillator equation

    w_p**2 P + 2 delta_p dP/dt + d2P/dt2 = eps0 d_eps_p w_p**2 E.

Writing the Green function as a sum of the two pole terms exp(i z t) turns the
convolution over the whole history into the recurrence

    F_N = F_{N-1} * exp(i z dt) + inject * E^N

kept separately for both roots z+ and z-. P and dP/dt at any
t in [t_N, t_N + dt] follow from F_N by multiplication only.

Every function works elementwise on numpy arrays of states and fields, which is
how the grid updaters drive a whole medium block at once.
"""
import logging
from collections import namedtuple

import numpy as np
from scipy.constants import epsilon_0

from tgm_fdtd import DomainException, ImaginaryResidualException
from tgm_fdtd.dispersion import pole_roots

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-10

PoleCoefficients = namedtuple('PoleCoefficients', [
    'z_plus', 'z_minus',
    'prop_plus', 'prop_minus',
    'inject_plus', 'inject_minus',
    'curr_plus', 'curr_minus',
    'pol_plus', 'pol_minus',
    'gain', 'dt',
])

PoleState = namedtuple('PoleState', ['f_plus', 'f_minus'])


def zero_state(shape=()):
    if shape == ():
        return PoleState(0j, 0j)
    return PoleState(np.zeros(shape, dtype=complex), np.zeros(shape, dtype=complex))


def _inject(z, z_other, dt):
    return (np.exp(0.5j * z * dt) - np.exp(-0.5j * z * dt)) / (z * (z_other - z))


def make_coefficients(pole, dt):
    if not dt > 0:
        raise DomainException('time step must be positive, got {}'.format(dt))
    z_plus, z_minus = pole_roots(pole)
    gain = epsilon_0 * pole.numerator()
    half_plus, half_minus = np.exp(0.5j * z_plus * dt), np.exp(0.5j * z_minus * dt)
    logger.debug('TGM coefficients for %r at dt=%.6e: z+=%s z-=%s', pole, dt, z_plus, z_minus)
    return PoleCoefficients(
        z_plus=z_plus,
        z_minus=z_minus,
        prop_plus=complex(np.exp(1j * z_plus * dt)),
        prop_minus=complex(np.exp(1j * z_minus * dt)),
        inject_plus=complex(_inject(z_plus, z_minus, dt)),
        inject_minus=complex(_inject(z_minus, z_plus, dt)),
        curr_plus=complex(1j * gain * z_plus * half_plus),
        curr_minus=complex(1j * gain * z_minus * half_minus),
        pol_plus=complex(gain * half_plus),
        pol_minus=complex(gain * half_minus),
        gain=gain,
        dt=float(dt),
    )


def real_part(value, scale, what='value'):
    """Drop the imaginary part of a complex evaluation that must be real.

    ``scale`` is the magnitude the residual is measured against; a residual above
    RESIDUAL_TOLERANCE * scale means the coefficients are inconsistent.
    """
    residual = np.abs(np.imag(value))
    if np.any(residual > RESIDUAL_TOLERANCE * np.asarray(scale)):
        raise ImaginaryResidualException(
            'imaginary residual of {} is {:.3e} relative'.format(
                what, float(np.max(residual / np.maximum(scale, np.finfo(float).tiny)))))
    value = np.real(value)
    if np.ndim(value) == 0:
        return float(value)
    return value


def green_kernel(coeffs, elapsed):
    """Complex closed-form Green function at ``elapsed`` = t - t_n (valid for elapsed >= dt/2)."""
    term_plus = coeffs.inject_plus * np.exp(1j * coeffs.z_plus * elapsed)
    term_minus = coeffs.inject_minus * np.exp(1j * coeffs.z_minus * elapsed)
    return term_plus + term_minus, np.abs(term_plus) + np.abs(term_minus)


def green_function(pole, t, t_n, dt):
    elapsed = np.asarray(t, dtype=float) - t_n
    if np.any(elapsed < 0.5 * dt * (1 - 1e-12)):
        raise DomainException(
            'Green function is evaluated only after the impulse, t >= t_n + dt/2 (t - t_n = {})'.format(
                float(np.min(elapsed))))
    value, scale = green_kernel(make_coefficients(pole, dt), elapsed)
    return real_part(value, scale, 'Green function')


def advance_state(state, e_now, coeffs):
    return PoleState(
        state.f_plus * coeffs.prop_plus + coeffs.inject_plus * e_now,
        state.f_minus * coeffs.prop_minus + coeffs.inject_minus * e_now,
    )


def polarization(state, pole, coeffs, tau):
    """P at t_N + tau from the state F_N, 0 <= tau <= dt."""
    if not 0 <= tau <= coeffs.dt:
        raise DomainException('tau must lie in [0, dt], got {}'.format(tau))
    gain = coeffs.gain
    term_plus = np.exp(1j * coeffs.z_plus * tau) * state.f_plus
    term_minus = np.exp(1j * coeffs.z_minus * tau) * state.f_minus
    scale = abs(gain) * (np.abs(term_plus) + np.abs(term_minus))
    return real_part(gain * (term_plus + term_minus), scale, 'polarization')


def polarization_half_step(state, coeffs):
    """P at t_N + dt/2 using the precomputed half-step factors."""
    term_plus = coeffs.pol_plus * state.f_plus
    term_minus = coeffs.pol_minus * state.f_minus
    return real_part(term_plus + term_minus, np.abs(term_plus) + np.abs(term_minus), 'polarization')


def polarization_current_half_step(state, coeffs):
    """dP/dt at t_N + dt/2; ``state`` must already hold the injection of E^N."""
    term_plus = coeffs.curr_plus * state.f_plus
    term_minus = coeffs.curr_minus * state.f_minus
    return real_part(term_plus + term_minus, np.abs(term_plus) + np.abs(term_minus),
                     'polarization current')
