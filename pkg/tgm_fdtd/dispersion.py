"""Frequency-domain Lorentz material model.

The relative permittivity follows the damped-oscillator sum

    eps(w) = eps_inf + sum_p  d_eps_p * w_p**2 / (w_p**2 + 2j*w*delta_p - w**2)

with the time convention exp(+i w t). All functions accept scalars or numpy arrays
of angular frequencies.
"""
from collections import namedtuple

import numpy as np

from tgm_fdtd import DegeneratePoleException, InvalidMediumException, ResonanceException


class LorentzPole(namedtuple('LorentzPole', ['delta_eps', 'omega_p', 'delta_p'])):
    """One damped-oscillator term (oscillator strength, resonance and damping in rad/s)."""

    __slots__ = ()

    def __new__(cls, delta_eps, omega_p, delta_p):
        delta_eps, omega_p, delta_p = float(delta_eps), float(omega_p), float(delta_p)
        if not omega_p > 0:
            raise DegeneratePoleException('omega_p must be positive, got {}'.format(omega_p))
        if delta_p < 0:
            raise DegeneratePoleException('delta_p must be non-negative, got {}'.format(delta_p))
        if delta_p == omega_p:
            raise DegeneratePoleException(
                'critically damped pole (delta_p == omega_p == {}) has a double root'.format(omega_p))
        return super().__new__(cls, delta_eps, omega_p, delta_p)

    @property
    def underdamped(self):
        return self.delta_p < self.omega_p

    def numerator(self):
        return self.delta_eps * self.omega_p ** 2

    def susceptibility(self, omega):
        return self.numerator() / (self.omega_p ** 2 + 2j * omega * self.delta_p - omega ** 2)


class Medium(namedtuple('Medium', ['eps_inf', 'sigma', 'poles'])):
    __slots__ = ()

    def __new__(cls, eps_inf=1.0, sigma=0.0, poles=()):
        eps_inf, sigma = float(eps_inf), float(sigma)
        if not eps_inf > 0:
            raise InvalidMediumException('eps_inf must be positive, got {}'.format(eps_inf))
        if sigma < 0:
            raise InvalidMediumException('sigma must be non-negative, got {}'.format(sigma))
        poles = tuple(p if isinstance(p, LorentzPole) else LorentzPole(*p) for p in poles)
        return super().__new__(cls, eps_inf, sigma, poles)

    @property
    def is_dispersive(self):
        return bool(self.poles)

    @property
    def is_vacuum(self):
        return self.eps_inf == 1.0 and self.sigma == 0.0 and not self.poles


VACUUM = Medium()


def _check_resonance(pole, omega):
    if pole.delta_p == 0 and np.any(np.abs(omega) == pole.omega_p):
        raise ResonanceException(
            'permittivity diverges at the undamped resonance omega = {}'.format(pole.omega_p))


def permittivity(medium, omega):
    eps = medium.eps_inf + 0j * np.asarray(omega, dtype=float)
    for pole in medium.poles:
        _check_resonance(pole, omega)
        eps = eps + pole.susceptibility(omega)
    if np.ndim(eps) == 0:
        return complex(eps)
    return eps


def pole_roots(pole):
    """Return (z_plus, z_minus) = i*delta_p +/- sqrt(omega_p**2 - delta_p**2), principal branch."""
    s = np.sqrt(complex(pole.omega_p ** 2 - pole.delta_p ** 2))
    if s == 0:
        raise DegeneratePoleException('pole roots coincide for {!r}'.format(pole))
    return complex(1j * pole.delta_p + s), complex(1j * pole.delta_p - s)


def reflection_coefficient(medium, omega):
    """Normal-incidence Fresnel coefficient of the vacuum/medium interface (mu' = mu0)."""
    n = np.sqrt(permittivity(medium, omega))
    r = (n - 1) / (n + 1)
    if np.ndim(r) == 0:
        return complex(r)
    return r
