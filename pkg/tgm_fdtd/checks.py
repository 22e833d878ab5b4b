import logging
import math
from collections import OrderedDict, namedtuple

import numpy as np
from scipy.constants import epsilon_0

from tgm_fdtd import ade, oracle, tgm
from tgm_fdtd.dispersion import pole_roots

logger = logging.getLogger(__name__)

RECURRENCE_LENGTH = 2000
RECURRENCE_TOLERANCE = 1e-10
CONJUGACY_TOLERANCE = 1e-12
STEADY_STATE_TOLERANCE = 1e-3
GREEN_TOLERANCE = 1e-6
MIN_CONVERGENCE_ORDER = 1.85

PASSED, FAILED, SKIPPED = 'passed', 'failed', 'skipped'

CheckContext = namedtuple('CheckContext', ['pole', 'dt', 'coefficient_hook', 'seed'])
CheckResult = namedtuple('CheckResult', ['name', 'pole_index', 'status', 'detail'])

_registered_checks = None


def get_registered_checks():
    global _registered_checks
    if _registered_checks is None:
        checks_dict = OrderedDict()
        for check_cls in DEFAULT_CHECK_CLASSES:
            assert check_cls.name, 'Check class should have specified a "name"'
            assert issubclass(check_cls, VerificationCheck), 'Check should be subclass of VerificationCheck'
            checks_dict[check_cls.name] = check_cls
        _registered_checks = checks_dict
    return _registered_checks


def _coefficients(context):
    coeffs = tgm.make_coefficients(context.pole, context.dt)
    if context.coefficient_hook is not None:
        coeffs = context.coefficient_hook(coeffs)
    return coeffs


def _random_history(context, length=RECURRENCE_LENGTH):
    return np.random.default_rng(context.seed).standard_normal(length)


def _settle_steps(pole, dt):
    """Steps covering ten decay times of the slower root."""
    rate = min(z.imag for z in pole_roots(pole))
    return int(math.ceil(10.0 / rate / dt))


def tgm_temporal_errors(pole, divisions=(40, 80), coefficient_hook=None, fine_divisions=50):
    """Max relative error of TGM P(t_N + dt/2) against RK4 of the smooth drive, per dt = period/d.

    The drive is a Gaussian-enveloped sinusoid at half the resonance frequency,
    quiet at t = 0 so the staircase and the smooth drive start from rest together.
    """
    period = 2.0 * math.pi / pole.omega_p
    centre, width, omega_d = 8.0 * period, 1.5 * period, 0.5 * pole.omega_p

    def drive(t):
        return np.exp(-0.5 * ((t - centre) / width) ** 2) * np.sin(omega_d * (t - centre))

    errors = []
    for d in divisions:
        dt = period / d
        n = 16 * d
        coeffs = tgm.make_coefficients(pole, dt)
        if coefficient_hook is not None:
            coeffs = coefficient_hook(coeffs)
        state = tgm.zero_state()
        estimate = np.empty(n)
        for k, e in enumerate(drive(dt * np.arange(n))):
            state = tgm.advance_state(state, e, coeffs)
            estimate[k] = tgm.polarization_half_step(state, coeffs)
        trace = oracle.polarization_rk4_continuous(drive, pole, -0.5 * dt, (n - 0.5) * dt, dt / fine_divisions)
        reference = trace.values[fine_divisions::fine_divisions, 0][:n]
        errors.append(float(np.max(np.abs(estimate - reference)) / np.max(np.abs(reference))))
    return errors


class VerificationCheck(object):
    name = None

    def is_applicable(self, context):
        """Return a skip reason, or None when the check applies to this pole."""
        return None

    def run(self, context):
        """Return (passed, detail)."""
        raise NotImplementedError

    def __repr__(self):
        return '<{} {}>'.format(type(self).__name__, self.name)


class RecurrenceCheck(VerificationCheck):
    """The F recurrence reproduces the explicit convolution sum of Green functions."""
    name = 'recurrence'

    def run(self, context):
        coeffs = _coefficients(context)
        history = _random_history(context)
        state = tgm.zero_state()
        recurrence, direct = [], []
        for n, e in enumerate(history):
            state = tgm.advance_state(state, e, coeffs)
            if (n + 1) % 250 == 0:
                t_eval = (n + 0.5) * context.dt
                recurrence.append(tgm.polarization(state, context.pole, coeffs, 0.5 * context.dt))
                direct.append(oracle.direct_convolution_sum(history[:n + 1], context.pole, context.dt, t_eval))
        recurrence, direct = np.array(recurrence), np.array(direct)
        worst = float(np.max(np.abs(recurrence - direct)) / np.max(np.abs(direct)))
        return worst < RECURRENCE_TOLERANCE, 'max relative difference {:.3e}'.format(worst)


class GreenClosedFormCheck(VerificationCheck):
    name = 'green_closed_form'

    def run(self, context):
        dt = context.dt
        trace = oracle.green_rk4(context.pole, 0.0, dt, 49.5 * dt, dt / 1000)
        picks = np.arange(1000, len(trace.times), 1000)
        closed = tgm.green_function(context.pole, trace.times[picks], 0.0, dt)
        reference = trace.values[picks, 0]
        error = float(np.max(np.abs(closed - reference)) / np.max(np.abs(reference)))
        return error < GREEN_TOLERANCE, 'max relative difference {:.3e}'.format(error)


class TgmSteadyStateCheck(VerificationCheck):
    name = 'tgm_steady_state'

    def is_applicable(self, context):
        if context.pole.delta_p == 0:
            return 'undamped'

    def run(self, context):
        coeffs = _coefficients(context)
        state = tgm.zero_state()
        for _ in range(_settle_steps(context.pole, context.dt)):
            state = tgm.advance_state(state, 1.0, coeffs)
        expected = epsilon_0 * context.pole.delta_eps
        p = tgm.polarization_half_step(state, coeffs)
        error = abs(p - expected) / abs(expected)
        return error < STEADY_STATE_TOLERANCE, 'relative deviation {:.3e}'.format(error)


class AdeSteadyStateCheck(VerificationCheck):
    name = 'ade_steady_state'

    def is_applicable(self, context):
        if context.pole.delta_p == 0:
            return 'undamped'

    def run(self, context):
        state = ade.zero_state()
        p = 0.0
        for _ in range(_settle_steps(context.pole, context.dt)):
            state, p = ade.ade_advance(state, 1.0, context.pole, context.dt)
        expected = epsilon_0 * context.pole.delta_eps
        error = abs(p - expected) / abs(expected)
        return error < STEADY_STATE_TOLERANCE, 'relative deviation {:.3e}'.format(error)


class ConjugacyCheck(VerificationCheck):
    name = 'conjugacy'

    def is_applicable(self, context):
        if not context.pole.underdamped:
            return 'overdamped'

    def run(self, context):
        coeffs = _coefficients(context)
        state = tgm.zero_state()
        worst = 0.0
        for e in _random_history(context):
            state = tgm.advance_state(state, e, coeffs)
            scale = max(abs(state.f_plus), np.finfo(float).tiny)
            worst = max(worst, abs(state.f_minus - state.f_plus.conjugate()) / scale)
        return worst < CONJUGACY_TOLERANCE, 'max relative asymmetry {:.3e}'.format(worst)


class RealnessCheck(VerificationCheck):
    """P and dP/dt evaluate with a negligible imaginary residual (evaluation raises otherwise)."""
    name = 'realness'

    def run(self, context):
        coeffs = _coefficients(context)
        state = tgm.zero_state()
        for e in _random_history(context):
            state = tgm.advance_state(state, e, coeffs)
            tgm.polarization(state, context.pole, coeffs, 0.0)
            tgm.polarization_half_step(state, coeffs)
            tgm.polarization_current_half_step(state, coeffs)
        return True, 'residual below {:.0e}'.format(tgm.RESIDUAL_TOLERANCE)


class NonAmplificationCheck(VerificationCheck):
    name = 'non_amplification'

    def run(self, context):
        coeffs = _coefficients(context)
        state = tgm.zero_state()
        for e in _random_history(context, 200):
            state = tgm.advance_state(state, e, coeffs)
        strict = context.pole.delta_p * context.dt > 1e-12
        slack = 1 + 4 * np.finfo(float).eps
        for _ in range(500):
            previous = state
            state = tgm.advance_state(state, 0.0, coeffs)
            for old, new in ((previous.f_plus, state.f_plus), (previous.f_minus, state.f_minus)):
                if abs(new) > abs(old) * slack or (strict and old != 0 and not abs(new) < abs(old)):
                    return False, '|F| grew from {:.6e} to {:.6e}'.format(abs(old), abs(new))
        return True, '|prop+|={:.12f} |prop-|={:.12f}'.format(abs(coeffs.prop_plus), abs(coeffs.prop_minus))


class AdeFixedPointCheck(VerificationCheck):
    name = 'ade_fixed_point'

    def run(self, context):
        e0 = 1.0
        p = epsilon_0 * context.pole.delta_eps * e0
        _, p_next = ade.ade_advance(ade.AdePoleState(p, p), e0, context.pole, context.dt)
        error = abs(p_next - p) / abs(p)
        return error <= 8 * np.finfo(float).eps, 'relative change {:.3e}'.format(error)


class ConvergenceOrderCheck(VerificationCheck):
    name = 'convergence_order'

    def run(self, context):
        coarse, fine = tgm_temporal_errors(context.pole, coefficient_hook=context.coefficient_hook)
        order = math.log2(coarse / fine)
        return order >= MIN_CONVERGENCE_ORDER, 'observed order {:.3f}'.format(order)


class CheckRunner(object):
    """Runs every registered check on every pole of the configured medium."""

    def __init__(self, config, coefficient_hook=None, seed=0):
        self.config = config
        self.coefficient_hook = coefficient_hook
        self.seed = seed

    def run(self):
        results = []
        poles = self.config.medium().poles
        if not poles:
            for name in get_registered_checks():
                results.append(CheckResult(name, None, SKIPPED, 'vacuum medium'))
            return results
        for index, pole in enumerate(poles, start=1):
            context = CheckContext(pole, self.config.dt, self.coefficient_hook, self.seed)
            for name, check_cls in get_registered_checks().items():
                results.append(self.run_check(check_cls(), index, context))
        return results

    @staticmethod
    def run_check(check, index, context):
        reason = check.is_applicable(context)
        if reason:
            logger.info('check %s on pole %d skipped: %s', check.name, index, reason)
            return CheckResult(check.name, index, SKIPPED, reason)
        try:
            passed, detail = check.run(context)
        except Exception as e:
            logger.exception('check %s on pole %d raised', check.name, index)
            return CheckResult(check.name, index, FAILED, '{}: {}'.format(type(e).__name__, e))
        status = PASSED if passed else FAILED
        logger.info('check %s on pole %d %s: %s', check.name, index, status, detail)
        return CheckResult(check.name, index, status, detail)


DEFAULT_CHECK_CLASSES = [
    RecurrenceCheck,
    GreenClosedFormCheck,
    TgmSteadyStateCheck,
    AdeSteadyStateCheck,
    ConjugacyCheck,
    RealnessCheck,
    NonAmplificationCheck,
    AdeFixedPointCheck,
    ConvergenceOrderCheck,
]
