from collections import OrderedDict

import numpy as np
from cerberus import Validator

from tgm_fdtd import InvalidConfigException, UnknownUpdaterException
from tgm_fdtd import ade, tgm

_registered_updaters = None

SCHEMA_TIME_STEP = {
    'type': 'float', 'required': True, 'min': 0.0, 'forbidden': [0.0],
    'meta': {'caption': 'Time step (s)'},
}
SCHEMA_CELL_COUNT = {
    'type': 'integer', 'required': True, 'min': 0,
    'meta': {'caption': 'Number of dispersive cells'},
}


def get_registered_updaters():
    global _registered_updaters
    if _registered_updaters is None:
        updaters_dict = OrderedDict()
        for updater_cls in DEFAULT_UPDATER_CLASSES:
            assert updater_cls.name, 'Updater class should have specified a "name"'
            assert issubclass(updater_cls, DispersiveUpdater), 'Updater should be subclass of DispersiveUpdater'
            updaters_dict[updater_cls.name] = updater_cls
        _registered_updaters = updaters_dict
    return _registered_updaters


class DispersiveUpdater(object):
    """Polarization state of one medium block: every pole of the medium on every cell of the block.

    ``advance`` takes E^N on the block's cells (step (b) of the leapfrog cycle);
    ``current`` then returns the summed dP/dt at t_N + dt/2 used by the E update.
    """
    name = None
    PARAMS_SCHEMA_VALIDATOR = {
        'dt': SCHEMA_TIME_STEP,
        'n_cells': SCHEMA_CELL_COUNT,
    }

    def __init__(self, poles, **kwargs):
        self.poles = tuple(poles)
        self.kwargs = self.validate_args(kwargs)
        self.dt = self.kwargs['dt']
        self.n_cells = self.kwargs['n_cells']

    @classmethod
    def validate_args(cls, kwargs):
        args_schema = {}
        for arg_name, arg_schema in (cls.PARAMS_SCHEMA_VALIDATOR or {}).items():
            args_schema[arg_name] = {k: v for k, v in (arg_schema or {}).items() if not k.startswith('_')}

        v = Validator(args_schema, purge_unknown=True)
        if not v.validate(kwargs or {}):
            raise InvalidConfigException('Invalid updater params', v.errors)
        return v.document

    def advance(self, e_cells):
        raise NotImplementedError

    def current(self):
        raise NotImplementedError

    def polarization(self):
        """Summed P on the block cells at the latest time the updater holds (diagnostics)."""
        raise NotImplementedError

    @staticmethod
    def get_class_by_name(name):
        updater_cls = get_registered_updaters().get(name)
        if not updater_cls:
            raise UnknownUpdaterException('No dispersive updater: "{}"'.format(name))
        return updater_cls


class TgmUpdater(DispersiveUpdater):
    name = 'tgm'

    def __init__(self, poles, coefficient_hook=None, **kwargs):
        super().__init__(poles, **kwargs)
        self.coefficients = [tgm.make_coefficients(pole, self.dt) for pole in self.poles]
        if coefficient_hook is not None:
            self.coefficients = [coefficient_hook(c) for c in self.coefficients]
        self.states = [tgm.zero_state((self.n_cells,)) for _ in self.poles]

    def advance(self, e_cells):
        self.states = [tgm.advance_state(state, e_cells, coeffs)
                       for state, coeffs in zip(self.states, self.coefficients)]

    def current(self):
        total = np.zeros(self.n_cells)
        for state, coeffs in zip(self.states, self.coefficients):
            total += tgm.polarization_current_half_step(state, coeffs)
        return total

    def polarization(self):
        total = np.zeros(self.n_cells)
        for state, coeffs in zip(self.states, self.coefficients):
            total += tgm.polarization_half_step(state, coeffs)
        return total


class AdeUpdater(DispersiveUpdater):
    name = 'adem'

    def __init__(self, poles, **kwargs):
        super().__init__(poles, **kwargs)
        self.states = [ade.zero_state((self.n_cells,)) for _ in self.poles]

    def advance(self, e_cells):
        self.states = [ade.ade_advance(state, e_cells, pole, self.dt)[0]
                       for state, pole in zip(self.states, self.poles)]

    def current(self):
        total = np.zeros(self.n_cells)
        for state in self.states:
            total += ade.ade_current_half_step(state, self.dt)
        return total

    def polarization(self):
        total = np.zeros(self.n_cells)
        for state in self.states:
            total += state.p_now
        return total


DEFAULT_UPDATER_CLASSES = [
    TgmUpdater, AdeUpdater
]
