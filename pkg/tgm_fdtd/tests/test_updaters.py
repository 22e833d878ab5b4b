import numpy as np
import pytest
from scipy.constants import epsilon_0

from tgm_fdtd import InvalidConfigException, UnknownUpdaterException
from tgm_fdtd import ade, tgm
from tgm_fdtd.checks import _settle_steps
from tgm_fdtd.dispersion import LorentzPole
from tgm_fdtd.updaters import AdeUpdater, DispersiveUpdater, TgmUpdater, get_registered_updaters


def test_registry():
    assert list(get_registered_updaters()) == ['tgm', 'adem']
    assert DispersiveUpdater.get_class_by_name('adem') is AdeUpdater


def test_unknown_updater():
    with pytest.raises(UnknownUpdaterException):
        DispersiveUpdater.get_class_by_name('plrc')


@pytest.mark.parametrize('kwargs', [{'dt': 0.0, 'n_cells': 4}, {'dt': -1e-12, 'n_cells': 4},
                                    {'dt': 1e-12, 'n_cells': -1}, {'n_cells': 4}])
def test_invalid_params(table1_pole, kwargs):
    with pytest.raises(InvalidConfigException):
        TgmUpdater([table1_pole], **kwargs)


def test_tgm_updater_sums_poles_per_cell(table1_pole, table1_dt):
    second = LorentzPole(1.0, 3e11, 2e10)
    updater = TgmUpdater([table1_pole, second], dt=table1_dt, n_cells=3)
    fields = np.random.default_rng(1).standard_normal((40, 3))
    for row in fields:
        updater.advance(row)
    for k in range(3):
        current = 0.0
        for pole in (table1_pole, second):
            coeffs = tgm.make_coefficients(pole, table1_dt)
            state = tgm.zero_state()
            for e in fields[:, k]:
                state = tgm.advance_state(state, e, coeffs)
            current += tgm.polarization_current_half_step(state, coeffs)
        assert updater.current()[k] == pytest.approx(current, rel=1e-12)


def test_coefficient_hook_is_applied(table1_pole, table1_dt):
    def silence(coeffs):
        return coeffs._replace(inject_plus=0j, inject_minus=0j)

    updater = TgmUpdater([table1_pole], dt=table1_dt, n_cells=2, coefficient_hook=silence)
    updater.advance(np.ones(2))
    assert not np.any(updater.current())


def test_ade_updater_matches_scalar_update(table1_pole, table1_dt):
    updater = AdeUpdater([table1_pole], dt=table1_dt, n_cells=2)
    state = ade.zero_state()
    for e in np.linspace(0.0, 1.0, 25):
        updater.advance(np.array([e, -e]))
        state, _ = ade.ade_advance(state, e, table1_pole, table1_dt)
    expected = ade.ade_current_half_step(state, table1_dt)
    np.testing.assert_allclose(updater.current(), [expected, -expected], rtol=1e-14)
    np.testing.assert_allclose(updater.polarization(), [state.p_now, -state.p_now], rtol=1e-14)


@pytest.mark.parametrize('updater_cls', [TgmUpdater, AdeUpdater])
def test_static_polarization(updater_cls, table1_pole, table1_dt):
    updater = updater_cls([table1_pole], dt=table1_dt, n_cells=1)
    for _ in range(_settle_steps(table1_pole, table1_dt)):
        updater.advance(np.ones(1))
    assert updater.polarization()[0] == pytest.approx(epsilon_0 * table1_pole.delta_eps, rel=1e-3)
