import math

import pytest
from scipy.constants import c

from tgm_fdtd import ConfigParseException, InvalidConfigException
from tgm_fdtd.config import bundled_config_path, load_config, parse_config
from tgm_fdtd.dispersion import LorentzPole
from tgm_fdtd.tests.conftest import OMEGA_P, VACUUM_CONFIG

HEAD = """
[grid]
system_length = 0.05
n_grid = 3000

[source]
t0 = 1e-11
delta_t = 1e-12
omega0 = 6.283e11
"""


def test_bundled_table1(table1_config):
    config = table1_config
    assert config.system_length == 0.05
    assert config.n_grid == 3000
    assert config.cfl_factor == 0.9
    assert config.omega0 == pytest.approx(2 * math.pi * 100e9, rel=1e-15)
    assert config.delta_t == 1e-12 and config.t0 == 1e-11
    assert config.eps_inf == 1.5 and config.sigma == 0.0
    assert config.poles == ((3.0, pytest.approx(OMEGA_P, rel=1e-15), pytest.approx(0.1 * OMEGA_P, rel=1e-15)),)
    assert config.n_steps == 2 ** 15
    assert config.method == 'tgm'
    assert config.dx == pytest.approx(0.05 / 2999)
    assert config.dt == pytest.approx(0.9 * config.dx / c)


def test_long_config_keeps_the_table1_resolution(table1_config):
    long_config = load_config(bundled_config_path('table1_long.cfg'))
    assert long_config.dx == pytest.approx(table1_config.dx, rel=1e-12)
    assert long_config.dt == pytest.approx(table1_config.dt, rel=1e-12)
    assert long_config.medium() == table1_config.medium()
    assert long_config.source() == table1_config.source()


def test_defaults():
    config = parse_config(HEAD)
    assert config.cfl_factor == 0.9
    assert config.band_threshold == 0.001
    assert config.probes == (0.25, 0.499, 0.75)
    assert config.n_steps == 32768
    assert config.method == 'tgm'
    assert config.output is None
    assert config.green['samples'] == 50 and config.green['fine_divisions'] == 1000


def test_missing_medium_is_vacuum():
    assert parse_config(VACUUM_CONFIG).medium().is_vacuum
    assert parse_config(HEAD + '\n[medium]\n').medium().is_vacuum


def test_poles_ordered_by_index():
    text = HEAD + """
[medium.pole.2]
delta_eps = 1.0
omega_p = 2e11
delta_p = 0.0

[medium.pole.1]
delta_eps = 3.0
omega_p = 1e11
delta_p = 1e10
"""
    medium = parse_config(text).medium()
    assert medium.poles == (LorentzPole(3.0, 1e11, 1e10), LorentzPole(1.0, 2e11, 0.0))


def test_comments_and_run_section():
    text = HEAD + """
# run options
[run]
n_steps = 10        # short
probes = 0.1, 0.2
method = adem
output = out.csv
"""
    config = parse_config(text)
    assert config.n_steps == 10
    assert config.probes == (0.1, 0.2)
    assert config.method == 'adem'
    assert config.output == 'out.csv'


def test_cfl_violation_named():
    with pytest.raises(InvalidConfigException) as excinfo:
        parse_config(HEAD.replace('n_grid = 3000', 'n_grid = 3000\ncfl_factor = 1.1'))
    assert 'CFL' in str(excinfo.value)


@pytest.mark.parametrize('old, new', [
    ('n_grid = 3000', 'n_grid = 8'),
    ('n_grid = 3000', 'n_grid = 3000\nunknown_key = 1'),
    ('delta_t = 1e-12', 'delta_t = 0'),
    ('system_length = 0.05', 'system_length = -0.05'),
])
def test_invalid_values_rejected(old, new):
    with pytest.raises(InvalidConfigException):
        parse_config(HEAD.replace(old, new))


@pytest.mark.parametrize('section, line', [
    ('medium', 'sigma = -1'),
    ('medium', 'eps_inf = 0'),
    ('run', 'method = fdtd'),
    ('run', 'probes = 0.5, 1.0'),
    ('run', 'band_threshold = 0'),
    ('green', 'fine_divisions = 10'),
])
def test_invalid_optional_sections_rejected(section, line):
    with pytest.raises(InvalidConfigException):
        parse_config(HEAD + '\n[{}]\n{}\n'.format(section, line))


def test_unknown_section_rejected():
    with pytest.raises(InvalidConfigException):
        parse_config(HEAD + '\n[mesh]\nsize = 1\n')


def test_missing_required_section_rejected():
    with pytest.raises(InvalidConfigException):
        parse_config('[grid]\nsystem_length = 0.05\nn_grid = 100\n')


def test_degenerate_pole_rejected():
    with pytest.raises(InvalidConfigException) as excinfo:
        parse_config(HEAD + '\n[medium.pole.1]\ndelta_eps = 1\nomega_p = 1e11\ndelta_p = 1e11\n')
    assert 'medium.pole.1' in str(excinfo.value)


def test_missing_header_reports_line():
    with pytest.raises(ConfigParseException, match='line 1'):
        parse_config('system_length = 0.05\n')


def test_malformed_line_reports_line():
    with pytest.raises(ConfigParseException, match='line 4'):
        parse_config('[grid]\nsystem_length = 0.05\nn_grid = 100\nthis is not a setting\n')


def test_unconvertible_value_reports_line():
    with pytest.raises(ConfigParseException, match='line 4'):
        parse_config('[grid]\nsystem_length = 0.05\n\nn_grid = lots\n')


def test_duplicate_key_reports_line():
    with pytest.raises(ConfigParseException, match='line 3'):
        parse_config('[grid]\nn_grid = 100\nn_grid = 200\n')


def test_load_config_reads_files(tmp_path):
    path = tmp_path / 'vacuum.cfg'
    path.write_text(VACUUM_CONFIG)
    assert load_config(str(path)) == parse_config(VACUUM_CONFIG)


@pytest.mark.parametrize('name', ['table1.cfg', 'table1_long.cfg'])
def test_bundled_configs_leave_green_window_unset(name):
    config = load_config(bundled_config_path(name))
    assert config.green['t_start'] is None and config.green['t_end'] is None


def test_green_window_end_must_be_positive():
    assert parse_config(HEAD + '\n[green]\nt_end = 2e-12\n').green['t_end'] == 2e-12
    with pytest.raises(InvalidConfigException):
        parse_config(HEAD + '\n[green]\nt_end = 0\n')


def test_repeated_pole_index_reports_line():
    pole = 'delta_eps = 1\nomega_p = 1e11\ndelta_p = 1e10\n'
    text = HEAD + '\n[medium.pole.1]\n' + pole + '\n[medium.pole.01]\n' + pole
    with pytest.raises(ConfigParseException, match='line 16'):
        parse_config(text)
