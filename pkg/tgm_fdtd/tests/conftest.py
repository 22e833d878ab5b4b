import math

import pytest
from scipy.constants import c

from tgm_fdtd.config import bundled_config_path, load_config, parse_config
from tgm_fdtd.dispersion import LorentzPole, Medium

OMEGA_P = 2 * math.pi * 20e9
TABLE1_DT = 0.9 * (0.05 / 2999) / c

SMALL_CONFIG = """
[grid]
system_length = 0.05
n_grid = 1000
cfl_factor = 0.9

[source]
t0 = 1e-11
delta_t = 1e-12
omega0 = 628318530717.9586

[medium]
eps_inf = 1.5

[medium.pole.1]
delta_eps = 3.0
omega_p = 125663706143.59172
delta_p = 12566370614.359172

[run]
n_steps = 600
"""

VACUUM_CONFIG = """
[grid]
system_length = 0.05
n_grid = 1000

[source]
t0 = 1e-11
delta_t = 1e-12
omega0 = 628318530717.9586

[run]
n_steps = 600
"""


@pytest.fixture
def table1_pole():
    return LorentzPole(3.0, OMEGA_P, 0.1 * OMEGA_P)


@pytest.fixture
def table1_medium(table1_pole):
    return Medium(1.5, 0.0, [table1_pole])


@pytest.fixture
def table1_dt():
    return TABLE1_DT


@pytest.fixture
def table1_config():
    return load_config(bundled_config_path('table1.cfg'))


@pytest.fixture
def small_config():
    return parse_config(SMALL_CONFIG)


@pytest.fixture
def vacuum_config():
    return parse_config(VACUUM_CONFIG)
