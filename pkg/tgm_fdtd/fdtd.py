"""One-dimensional Yee leapfrog solver with dispersive half-space.

E_y lives on integer nodes x_i = i*dx at integer time levels, B_z on half nodes
x_{i+1/2} at half time levels. In SI units

    dB/dt = -dE/dx
    eps0 eps_inf dE/dt = -(1/mu0) dB/dx - sigma E - sum_p dP_p/dt

where the polarization current at t_N + dt/2 comes from a dispersive updater
(TGM or ADE) that has already been fed E^N.
"""
import logging
import time
from collections import namedtuple

import numpy as np
from scipy.constants import c, epsilon_0, mu_0

from tgm_fdtd import InvalidConfigException
from tgm_fdtd.dispersion import VACUUM
from tgm_fdtd.updaters import DispersiveUpdater

logger = logging.getLogger(__name__)

BOUNDARIES = ('mur', 'pec')


class GaussianSource(namedtuple('GaussianSource', ['t0', 'delta_t', 'omega0', 'amplitude'])):
    __slots__ = ()

    def __new__(cls, t0, delta_t, omega0, amplitude=1.0):
        if not delta_t > 0:
            raise InvalidConfigException('Invalid source', {'delta_t': ['must be positive']})
        return super().__new__(cls, float(t0), float(delta_t), float(omega0), float(amplitude))

    @property
    def cutoff(self):
        """The hard source drives node 0 only before this time."""
        return 2.0 * self.t0


ProbeSeries = namedtuple('ProbeSeries', ['node_index', 'samples', 'dt'])

MediumBlock = namedtuple('MediumBlock', ['medium', 'nodes', 'updater'])


def source_value(src, t):
    shifted = np.asarray(t, dtype=float) - src.t0
    value = src.amplitude * np.exp(-shifted ** 2 / (2.0 * src.delta_t ** 2)) * np.cos(src.omega0 * shifted)
    if np.ndim(value) == 0:
        return float(value)
    return value


def mur_update(e_boundary_old, e_neighbor_old, e_neighbor_new, dx, dt, speed=c):
    """First-order Mur value of a boundary node for a wave leaving at ``speed``."""
    coefficient = (speed * dt - dx) / (speed * dt + dx)
    return e_neighbor_old + coefficient * (e_neighbor_new - e_boundary_old)


def interface_node(n_grid):
    """First node with x_i >= L/2."""
    return n_grid // 2


class Grid1D(object):
    """Staggered field arrays and the per-node medium map."""

    def __init__(self, n_grid, dx, dt, media, medium_index):
        self.n_grid = n_grid
        self.dx = dx
        self.dt = dt
        self.media = tuple(media)
        self.medium_index = np.asarray(medium_index, dtype=int)
        assert self.medium_index.shape == (n_grid,)
        self.e = np.zeros(n_grid)
        self.b = np.zeros(n_grid - 1)
        self.eps_inf = np.array([self.media[k].eps_inf for k in self.medium_index])
        self.sigma = np.array([self.media[k].sigma for k in self.medium_index])

    def nodes_of(self, k):
        return np.flatnonzero(self.medium_index == k)

    def wave_speed(self, node):
        return c / np.sqrt(self.eps_inf[node])


class Simulation(object):

    def __init__(self, grid, source, method='tgm', boundary='mur', include_dispersion=True,
                 coefficient_hook=None):
        assert boundary in BOUNDARIES, 'boundary should be one of {}'.format(BOUNDARIES)
        self.grid = grid
        self.source = source
        self.method = method
        self.boundary = boundary
        self.include_dispersion = include_dispersion
        self.step_count = 0

        updater_cls = DispersiveUpdater.get_class_by_name(method)
        extra = {'coefficient_hook': coefficient_hook} if coefficient_hook is not None else {}
        self.blocks = []
        for k, medium in enumerate(grid.media):
            nodes = grid.nodes_of(k)
            if not medium.poles or not len(nodes):
                continue
            updater = updater_cls(medium.poles, dt=grid.dt, n_cells=len(nodes), **extra)
            self.blocks.append(MediumBlock(medium, nodes, updater))

        self._e_coefficient = grid.dt / (epsilon_0 * grid.eps_inf[1:-1])
        self._curl_coefficient = 1.0 / (mu_0 * grid.dx)
        self._sigma_inner = grid.sigma[1:-1]
        self._conductive = bool(np.any(self._sigma_inner))
        self._b_coefficient = grid.dt / grid.dx
        self._current = np.zeros(grid.n_grid)
        self._left_speed = grid.wave_speed(0)
        self._right_speed = grid.wave_speed(-1)

        grid.e[0] = source_value(source, 0.0)

    @property
    def time(self):
        return self.step_count * self.grid.dt

    @property
    def pole_states(self):
        return [block.updater.states for block in self.blocks]

    def step(self):
        grid = self.grid
        e, b = grid.e, grid.b
        e0_old, e1_old = e[0], e[1]
        en_old, en1_old = e[-1], e[-2]

        for block in self.blocks:
            block.updater.advance(e[block.nodes])

        b -= self._b_coefficient * (e[1:] - e[:-1])

        drive = self._curl_coefficient * (b[1:] - b[:-1])
        if self._conductive:
            drive += self._sigma_inner * e[1:-1]
        if self.include_dispersion and self.blocks:
            self._current[:] = 0.0
            for block in self.blocks:
                self._current[block.nodes] += block.updater.current()
            drive += self._current[1:-1]
        e[1:-1] -= self._e_coefficient * drive

        self.step_count += 1
        t_next = self.time
        if t_next < self.source.cutoff:
            e[0] = source_value(self.source, t_next)
        elif self.boundary == 'mur':
            e[0] = mur_update(e0_old, e1_old, e[1], grid.dx, grid.dt, self._left_speed)
        else:
            e[0] = 0.0
        if self.boundary == 'mur':
            e[-1] = mur_update(en_old, en1_old, e[-2], grid.dx, grid.dt, self._right_speed)

    def energy(self):
        """Discrete leapfrog energy per unit area, sum(eps E^N**2/2 + B^{N-1/2} B^{N+1/2}/(2 mu0)) dx."""
        grid = self.grid
        b_next = grid.b - self._b_coefficient * (grid.e[1:] - grid.e[:-1])
        electric = 0.5 * epsilon_0 * np.sum(grid.eps_inf * grid.e ** 2)
        magnetic = np.sum(grid.b * b_next) / (2.0 * mu_0)
        return (electric + magnetic) * grid.dx


def build_simulation(config, method=None, medium=None, boundary='mur', include_dispersion=True,
                     coefficient_hook=None, source=None):
    """Vacuum on x < L/2, ``medium`` (default: the configured one) on x >= L/2, all fields zero."""
    errors = {}
    if not config.system_length > 0:
        errors['system_length'] = ['must be positive']
    if config.n_grid < 16:
        errors['n_grid'] = ['must be at least 16']
    if not 0 < config.cfl_factor <= 1:
        errors['cfl_factor'] = ['CFL condition requires 0 < cfl_factor <= 1']
    if errors:
        raise InvalidConfigException('Invalid configuration', errors)

    medium = config.medium() if medium is None else medium
    n_grid = config.n_grid
    medium_index = np.zeros(n_grid, dtype=int)
    medium_index[interface_node(n_grid):] = 1
    grid = Grid1D(n_grid, config.dx, config.dt, [VACUUM, medium], medium_index)
    sim = Simulation(grid, source or config.source(), method=method or config.method, boundary=boundary,
                     include_dispersion=include_dispersion, coefficient_hook=coefficient_hook)
    logger.info('built %s simulation: N=%d dx=%.6e m dt=%.6e s, %d pole(s) on x >= L/2',
                sim.method, n_grid, grid.dx, grid.dt, len(medium.poles))
    return sim


def probe_nodes(config):
    return [int(round(fraction * (config.n_grid - 1))) for fraction in config.probes]


def run(sim, n_steps, probes):
    nodes = np.asarray(probes, dtype=int)
    if len(nodes) and (nodes.min() < 0 or nodes.max() >= sim.grid.n_grid):
        raise InvalidConfigException('Invalid probes', {'probes': ['outside the grid']})
    samples = np.empty((n_steps, len(nodes)))
    started = time.perf_counter()
    for n in range(n_steps):
        samples[n] = sim.grid.e[nodes]
        sim.step()
    logger.info('%s run: %d steps in %.2f s', sim.method, n_steps, time.perf_counter() - started)
    if not np.all(np.isfinite(sim.grid.e)):
        logger.warning('non-finite field values after %d steps', sim.step_count)
    return [ProbeSeries(int(node), samples[:, k].copy(), sim.grid.dt) for k, node in enumerate(nodes)]
