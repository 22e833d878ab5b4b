import logging
import sys
from collections import OrderedDict

import numpy as np
from scipy.constants import c

from tgm_fdtd import InvalidConfigException, UnknownCommandException
from tgm_fdtd import analysis, fdtd, oracle, tgm
from tgm_fdtd.checks import FAILED, SKIPPED, CheckRunner
from tgm_fdtd.dispersion import VACUUM, reflection_coefficient

logger = logging.getLogger(__name__)

CSV_FORMAT = '%.15e'

_registered_commands = None


def get_registered_commands():
    global _registered_commands
    if _registered_commands is None:
        commands_dict = OrderedDict()
        for command_cls in DEFAULT_COMMAND_CLASSES:
            assert issubclass(command_cls, CommandHandler), 'Command should be subclass of CommandHandler'
            assert command_cls.name, 'Command class should have specified a "name"'
            commands_dict[command_cls.name] = command_cls
        _registered_commands = commands_dict
    return _registered_commands


def write_csv(out, header, columns):
    """Write equal-length columns as a ``,``-separated table with a bare header line."""
    table = np.column_stack(columns) if len(columns[0]) else np.empty((0, len(columns)))
    np.savetxt(out, table, fmt=CSV_FORMAT, delimiter=',', newline='\n', header=header, comments='')


class CommandHandler(object):
    name = None  # every child class should define name property

    def __init__(self, config, coefficient_hook=None):
        assert config is not None, 'config cannot be None'
        self.config = config
        self.coefficient_hook = coefficient_hook

    def handle(self, out, summary=None):
        """Write the command's document to ``out`` and return the process exit status.

        ``summary`` receives human-readable remarks; it defaults to standard output.
        """
        raise NotImplementedError

    @staticmethod
    def get_class_by_name(name):
        command_cls = get_registered_commands().get(name)
        if not command_cls:
            raise UnknownCommandException('No command: "{}"'.format(name))
        return command_cls


class RunCommand(CommandHandler):
    """Single simulation with the configured method; raw probe series."""
    name = 'run'

    def handle(self, out, summary=None):
        config = self.config
        sim = fdtd.build_simulation(config, coefficient_hook=self.coefficient_hook)
        nodes = fdtd.probe_nodes(config)
        logger.debug('probes at nodes %s', nodes)
        series = fdtd.run(sim, config.n_steps, nodes)
        header = ','.join(['time_s'] + ['probe{}'.format(k) for k in range(1, len(series) + 1)])
        times = sim.grid.dt * np.arange(config.n_steps)
        write_csv(out, header, [times] + [s.samples for s in series])
        return 0


def _earliest_echo(config, node):
    """Time at which the wave reflected by the right boundary can first reach ``node``.

    The fastest front in the medium travels at c / sqrt(eps_inf).
    """
    x_probe = node * config.dx
    x_interface = fdtd.interface_node(config.n_grid) * config.dx
    vacuum_path = x_interface + (x_interface - x_probe)
    medium_path = 2.0 * (config.system_length - x_interface)
    return (vacuum_path + medium_path * np.sqrt(config.eps_inf)) / c


class ReflectionCommand(CommandHandler):
    """Vacuum reference, TGM and ADEM runs recorded at the first probe; |R| against the analytic value."""
    name = 'reflection'

    def _record(self, node, method, medium=None):
        sim = fdtd.build_simulation(self.config, method=method, medium=medium,
                                    coefficient_hook=self.coefficient_hook if method == 'tgm' else None)
        return fdtd.run(sim, self.config.n_steps, [node])[0]

    def handle(self, out, summary=None):
        config = self.config
        summary = summary or sys.stdout
        node = fdtd.probe_nodes(config)[0]
        if node >= fdtd.interface_node(config.n_grid):
            raise InvalidConfigException('Invalid configuration', {
                'probes': ['the first probe must lie in the vacuum region x < L/2']})
        logger.debug('reflection probe at node %d', node)
        record = config.n_steps * config.dt
        echo = _earliest_echo(config, node)
        if config.medium().is_dispersive and echo < record:
            logger.warning('echo from the far boundary reaches the probe at %.3e s, inside the %.3e s record; '
                           '|R| includes it', echo, record)

        incident = self._record(node, 'tgm', medium=VACUUM)
        measured = OrderedDict()
        for method in ('tgm', 'adem'):
            freqs, measured[method] = analysis.reflection_magnitude(
                incident, self._record(node, method), config.band_threshold)
        analytic = np.abs(reflection_coefficient(config.medium(), 2.0 * np.pi * freqs))

        write_csv(out, 'freq_hz,r_analytic,r_tgm,r_adem',
                  [freqs, analytic, measured['tgm'], measured['adem']])
        for method, magnitude in measured.items():
            max_error, rms_error = analysis.error_summary(magnitude, analytic)
            print('{}: max |R| error {:.6e}, rms {:.6e} over {} bins'.format(
                method, max_error, rms_error, len(freqs)), file=summary)
        return 0


class GreenCommand(CommandHandler):
    """Closed-form Green function of the first pole against RK4 of the unit rectangle."""
    name = 'green'

    def handle(self, out, summary=None):
        config = self.config
        summary = summary or sys.stdout
        poles = config.medium().poles
        if not poles:
            raise InvalidConfigException('Invalid configuration', {'poles': ['green needs at least one pole']})
        pole = poles[0]
        dt = config.dt
        green = config.green
        t_start = 0.5 * dt if green.get('t_start') is None else green['t_start']
        t_end = 50.0 * dt if green.get('t_end') is None else green['t_end']
        if not t_end > t_start:
            raise InvalidConfigException('Invalid configuration', {'green': ['t_end must exceed t_start']})
        requested = np.linspace(t_start, t_end, green['samples'])
        # raises before the integration when a time falls inside the impulse
        tgm.green_function(pole, requested, 0.0, dt)

        fine_step = dt / green['fine_divisions']
        trace = oracle.green_rk4(pole, 0.0, dt, t_end, fine_step)
        h = trace.times[1] - trace.times[0]
        index = np.clip(np.rint((requested - trace.times[0]) / h).astype(int), green['fine_divisions'],
                        len(trace.times) - 1)
        times = trace.times[index]
        closed = tgm.green_function(pole, times, 0.0, dt)
        reference = trace.values[index, 0]
        difference = np.abs(closed - reference)

        write_csv(out, 't_s,g_closed_form,g_rk4,abs_diff', [times, closed, reference, difference])
        print('green: max |diff| / max |g| = {:.6e}'.format(
            float(difference.max() / np.abs(reference).max())), file=summary)
        return 0


class VerifyCommand(CommandHandler):
    name = 'verify'

    def handle(self, out, summary=None):
        results = CheckRunner(self.config, coefficient_hook=self.coefficient_hook).run()
        failed = 0
        for result in results:
            where = 'pole {}'.format(result.pole_index) if result.pole_index else 'medium'
            if result.status == SKIPPED:
                status = 'skipped ({})'.format(result.detail)
            else:
                status = '{} ({})'.format(result.status, result.detail)
            out.write('{:<20} {:<8} {}\n'.format(result.name, where, status))
            failed += result.status == FAILED
        out.write('{} check(s) failed\n'.format(failed) if failed else 'all checks passed\n')
        return 2 if failed else 0


DEFAULT_COMMAND_CLASSES = [
    RunCommand,
    ReflectionCommand,
    GreenCommand,
    VerifyCommand,
]
