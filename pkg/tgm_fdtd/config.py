"""Experiment configuration: a line-oriented ``key = value`` document with ``[section]`` headers.

Sections are ``grid``, ``source``, ``medium``, ``medium.pole.<k>``, ``run`` and the
optional ``green``. Values are SI; ``#`` starts a comment. Conversion errors carry the
line number, range checks are done by a cerberus schema.
"""
import configparser
import re
from collections import namedtuple
from pathlib import Path

from cerberus import Validator
from scipy.constants import c

from tgm_fdtd import ConfigParseException, DegeneratePoleException, InvalidConfigException
from tgm_fdtd.dispersion import LorentzPole, Medium
from tgm_fdtd.fdtd import GaussianSource

DATA_DIR = Path(__file__).resolve().parent / 'data'

POLE_SECTION = re.compile(r'^medium\.pole\.(\d+)$')


def _positive(field, value, error):
    if value is not None and not value > 0:
        error(field, 'must be positive')


def _cfl(field, value, error):
    if not 0 < value <= 1:
        error(field, 'CFL condition requires 0 < cfl_factor <= 1')


def _open_unit_interval(field, value, error):
    if not 0 < value < 1:
        error(field, 'probe fraction must lie in (0, 1)')


def _threshold(field, value, error):
    if not 0 < value <= 1:
        error(field, 'band threshold must lie in (0, 1]')


GRID_SCHEMA = {
    'system_length': {'type': 'float', 'required': True, 'check_with': _positive},
    'n_grid': {'type': 'integer', 'required': True, 'min': 16},
    'cfl_factor': {'type': 'float', 'default': 0.9, 'check_with': _cfl},
}
SOURCE_SCHEMA = {
    't0': {'type': 'float', 'required': True, 'min': 0.0},
    'delta_t': {'type': 'float', 'required': True, 'check_with': _positive},
    'omega0': {'type': 'float', 'required': True, 'min': 0.0},
}
MEDIUM_SCHEMA = {
    'eps_inf': {'type': 'float', 'default': 1.0, 'check_with': _positive},
    'sigma': {'type': 'float', 'default': 0.0, 'min': 0.0},
}
POLE_SCHEMA = {
    'delta_eps': {'type': 'float', 'required': True},
    'omega_p': {'type': 'float', 'required': True, 'check_with': _positive},
    'delta_p': {'type': 'float', 'required': True, 'min': 0.0},
}
RUN_SCHEMA = {
    'n_steps': {'type': 'integer', 'default': 2 ** 15, 'min': 0},
    'probes': {'type': 'list', 'default': [0.25, 0.499, 0.75], 'minlength': 1,
               'schema': {'type': 'float', 'check_with': _open_unit_interval}},
    'method': {'type': 'string', 'default': 'tgm', 'allowed': ['tgm', 'adem']},
    'band_threshold': {'type': 'float', 'default': 0.001, 'check_with': _threshold},
    'output': {'type': 'string', 'nullable': True, 'default': None},
}
GREEN_SCHEMA = {
    't_start': {'type': 'float', 'nullable': True, 'default': None, 'min': 0.0},
    't_end': {'type': 'float', 'nullable': True, 'default': None, 'check_with': _positive},
    'samples': {'type': 'integer', 'default': 50, 'min': 2},
    'fine_divisions': {'type': 'integer', 'default': 1000, 'min': 100},
}
CONFIG_SCHEMA = {
    'grid': {'type': 'dict', 'required': True, 'schema': GRID_SCHEMA},
    'source': {'type': 'dict', 'required': True, 'schema': SOURCE_SCHEMA},
    'medium': {'type': 'dict', 'schema': MEDIUM_SCHEMA},
    'poles': {'type': 'list', 'schema': {'type': 'dict', 'schema': POLE_SCHEMA}},
    'run': {'type': 'dict', 'schema': RUN_SCHEMA},
    'green': {'type': 'dict', 'schema': GREEN_SCHEMA},
}

_CONVERTERS = {
    'float': float,
    'integer': int,
    'string': str,
    'list': lambda text: [float(item) for item in text.split(',') if item.strip()],
}

_SimConfig = namedtuple('SimConfig', [
    'system_length', 'n_grid', 'cfl_factor',
    't0', 'delta_t', 'omega0',
    'eps_inf', 'sigma', 'poles',
    'n_steps', 'probes', 'method', 'band_threshold', 'output',
    'green',
])


class SimConfig(_SimConfig):
    __slots__ = ()

    @property
    def dx(self):
        return self.system_length / (self.n_grid - 1)

    @property
    def dt(self):
        return self.cfl_factor * self.dx / c

    def medium(self):
        return Medium(self.eps_inf, self.sigma, [LorentzPole(*pole) for pole in self.poles])

    def source(self):
        return GaussianSource(self.t0, self.delta_t, self.omega0)


def _line_of(text, section, key):
    current = None
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith('['):
            current = stripped.strip('[]').strip()
        elif current == section and '=' in stripped and stripped.split('=', 1)[0].strip() == key:
            return number
    return 0


def _section_line(text, section):
    for number, line in enumerate(text.splitlines(), start=1):
        if line.strip().startswith('[') and line.strip().strip('[]').strip() == section:
            return number
    return 0


def _read(text):
    parser = configparser.ConfigParser(
        comment_prefixes=('#',), inline_comment_prefixes=('#',), interpolation=None,
        empty_lines_in_values=False)
    parser.optionxform = str
    try:
        parser.read_string(text, source='<config>')
    except configparser.MissingSectionHeaderError as e:
        raise ConfigParseException('line {}: expected a [section] header, got {!r}'.format(e.lineno, e.line))
    except (configparser.DuplicateSectionError, configparser.DuplicateOptionError) as e:
        raise ConfigParseException('line {}: {}'.format(e.lineno, e.message))
    except configparser.ParsingError as e:
        lineno, line = e.errors[0]
        raise ConfigParseException('line {}: cannot parse {}'.format(lineno, line))
    return parser


def _convert(text, section, items, schema):
    converted = {}
    for key, raw in items.items():
        rules = schema.get(key)
        if rules is None:
            converted[key] = raw
            continue
        try:
            converted[key] = _CONVERTERS[rules['type']](raw)
        except ValueError:
            raise ConfigParseException('line {}: [{}] {} expects a {} value, got {!r}'.format(
                _line_of(text, section, key), section, key, rules['type'], raw))
    return converted


def parse_config(text):
    parser = _read(text)
    document = {'medium': {}, 'poles': [], 'run': {}, 'green': {}}
    poles = {}
    schemas = {'grid': GRID_SCHEMA, 'source': SOURCE_SCHEMA, 'medium': MEDIUM_SCHEMA,
               'run': RUN_SCHEMA, 'green': GREEN_SCHEMA}
    for section in parser.sections():
        items = dict(parser.items(section))
        pole_match = POLE_SECTION.match(section)
        if pole_match:
            k = int(pole_match.group(1))
            if k in poles:
                raise ConfigParseException('line {}: [{}] repeats pole index {}'.format(
                    _section_line(text, section), section, k))
            poles[k] = _convert(text, section, items, POLE_SCHEMA)
        elif section in schemas:
            document[section] = _convert(text, section, items, schemas[section])
        else:
            document[section] = items
    document['poles'] = [poles[k] for k in sorted(poles)]

    v = Validator(CONFIG_SCHEMA)
    if not v.validate(document):
        raise InvalidConfigException('Invalid configuration', v.errors)
    doc = v.document

    pole_values = []
    for k, pole in zip(sorted(poles), doc['poles']):
        try:
            pole_values.append(tuple(LorentzPole(pole['delta_eps'], pole['omega_p'], pole['delta_p'])))
        except DegeneratePoleException as e:
            raise InvalidConfigException('Invalid configuration', {'medium.pole.{}'.format(k): [str(e)]})

    grid, source, medium, run = doc['grid'], doc['source'], doc['medium'], doc['run']
    return SimConfig(
        system_length=grid['system_length'],
        n_grid=grid['n_grid'],
        cfl_factor=grid['cfl_factor'],
        t0=source['t0'],
        delta_t=source['delta_t'],
        omega0=source['omega0'],
        eps_inf=medium['eps_inf'],
        sigma=medium['sigma'],
        poles=tuple(pole_values),
        n_steps=run['n_steps'],
        probes=tuple(run['probes']),
        method=run['method'],
        band_threshold=run['band_threshold'],
        output=run['output'],
        green=dict(doc['green']),
    )


def load_config(path):
    with open(path, 'r') as fh:
        return parse_config(fh.read())


def bundled_config_path(name):
    return DATA_DIR / name
