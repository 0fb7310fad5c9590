"""
Run configuration for the command-line tools.

Values are layered, later layers winning: built-in defaults, an optional YAML
file of ``flag: value`` pairs, the ``CSMEXACT_THREADS`` environment variable
(thread count only) and finally the command-line flags.
"""
import logging
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path

import yaml

from .operators import ModelParams
from .utils import default_threads, env_threads, parse_rational
from .verify import DEFAULT_SEED, DEFAULT_STEP

logger = logging.getLogger(__name__)

COMMANDS = ('solve', 'spectrum', 'verify', 'cs-map', 'fock-check')
FORMATS = ('json', 'csv', 'pretty')
RATIONAL_FIELDS = ('lam', 'lam1', 'alpha', 'perturb_energy', 'tamper_kplus')

# file keys that differ from the field names
_ALIASES = {'lambda': 'lam',
            'lambda1': 'lam1',
            'format': 'fmt'}


@dataclass(frozen=True)
class RunConfig:
    """
    Everything one ``csmexact`` invocation needs.

    Attributes
    ----------
    command: ``str``
        One of ``solve``, ``spectrum``, ``verify``, ``cs-map`` or
        ``fock-check``.

    n_particles, lam, lam1, alpha:
        Model parameters, the couplings as exact ``Fraction``.

    level, n_max: ``int``
        Level for ``solve`` and ``cs-map`` (``None`` follows ``partition``,
        else 1); highest level for ``spectrum``,
        ``verify`` and ``fock-check``.

    fmt: ``str``
        Output format: ``json``, ``csv`` or ``pretty``.

    seed, h, nodes:
        Sample-point seed, finite-difference step and quadrature nodes per
        dimension (``None`` picks the smallest valid rule).

    threads: ``int``
        Worker count.
    """
    command: str
    n_particles: int = 2
    lam: Fraction = Fraction(1)
    lam1: Fraction = Fraction(1)
    alpha: Fraction = Fraction(1)
    level: int = None
    n_max: int = 3
    fmt: str = 'json'
    seed: int = DEFAULT_SEED
    h: float = DEFAULT_STEP
    nodes: int = None
    threads: int = field(default_factory=default_threads)
    output: str = None
    log_level: str = 'WARNING'
    perturb_energy: Fraction = Fraction(0)
    skip_numeric: bool = False
    max_particles: int = 3
    partition: tuple = None
    cutoff: int = 12
    tamper_kplus: Fraction = Fraction(1)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f'Unknown command {self.command!r}')
        if self.fmt not in FORMATS:
            raise ValueError(f'Unknown output format {self.fmt!r}')
        for name in RATIONAL_FIELDS:
            object.__setattr__(self, name,
                               parse_rational(getattr(self, name)))
        for name in ('n_particles', 'level', 'n_max', 'seed', 'max_particles',
                     'cutoff', 'threads', 'nodes'):
            value = getattr(self, name)
            if value is None and name in ('level', 'nodes'):
                continue
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f'{name} must be an integer, got {value!r}')
        if (self.level or 0) < 0 or self.n_max < 0:
            raise ValueError('Levels must be nonnegative')
        if self.threads < 1:
            raise ValueError(f'threads must be positive, got {self.threads}')
        if isinstance(self.h, bool) or not isinstance(self.h, (int, float)):
            raise ValueError(f'h must be a number, got {self.h!r}')
        object.__setattr__(self, 'h', float(self.h))
        if self.partition is not None:
            object.__setattr__(self, 'partition',
                               tuple(int(p) for p in self.partition))

    def model_params(self):
        return ModelParams(self.n_particles, self.lam, self.lam1, self.alpha)


_FIELD_NAMES = {f.name for f in fields(RunConfig)} - {'command'}


def _field_name(key):
    key = str(key).replace('-', '_')
    return _ALIASES.get(key, key)


def normalize_keys(values, source):
    """
    Map flag-style keys (dashes or underscores) onto ``RunConfig`` fields.
    """
    normalized = {}
    for key, value in values.items():
        name = _field_name(key)
        if name not in _FIELD_NAMES:
            raise ValueError(f'Unknown setting {key!r} in {source}')
        if name in RATIONAL_FIELDS and isinstance(value, float):
            raise ValueError(f'{key} = {value!r} in {source}: rationals must '
                             'be integers or "p/q" strings, not floats')
        normalized[name] = value
    return normalized


def load_config_file(path):
    """
    Read a YAML mapping of flag names to values.

    Parameters
    ----------
    path: ``str`` or ``Path``

    Returns
    -------
    settings: ``dict``
        Keyed by ``RunConfig`` field name.
    """
    path = Path(path)
    with path.open() as f:
        data = yaml.safe_load(f)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f'{path} must hold a mapping of settings')
    logger.debug('Loaded %d settings from %s', len(data), path)
    return normalize_keys(data, path)


def build_config(command, flags=None, config_file=None):
    """
    Layer defaults, the config file and the explicit flags into a
    ``RunConfig``.

    Parameters
    ----------
    command: ``str``

    flags: ``dict``, optional
        Only the flags actually given on the command line.

    config_file: ``str`` or ``Path``, optional
    """
    settings = {}
    if config_file is not None:
        settings.update(load_config_file(config_file))
    threads = env_threads()
    if threads is not None:
        settings['threads'] = threads
    settings.update(normalize_keys(flags or {}, 'command-line flags'))
    cfg = RunConfig(command, **settings)
    logger.debug('Run configuration: %s', cfg)
    return cfg
