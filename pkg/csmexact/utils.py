"""
Small helpers shared by the csmexact modules.
"""
import logging
import os
import re
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
THREADS_ENV = 'CSMEXACT_THREADS'

_rational_re = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$')


def parse_rational(value):
    """
    Convert an exact-rational input into a ``Fraction``.

    Integers, ``Fraction`` instances and strings of the form ``'p'`` or
    ``'p/q'`` are accepted. Floats are refused, even when they look exact, so
    that couplings never silently lose precision.

    Parameters
    ----------
    value: ``int``, ``Fraction`` or ``str``

    Returns
    -------
    rational: ``Fraction``
    """
    if isinstance(value, bool):
        raise TypeError('Booleans are not rationals')
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _rational_re.match(value)
        if match is None:
            raise ValueError(f'{value!r} is not an integer or a "p/q" '
                             'fraction')
        num, den = match.groups()
        if den is not None and int(den) == 0:
            raise ValueError(f'{value!r} has a zero denominator')
        return Fraction(int(num), int(den or 1))
    raise TypeError('Rationals must be given as int, Fraction or "p/q" '
                    f'strings, not {type(value).__name__}')


def format_rational(value):
    """
    Exact string form of a rational: ``'p/q'``, or ``'p'`` for integers.
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def env_threads():
    """
    Worker count from ``$CSMEXACT_THREADS``, or ``None`` if unset or invalid.
    """
    env = os.environ.get(THREADS_ENV)
    if not env:
        return None
    try:
        threads = int(env)
    except ValueError:
        logger.warning('Ignoring non-integer %s=%r', THREADS_ENV, env)
        return None
    if threads < 1:
        logger.warning('Ignoring non-positive %s=%r', THREADS_ENV, env)
        return None
    return threads


def default_threads():
    """
    Default worker count: ``$CSMEXACT_THREADS`` if set, else the CPU count.
    """
    return env_threads() or os.cpu_count() or 1


def ordered_map(func, items, threads=1):
    """
    Map ``func`` over ``items`` and return the results in input order.

    With ``threads > 1`` the calls are spread over a thread pool; the output
    order never depends on the scheduling.
    """
    items = list(items)
    if threads is None or threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


class CheckReport:
    """
    Outcome of one verification check.

    Attributes
    ----------
    name: ``str``
        Identifier of the check.

    checked: ``int``
        Number of individual assertions evaluated.

    violations: ``list of dict``
        One JSON-ready entry per failed assertion, in the order found.

    details: ``dict``
        Extra JSON-ready information attached by the check.
    """
    def __init__(self, name, checked=0, violations=None, details=None):
        self.name = name
        self.checked = checked
        self.violations = list(violations or [])
        self.details = dict(details or {})

    @property
    def passed(self):
        return not self.violations

    def record(self, ok, **violation):
        """
        Count one assertion, storing ``violation`` if ``ok`` is false.
        """
        self.checked += 1
        if not ok:
            logger.debug('%s violation: %s', self.name, violation)
            self.violations.append(violation)
        return ok

    def merge(self, other):
        self.checked += other.checked
        self.violations.extend(other.violations)

    def to_dict(self):
        return {'name': self.name,
                'passed': self.passed,
                'checked': self.checked,
                'violations': self.violations,
                **self.details}

    def __repr__(self):
        return (f'CheckReport({self.name}, checked={self.checked}, '
                f'violations={len(self.violations)})')
