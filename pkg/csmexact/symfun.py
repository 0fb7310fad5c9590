"""
Exact symmetric-polynomial algebra in the monomial symmetric basis.

A ``SymPoly`` is a finite map from integer partitions to exact rationals,
read as a combination of monomial symmetric functions m_mu in a fixed number
of variables. The variables are either the squared particle coordinates
(``VariableTag.Y``) or the plain coordinates (``VariableTag.X``).
"""
import logging
import math
from collections import defaultdict
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType

import numpy as np
from sympy.utilities.iterables import multiset_permutations, partitions

from .errors import ContractError, DomainError
from .utils import format_rational, parse_rational

logger = logging.getLogger(__name__)


class VariableTag(Enum):
    """Variable convention of a ``SymPoly``."""
    Y = 'Y'  # squared coordinates, y_i = x_i**2
    X = 'X'  # plain coordinates


class Partition(tuple):
    """
    Weakly decreasing tuple of positive integers.

    The empty partition is valid and indexes the constant monomial.

    Parameters
    ----------
    parts: iterable of ``int``
        The parts, already in weakly decreasing order.
    """
    def __new__(cls, parts=()):
        parts = tuple(int(part) for part in parts)
        if any(part <= 0 for part in parts):
            raise DomainError(f'Partition parts must be positive, got {parts}')
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError('Partition parts must be weakly decreasing, '
                              f'got {parts}')
        return super().__new__(cls, parts)

    @classmethod
    def from_exponents(cls, exponents):
        """
        Partition whose parts are the nonzero entries of an exponent vector.
        """
        return cls(sorted((e for e in exponents if e), reverse=True))

    @property
    def weight(self):
        return sum(self)

    @property
    def length(self):
        return len(self)

    def padded(self, n_vars):
        """
        Exponent vector of length ``n_vars``: the parts followed by zeros.
        """
        if len(self) > n_vars:
            raise ContractError(f'{self!r} has more than {n_vars} parts')
        return tuple(self) + (0,) * (n_vars - len(self))

    def multiplicities(self):
        """
        Mapping from each part to how often it occurs.
        """
        counts = {}
        for part in self:
            counts[part] = counts.get(part, 0) + 1
        return counts

    def orbit(self, n_vars):
        """
        All distinct exponent vectors obtained by permuting the padded
        partition, in lexicographic order.
        """
        return _orbit(self, n_vars)

    def orbit_size(self, n_vars):
        """
        Number of distinct monomials in the monomial symmetric function.
        """
        return _orbit_size(self, n_vars)

    def sort_key(self):
        return (self.weight, tuple(self))

    def __repr__(self):
        return 'Partition({})'.format(', '.join(str(part) for part in self))


@lru_cache(maxsize=None)
def _orbit(partition, n_vars):
    return tuple(tuple(vector) for vector in
                 multiset_permutations(list(partition.padded(n_vars))))


@lru_cache(maxsize=None)
def _orbit_size(partition, n_vars):
    counts = partition.multiplicities()
    counts[0] = n_vars - len(partition)
    size = math.factorial(n_vars)
    for count in counts.values():
        size //= math.factorial(count)
    return size


def canonical_order(parts):
    """
    Sort partitions reverse-lexicographically, heaviest weight first.
    """
    return sorted(parts, key=Partition.sort_key, reverse=True)


def partitions_of(n, max_part, max_length):
    """
    Every partition of ``n`` with parts at most ``max_part`` and at most
    ``max_length`` parts, in reverse-lexicographic order.

    Parameters
    ----------
    n: ``int``
        Nonnegative integer to partition.

    max_part: ``int``
        Largest part allowed.

    max_length: ``int``
        Largest number of parts allowed.

    Returns
    -------
    parts: ``list of Partition``
        ``[Partition()]`` when ``n`` is zero.
    """
    if n < 0:
        raise DomainError(f'Cannot partition the negative integer {n}')
    if max_part < 1 or max_length < 1:
        raise DomainError('max_part and max_length must be positive, got '
                          f'{max_part} and {max_length}')
    if n == 0:
        return [Partition()]
    found = []
    for counts in partitions(n, m=max_length, k=max_part):
        # sympy yields a lone {} when the bounds admit no partition at all
        if sum(part * mult for part, mult in counts.items()) != n:
            continue
        parts = []
        for part in sorted(counts, reverse=True):
            parts.extend([part] * counts[part])
        found.append(Partition(parts))
    return canonical_order(found)


def _coerce_coeff(value):
    if isinstance(value, float):
        raise ContractError('SymPoly coefficients must be exact, got the '
                            f'float {value}')
    return parse_rational(value)


class SymPoly:
    """
    Symmetric polynomial with exact rational coefficients in the monomial
    symmetric basis.

    Instances are immutable. Zero coefficients are never stored, so two
    polynomials are equal exactly when their term maps are equal.

    Parameters
    ----------
    n_vars: ``int``
        Number of variables N.

    tag: ``VariableTag`` or ``str``
        ``'Y'`` for squared coordinates, ``'X'`` for plain coordinates.

    terms: ``dict``, optional
        Mapping from partitions (or part tuples) to coefficients. Integers,
        ``Fraction`` and ``'p/q'`` strings are accepted.
    """
    __slots__ = ('_n_vars', '_tag', '_terms', '_hash')

    def __init__(self, n_vars, tag=VariableTag.Y, terms=None):
        if not isinstance(n_vars, int) or n_vars < 1:
            raise ContractError(f'n_vars must be a positive int, got {n_vars}')
        self._n_vars = n_vars
        self._tag = VariableTag(tag)
        collected = defaultdict(Fraction)
        for key, coeff in (terms or {}).items():
            part = key if isinstance(key, Partition) else Partition(key)
            if part.length > n_vars:
                raise ContractError(f'{part!r} does not index a monomial in '
                                    f'{n_vars} variables')
            collected[part] += _coerce_coeff(coeff)
        ordered = canonical_order(part for part, coeff in collected.items()
                                  if coeff)
        self._terms = MappingProxyType({part: collected[part]
                                        for part in ordered})
        self._hash = None

    @classmethod
    def zero(cls, n_vars, tag=VariableTag.Y):
        return cls(n_vars, tag)

    @classmethod
    def constant(cls, value, n_vars, tag=VariableTag.Y):
        return cls(n_vars, tag, {Partition(): value})

    @classmethod
    def monomial(cls, parts, n_vars, tag=VariableTag.Y, coeff=1):
        """
        The monomial symmetric function m_parts, times ``coeff``.
        """
        return cls(n_vars, tag, {Partition(parts): coeff})

    @property
    def n_vars(self):
        return self._n_vars

    @property
    def tag(self):
        return self._tag

    @property
    def terms(self):
        """
        Read-only mapping from ``Partition`` to ``Fraction``, canonical order.
        """
        return self._terms

    def items(self):
        return self._terms.items()

    def coefficient(self, parts):
        return self._terms.get(Partition(parts), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @property
    def is_homogeneous(self):
        """
        ``True`` if every term has the same weight. The zero polynomial is
        homogeneous of every degree.
        """
        return len({part.weight for part in self._terms}) <= 1

    @property
    def degree(self):
        """
        Common weight of the terms, in the polynomial's own variables.

        ``None`` for the zero polynomial and for inhomogeneous polynomials;
        check ``is_homogeneous`` to tell the two apart.
        """
        weights = {part.weight for part in self._terms}
        if len(weights) != 1:
            return None
        return weights.pop()

    @property
    def max_degree(self):
        """
        Largest weight among the terms, zero for the zero polynomial.
        """
        return max((part.weight for part in self._terms), default=0)

    def x_degree(self, weight):
        """
        Degree in the plain coordinates of a term of the given weight.
        """
        return 2 * weight if self._tag is VariableTag.Y else weight

    def components(self):
        """
        Split into homogeneous components.

        Returns
        -------
        components: ``dict``
            Mapping from weight to ``SymPoly``, heaviest weight first.
        """
        grouped = defaultdict(dict)
        for part, coeff in self._terms.items():
            grouped[part.weight][part] = coeff
        return {weight: SymPoly(self._n_vars, self._tag, grouped[weight])
                for weight in sorted(grouped, reverse=True)}

    def top_component(self):
        """
        Homogeneous component of largest weight.
        """
        components = self.components()
        if not components:
            return self
        return next(iter(components.values()))

    def is_even(self):
        """
        ``True`` if every monomial has only even exponents.
        """
        if self._tag is VariableTag.Y:
            return True
        return all(part % 2 == 0 for key in self._terms for part in key)

    def to_x(self):
        """
        Rewrite a ``Y`` polynomial in the plain coordinates.

        Uses m_mu(x_1**2, ..., x_N**2) = m_{2 mu}(x_1, ..., x_N).
        """
        if self._tag is VariableTag.X:
            return self
        return SymPoly(self._n_vars, VariableTag.X,
                       {Partition(2 * part for part in key): coeff
                        for key, coeff in self._terms.items()})

    def _check_compatible(self, other):
        if not isinstance(other, SymPoly):
            raise ContractError(f'Expected a SymPoly, got {type(other)}')
        if other._n_vars != self._n_vars or other._tag is not self._tag:
            raise ContractError(
                'SymPoly mismatch: ({}, {}) vs ({}, {})'.format(
                    self._n_vars, self._tag.value,
                    other._n_vars, other._tag.value))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, SymPoly):
            return multiply(self, other)
        return scale(other, self)

    def __rmul__(self, other):
        return scale(other, self)

    def scale(self, factor):
        return scale(factor, self)

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        return (self._n_vars == other._n_vars and self._tag is other._tag
                and dict(self._terms) == dict(other._terms))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n_vars, self._tag,
                               tuple(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return '0'
        pieces = []
        for part, coeff in self._terms.items():
            sign = '-' if coeff < 0 else '+'
            mag = abs(coeff)
            if part:
                name = 'm[{}]'.format(','.join(str(p) for p in part))
                text = name if mag == 1 else f'{format_rational(mag)}*{name}'
            else:
                text = format_rational(mag)
            pieces.append((sign, text))
        first_sign, first = pieces[0]
        out = ('-' if first_sign == '-' else '') + first
        for sign, text in pieces[1:]:
            out += f' {sign} {text}'
        return out

    def __repr__(self):
        return f'SymPoly(N={self._n_vars}, {self._tag.value}: {self})'

    def to_dict(self):
        """
        JSON-ready form, terms in reverse-lexicographic partition order.
        """
        return {'n_vars': self._n_vars,
                'tag': self._tag.value,
                'terms': [{'partition': list(part),
                           'coeff': format_rational(coeff)}
                          for part, coeff in self._terms.items()]}

    @classmethod
    def from_dict(cls, data):
        return cls(data['n_vars'], data['tag'],
                   {tuple(term['partition']): term['coeff']
                    for term in data['terms']})


def add(p, q):
    """
    Coefficient-wise sum of two polynomials sharing ``n_vars`` and tag.
    """
    p._check_compatible(q)
    terms = dict(p.terms)
    for part, coeff in q.items():
        terms[part] = terms.get(part, 0) + coeff
    return SymPoly(p.n_vars, p.tag, terms)


def scale(c, p):
    """
    Multiply every coefficient of ``p`` by the rational ``c``.
    """
    c = _coerce_coeff(c)
    if not c:
        return SymPoly.zero(p.n_vars, p.tag)
    return SymPoly(p.n_vars, p.tag,
                   {part: c * coeff for part, coeff in p.items()})


def resymmetrize(image, source, n_vars, tag):
    """
    Rebuild ``L m_source`` from the image of one representative monomial.

    ``L`` must commute with permutations of the variables. If ``image`` holds
    the monomials of ``L x**a``, with ``a`` the padded ``source`` partition,
    then the coefficient of m_nu in ``L m_source`` is the summed coefficient
    of all image monomials sorting to nu, times
    ``|orbit(source)| / |orbit(nu)|``.

    Parameters
    ----------
    image: ``dict``
        Mapping from exponent vectors to coefficients.

    source: ``Partition``
        Partition of the representative monomial.

    n_vars: ``int``

    tag: ``VariableTag``

    Returns
    -------
    poly: ``SymPoly``
    """
    classes = defaultdict(Fraction)
    for exponents, coeff in image.items():
        if coeff:
            classes[Partition.from_exponents(exponents)] += coeff
    size = source.orbit_size(n_vars)
    return SymPoly(n_vars, tag,
                   {nu: coeff * Fraction(size, nu.orbit_size(n_vars))
                    for nu, coeff in classes.items()})


@lru_cache(maxsize=4096)
def _monomial_product(lam, mu, n_vars, tag):
    base = lam.padded(n_vars)
    image = defaultdict(int)
    for vector in mu.orbit(n_vars):
        image[tuple(a + b for a, b in zip(base, vector))] += 1
    # m_mu is symmetric, so multiplying by it commutes with permutations
    return resymmetrize(image, lam, n_vars, tag)


def multiply(p, q):
    """
    Product of two polynomials, re-expanded in the monomial basis.
    """
    p._check_compatible(q)
    result = SymPoly.zero(p.n_vars, p.tag)
    for lam, a in p.items():
        for mu, b in q.items():
            # the second factor is the one expanded over its orbit
            if lam.orbit_size(p.n_vars) < mu.orbit_size(p.n_vars):
                first, second = mu, lam
            else:
                first, second = lam, mu
            product = _monomial_product(first, second, p.n_vars, p.tag)
            result = add(result, scale(a * b, product))
    return result


def power_sum(l, n_vars, tag=VariableTag.Y):
    """
    The power sum P_l = sum_i v_i**l, which is the monomial m_(l).
    """
    if not 1 <= l <= n_vars:
        raise DomainError(f'Power-sum index {l} outside 1..{n_vars}')
    return SymPoly.monomial((l,), n_vars, tag)


def power_sum_product(exponents, n_vars, tag=VariableTag.Y):
    """
    Product of power sums, prod_l P_l**n_l, in the monomial basis.

    Parameters
    ----------
    exponents: ``dict``
        Mapping from power-sum index ``l`` (1..N) to its exponent ``n_l``.

    n_vars: ``int``

    tag: ``VariableTag``, optional

    Returns
    -------
    poly: ``SymPoly``
        Homogeneous of degree sum(l * n_l).
    """
    key = tuple(sorted((int(l), int(n)) for l, n in exponents.items() if n))
    for l, n in exponents.items():
        if not 1 <= l <= n_vars:
            raise DomainError(f'Power-sum index {l} outside 1..{n_vars}')
        if n < 0:
            raise DomainError(f'Negative exponent {n} for P_{l}')
    return _power_sum_product(key, n_vars, VariableTag(tag))


@lru_cache(maxsize=1024)
def _power_sum_product(key, n_vars, tag):
    result = SymPoly.constant(1, n_vars, tag)
    for l, n in key:
        factor = power_sum(l, n_vars, tag)
        for _ in range(n):
            result = multiply(result, factor)
    logger.debug('power-sum product %s in %d variables: %d terms',
                 key, n_vars, len(result))
    return result


@lru_cache(maxsize=4096)
def _orbit_array(partition, n_vars):
    return np.array(partition.orbit(n_vars), dtype=float).reshape(
        -1, n_vars)


def evaluate_many(p, points):
    """
    Evaluate ``p`` at many points at once.

    Parameters
    ----------
    p: ``SymPoly``

    points: array-like, shape (M, N)
        Values of the polynomial's own variables.

    Returns
    -------
    values: ``numpy.ndarray``, shape (M,)
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != p.n_vars:
        raise ContractError(f'Expected points of shape (M, {p.n_vars}), got '
                            f'{points.shape}')
    total = np.zeros(points.shape[0])
    for part, coeff in p.items():
        exponents = _orbit_array(part, p.n_vars)
        monomials = np.prod(points[:, None, :] ** exponents[None, :, :],
                            axis=2)
        total += float(coeff) * monomials.sum(axis=1)
    return total


def evaluate(p, point):
    """
    Evaluate ``p`` at a single point in floating point.

    Terms are summed in canonical partition order and the monomials of each
    m_mu in lexicographic order of their exponent vectors, so the result is
    reproducible bit for bit.
    """
    point = np.asarray(point, dtype=float)
    if point.shape != (p.n_vars,):
        raise ContractError(f'Expected {p.n_vars} coordinates, got '
                            f'{point.shape}')
    return float(evaluate_many(p, point[None, :])[0])
