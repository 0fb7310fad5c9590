"""
Degree-lowering differential operators acting exactly on ``SymPoly``.

Every operator here commutes with permutations of the particles, so it is
applied to a single representative monomial of each m_mu and the result is
re-symmetrized (see `csmexact.symfun.resymmetrize`). Pair terms carrying a
divided difference are evaluated on the symmetric pair of monomials, where the
division is exact, and half of the quotient is credited to each member of the
pair.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import sympy

from .doc_stubs import params_arg, poly_x_arg, poly_y_arg
from .errors import ContractError, DomainError, InternalConsistencyError
from .symfun import SymPoly, VariableTag, resymmetrize
from .utils import format_rational, parse_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModelParams:
    """
    Particle number and exact couplings of the model, with hbar = m = omega
    set to one.

    Parameters
    ----------
    n_particles: ``int``
        Number of particles N.

    lam: ``Fraction``, ``int`` or ``str``
        Pair exponent lambda, with g**2 = lambda (lambda - 1).

    lam1: ``Fraction``, ``int`` or ``str``
        One-body exponent lambda_1, with g_1**2 = lambda_1 (lambda_1 - 1).

    alpha: ``Fraction``, ``int`` or ``str``
        Pair exponent of the A_N model reached by the CS map.
    """
    n_particles: int
    lam: Fraction = field(default=Fraction(0))
    lam1: Fraction = field(default=Fraction(0))
    alpha: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        if (not isinstance(self.n_particles, int)
                or isinstance(self.n_particles, bool)
                or self.n_particles < 1):
            raise DomainError('n_particles must be a positive int, got '
                              f'{self.n_particles!r}')
        for name in ('lam', 'lam1', 'alpha'):
            value = parse_rational(getattr(self, name))
            if value < 0:
                raise DomainError(f'{name} must be nonnegative, got {value}')
            object.__setattr__(self, name, value)
        if self.non_normalizable_risk:
            logger.debug('Couplings lambda=%s, lambda1=%s lie in (0, 1): '
                         'non-normalizable-risk: unverified',
                         self.lam, self.lam1)

    @property
    def g2(self):
        return self.lam * (self.lam - 1)

    @property
    def g1_2(self):
        return self.lam1 * (self.lam1 - 1)

    @property
    def e0(self):
        """Ground-state energy of the B_N model."""
        n = self.n_particles
        return n * (Fraction(1, 2) + (n - 1) * self.lam + self.lam1)

    @property
    def e0_cs(self):
        """Ground-state energy of the A_N model with exponent alpha."""
        n = self.n_particles
        return Fraction(n, 2) * (1 + self.alpha * (n - 1))

    @property
    def non_normalizable_risk(self):
        return any(0 < value < 1 for value in (self.lam, self.lam1))

    def to_dict(self):
        return {'N': self.n_particles,
                'lambda': format_rational(self.lam),
                'lambda1': format_rational(self.lam1),
                'alpha': format_rational(self.alpha)}

    @classmethod
    def from_dict(cls, data):
        return cls(data['N'], data.get('lambda', 0), data.get('lambda1', 0),
                   data.get('alpha', 0))


def _check_poly(p, tag, n_vars, operation):
    if not isinstance(p, SymPoly):
        raise ContractError(f'{operation} needs a SymPoly, got {type(p)}')
    if p.tag is not tag:
        raise ContractError(f'{operation} needs tag {tag.value}, got '
                            f'{p.tag.value}')
    if n_vars is not None and p.n_vars != n_vars:
        raise ContractError(f'{operation}: polynomial has {p.n_vars} '
                            f'variables but the model has {n_vars} particles')


def _check_grading(p, result, drop, operation):
    """
    An operator lowering the degree by ``drop`` must map a homogeneous
    polynomial of degree d to zero or to a homogeneous one of degree d - drop.
    """
    if not p or not p.is_homogeneous or not result:
        return
    if result.degree != p.degree - drop:
        raise InternalConsistencyError(
            f'{operation} broke the grading: degree {p.degree} mapped to '
            f'{result.degree if result.is_homogeneous else "inhomogeneous"}')


def _shift(exponents, i, delta):
    shifted = list(exponents)
    shifted[i] += delta
    return tuple(shifted)


def _swap(exponents, i, j):
    swapped = list(exponents)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    return tuple(swapped)


def _pair_block(exponents, i, j, base, m):
    """
    Monomials of (v_i v_j)**base * h_m(v_i, v_j) with the other exponents
    taken from ``exponents``; h_m is the complete homogeneous polynomial of
    degree m in two variables and h_m = 0 for m < 0.
    """
    for k in range(m + 1):
        vector = list(exponents)
        vector[i] = base + k
        vector[j] = base + m - k
        yield tuple(vector)


def _times_difference(poly, i, j):
    product = defaultdict(Fraction)
    for exponents, coeff in poly.items():
        product[_shift(exponents, i, 1)] += coeff
        product[_shift(exponents, j, 1)] -= coeff
    return {key: value for key, value in product.items() if value}


def _check_quotient(numerator, quotient, i, j):
    """
    Assert that ``quotient * (v_i - v_j)`` reproduces ``numerator``.
    """
    numerator = {key: value for key, value in numerator.items() if value}
    if _times_difference(quotient, i, j) != numerator:
        raise InternalConsistencyError(
            f'Divided difference over (v{i} - v{j}) left a remainder: '
            f'{numerator} / {quotient}')


def _y_pair_quotient(a, i, j):
    """
    (y_i d_i - y_j d_j) / (y_i - y_j) on the pair y**a + y**(s_ij a).
    """
    if a[i] == a[j]:
        return {}
    lo, hi = sorted((a[i], a[j]))
    d = hi - lo
    quotient = {vector: Fraction(d) for vector in _pair_block(a, i, j, lo,
                                                              d - 1)}
    sa = _swap(a, i, j)
    _check_quotient({a: a[i] - a[j], sa: a[j] - a[i]}, quotient, i, j)
    return quotient


def _x_pair_numerator(a, i, j):
    # (d_i - d_j) x**a
    numerator = defaultdict(Fraction)
    if a[i]:
        numerator[_shift(a, i, -1)] += a[i]
    if a[j]:
        numerator[_shift(a, j, -1)] -= a[j]
    return numerator


def _x_pair_quotient(a, i, j):
    """
    (d_i - d_j) / (x_i - x_j) on x**a when a_i = a_j, otherwise on the pair
    x**a + x**(s_ij a).
    """
    if a[i] == a[j]:
        p = a[i]
        if not p:
            return {}
        quotient = {next(_pair_block(a, i, j, p - 1, 0)): Fraction(-p)}
        _check_quotient(_x_pair_numerator(a, i, j), quotient, i, j)
        return quotient
    q, p = sorted((a[i], a[j]))
    quotient = defaultdict(Fraction)
    for vector in _pair_block(a, i, j, q, p - q - 2):
        quotient[vector] += p
    if q:
        for vector in _pair_block(a, i, j, q - 1, p - q):
            quotient[vector] -= q
    numerator = _x_pair_numerator(a, i, j)
    for key, value in _x_pair_numerator(_swap(a, i, j), i, j).items():
        numerator[key] += value
    quotient = {key: value for key, value in quotient.items() if value}
    _check_quotient(numerator, quotient, i, j)
    return quotient


def _credit_pair(image, quotient, a, i, j, weight):
    # a lone monomial (a_i = a_j) owns its whole quotient, a proper pair
    # splits it between its two members
    share = weight if a[i] == a[j] else weight / 2
    for vector, coeff in quotient.items():
        image[vector] += share * coeff


@lru_cache(maxsize=None)
def _f_image(mu, n_vars, lam, lam1):
    a = mu.padded(n_vars)
    image = defaultdict(Fraction)
    for i, ai in enumerate(a):
        if ai:
            # d_y + 2 y d_y**2 + 2 lambda_1 d_y on y**ai
            image[_shift(a, i, -1)] += ai * (2 * ai - 1 + 2 * lam1)
    if lam:
        for i, j in combinations(range(n_vars), 2):
            _credit_pair(image, _y_pair_quotient(a, i, j), a, i, j, 4 * lam)
    return resymmetrize(image, mu, n_vars, VariableTag.Y).scale(-1)


@lru_cache(maxsize=None)
def _a_image(mu, n_vars, alpha):
    a = mu.padded(n_vars)
    image = defaultdict(Fraction)
    for i, ai in enumerate(a):
        if ai >= 2:
            image[_shift(a, i, -2)] += Fraction(ai * (ai - 1), 2)
    if alpha:
        for i, j in combinations(range(n_vars), 2):
            _credit_pair(image, _x_pair_quotient(a, i, j), a, i, j, alpha)
    return resymmetrize(image, mu, n_vars, VariableTag.X)


@lru_cache(maxsize=None)
def _laplacian_image(mu, n_vars, tag):
    a = mu.padded(n_vars)
    image = defaultdict(Fraction)
    for i, ai in enumerate(a):
        if tag is VariableTag.X:
            if ai >= 2:
                image[_shift(a, i, -2)] += ai * (ai - 1)
        elif ai:
            # d_x**2 = 2 d_y + 4 y d_y**2 on even functions
            image[_shift(a, i, -1)] += 2 * ai * (2 * ai - 1)
    return resymmetrize(image, mu, n_vars, tag)


def _termwise(p, image):
    result = SymPoly.zero(p.n_vars, p.tag)
    for mu, coeff in p.items():
        result = result + image(mu).scale(coeff)
    return result


def apply_euler(p):
    """
    Euler operator sum_i x_i d_i on a homogeneous polynomial.

    The factor is the degree in the plain coordinates: twice the weight for
    tag ``Y``, the weight itself for tag ``X``.

    Raises
    ------
    ContractError
        If ``p`` is inhomogeneous; decompose it with ``p.components()``.
    """
    if not p:
        return p
    if not p.is_homogeneous:
        raise ContractError('apply_euler needs a homogeneous polynomial, '
                            f'got {p!r}')
    return p.scale(p.x_degree(p.degree))


def _euler_all(p):
    result = SymPoly.zero(p.n_vars, p.tag)
    for component in p.components().values():
        result = result + apply_euler(component)
    return result


def apply_F(p, params):
    """
    The lowering operator of the transformed B_N Hamiltonian, in y = x**2.

    F = -(sum_i (d_i + 2 y_i d_i**2 + 2 lambda_1 d_i)
          + 4 lambda sum_{i<j} (y_i d_i - y_j d_j) / (y_i - y_j))

    Parameters
    ----------%s%s
    Returns
    -------
    Fp: ``SymPoly``
        Tag ``Y``, one degree lower than ``p`` (or zero).
    """
    _check_poly(p, VariableTag.Y, params.n_particles, 'apply_F')
    result = _termwise(p, lambda mu: _f_image(mu, p.n_vars, params.lam,
                                              params.lam1))
    _check_grading(p, result, 1, 'apply_F')
    return result


apply_F.__doc__ = apply_F.__doc__ % (poly_y_arg, params_arg)


def apply_A(p, params):
    """
    The lowering operator of the A_N map,
    A = 1/2 sum_i d_i**2 + alpha sum_{i<j} (d_i - d_j) / (x_i - x_j).

    Parameters
    ----------%s%s
    Returns
    -------
    Ap: ``SymPoly``
        Tag ``X``, two degrees lower than ``p`` (or zero).
    """
    _check_poly(p, VariableTag.X, params.n_particles, 'apply_A')
    result = _termwise(p, lambda mu: _a_image(mu, p.n_vars, params.alpha))
    _check_grading(p, result, 2, 'apply_A')
    return result


apply_A.__doc__ = apply_A.__doc__ % (poly_x_arg, params_arg)


def apply_laplacian(p):
    """
    sum_i d**2/dx_i**2 on either tag; lowers the x-degree by two.
    """
    result = _termwise(p, lambda mu: _laplacian_image(mu, p.n_vars, p.tag))
    _check_grading(p, result, 1 if p.tag is VariableTag.Y else 2,
                   'apply_laplacian')
    return result


class GradedOperator(Enum):
    """
    Degree-lowering operators whose exponential terminates on polynomials.
    """
    HALF_F = 'F/2'
    MINUS_HALF_A = '-A/2'
    GAUSSIAN_SMOOTHING = '-lap/4'

    def apply(self, p, params=None):
        if self is GradedOperator.HALF_F:
            return apply_F(p, params).scale(Fraction(1, 2))
        elif self is GradedOperator.MINUS_HALF_A:
            return apply_A(p, params).scale(Fraction(-1, 2))
        return apply_laplacian(p).scale(Fraction(-1, 4))


def exp_graded(op, p, params=None, inverse=False):
    """
    Apply exp(op), or exp(-op) with ``inverse=True``, to a polynomial.

    Each operator lowers the x-degree by two, so the series
    sum_k op**k p / k! stops after at most deg(p) / 2 terms.

    Parameters
    ----------
    op: ``GradedOperator``

    p: ``SymPoly``

    params: ``ModelParams``, optional
        Needed by ``HALF_F`` and ``MINUS_HALF_A``.

    inverse: ``bool``, optional

    Returns
    -------
    result: ``SymPoly``
    """
    op = GradedOperator(op)
    if op is not GradedOperator.GAUSSIAN_SMOOTHING and params is None:
        raise ContractError(f'exp_graded({op.value}) needs ModelParams')
    sign = -1 if inverse else 1
    limit = p.x_degree(p.max_degree) // 2 + 1
    result = term = p
    k = 0
    while term:
        k += 1
        if k > limit:
            raise InternalConsistencyError(
                f'exp({op.value}) series did not terminate after {limit} '
                'terms')
        term = op.apply(term, params).scale(Fraction(sign, k))
        result = result + term
    logger.debug('exp(%s) terminated after %d terms', op.value, k)
    return result


def apply_transformed_H(p, params):
    """
    psi_0**-1 H psi_0 = sum_i x_i d_i + E_0 + F on a ``Y`` polynomial.
    """
    _check_poly(p, VariableTag.Y, params.n_particles, 'apply_transformed_H')
    return _euler_all(p) + p.scale(params.e0) + apply_F(p, params)


def apply_transformed_H_cs(p, params):
    """
    Transformed A_N Hamiltonian sum_i x_i d_i + E_0' - A on an ``X``
    polynomial.
    """
    _check_poly(p, VariableTag.X, params.n_particles,
                'apply_transformed_H_cs')
    return _euler_all(p) + p.scale(params.e0_cs) - apply_A(p, params)


def apply_hermite_euler(p):
    """
    sum_i x_i d_i - 1/2 sum_i d_i**2, the Euler operator conjugated by the
    Gaussian smoothing. Smoothed homogeneous polynomials of x-degree d are its
    eigenfunctions with eigenvalue d.
    """
    return _euler_all(p) - apply_laplacian(p).scale(Fraction(1, 2))


def hermite_smooth(poly, *gens):
    """
    Apply exp(-1/4 sum_i d**2/dx_i**2) exactly.

    Parameters
    ----------
    poly: ``SymPoly``, ``sympy.Poly`` or sympy expression
        Symmetric ``SymPoly`` inputs stay in the monomial basis; anything
        else is treated as an arbitrary polynomial in ``gens`` (all free
        symbols when omitted).

    gens: ``sympy.Symbol``, optional

    Returns
    -------
    smoothed:
        Same kind of object as ``poly``.
    """
    if isinstance(poly, SymPoly):
        return exp_graded(GradedOperator.GAUSSIAN_SMOOTHING, poly)
    is_expr = not isinstance(poly, sympy.Poly)
    if is_expr:
        expr = sympy.sympify(poly)
        if not gens:
            gens = tuple(sorted(expr.free_symbols, key=lambda s: s.name))
        if not gens:
            return expr
        poly = sympy.Poly(expr, *gens, domain='QQ')
    result = term = poly
    k = 0
    while not term.is_zero:
        k += 1
        laplacian = sympy.Poly(0, *term.gens, domain=term.domain)
        for gen in term.gens:
            laplacian += term.diff(gen).diff(gen)
        term = laplacian * sympy.Rational(-1, 4 * k)
        result += term
    return result.as_expr() if is_expr else result
