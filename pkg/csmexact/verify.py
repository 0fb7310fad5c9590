"""
Numerical and polynomial oracles for the exact construction.

The symbolic eigenfunctions are checked against the untransformed physics:
the ground state is evaluated pointwise, the physical Hamiltonian is applied
with finite differences, and cross-level overlaps are integrated with Gauss
rules in the squared coordinates. The suites at the bottom run
those checks over parameter grids and return `CheckReport` objects.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

import numpy as np
import sympy
from scipy.special import roots_genlaguerre, roots_jacobi

from .doc_stubs import params_arg, point_arg, report_returns
from .errors import (ContractError, DomainError, QuadratureConfigError,
                     UnsafePointError)
from .operators import (GradedOperator, ModelParams, apply_euler, apply_F,
                        apply_hermite_euler, apply_transformed_H_cs,
                        exp_graded, hermite_smooth)
from .spectrum import build_eigenfunction, degeneracy, level_basis, rank_check
from .symfun import (SymPoly, VariableTag, evaluate, evaluate_many,
                     partitions_of, power_sum_product)
from .utils import CheckReport, format_rational, ordered_map

logger = logging.getLogger(__name__)

SAFETY_MARGIN = 0.3
BOX = 3.0
DEFAULT_STEP = 1e-3
DEFAULT_SEED = 1729
DEFAULT_POINTS = 20
FD_TOLERANCE = 1e-5
NODE_CLEARANCE = 1e-2
MAX_DRAWS = 1000
EXACT_GRAM_TOLERANCE = 1e-10
APPROX_GRAM_TOLERANCE = 1e-6

COUPLING_GRID = tuple(Fraction(k, 2) for k in range(5))
FD_COUPLINGS = (Fraction(1), Fraction(2))


@dataclass(frozen=True)
class SamplePoint:
    """
    Particle coordinates used by the pointwise oracles.

    Attributes
    ----------
    coordinates: ``tuple of float``
    """
    coordinates: tuple

    def __post_init__(self):
        object.__setattr__(self, 'coordinates',
                           tuple(float(x) for x in self.coordinates))

    def as_array(self):
        return np.array(self.coordinates)

    def violations(self, margin=SAFETY_MARGIN, box=BOX):
        """
        Descriptions of every safety condition the point breaks.
        """
        x = self.as_array()
        found = []
        if np.any(np.abs(x) < margin):
            found.append(f'|x_i| < {margin}')
        if np.any(np.abs(x) > box):
            found.append(f'|x_i| > {box}')
        for i, j in combinations(range(len(x)), 2):
            if abs(x[i] - x[j]) < margin:
                found.append(f'|x_{i} - x_{j}| < {margin}')
            if abs(x[i] + x[j]) < margin:
                found.append(f'|x_{i} + x_{j}| < {margin}')
        return found

    def is_safe(self, margin=SAFETY_MARGIN, box=BOX):
        return not self.violations(margin, box)

    def check(self, margin=SAFETY_MARGIN, box=BOX):
        found = self.violations(margin, box)
        if found:
            raise UnsafePointError('Unsafe sample point {}: {}'.format(
                self.coordinates, ', '.join(found)))
        return self


def _as_point(x, n_particles):
    point = x if isinstance(x, SamplePoint) else SamplePoint(tuple(x))
    if len(point.coordinates) != n_particles:
        raise ContractError(f'Expected {n_particles} coordinates, got '
                            f'{len(point.coordinates)}')
    return point.check()


def node_clearance(poly, x):
    """
    |P| over sum_mu |c_mu| m_mu at the point. ``Y`` polynomials are
    evaluated at y = x**2, where the ratio lies in [0, 1].

    Small values mean the sample point sits close to a node of the
    polynomial part, where the relative finite-difference residual is
    dominated by cancellation in the stencil.
    """
    y = np.asarray(x, dtype=float)
    if poly.tag is VariableTag.Y:
        y = y ** 2
    magnitude = SymPoly(poly.n_vars, poly.tag,
                        {mu: abs(coeff) for mu, coeff in poly.items()})
    scale = evaluate(magnitude, y)
    if not scale:
        return 1.0
    return abs(evaluate(poly, y)) / scale


def random_safe_points(n_particles, count=DEFAULT_POINTS, seed=DEFAULT_SEED,
                       margin=SAFETY_MARGIN, box=BOX, poly=None,
                       clearance=NODE_CLEARANCE):
    """
    Reproducible safe sample points, drawn uniformly in the box and
    rejected until every safety margin holds.

    With ``poly`` given, points whose `node_clearance` is below
    ``clearance`` are rejected too.
    """
    rng = np.random.default_rng(seed)
    points = []
    draws = 0
    while len(points) < count:
        draws += 1
        if draws > MAX_DRAWS * count:
            raise UnsafePointError(
                f'Found only {len(points)} of {count} safe points after '
                f'{draws - 1} draws')
        point = SamplePoint(rng.uniform(-box, box, size=n_particles))
        if not point.is_safe(margin, box):
            continue
        if (poly is not None
                and node_clearance(poly, point.coordinates) < clearance):
            continue
        points.append(point)
    return points


def _ground_state(params, x):
    lam, lam1 = float(params.lam), float(params.lam1)
    value = math.exp(-0.5 * float(np.dot(x, x)))
    value *= float(np.prod(np.abs(x) ** lam1))
    for j, k in combinations(range(len(x)), 2):
        value *= (abs(x[j] - x[k]) * abs(x[j] + x[k])) ** lam
    return value


def _psi(ef, x):
    return _ground_state(ef.params, x) * evaluate(ef.poly, x * x)


def eval_ground_state(params, x):
    """
    Bosonic ground state
    prod_{j<k} |x_j - x_k|**lam |x_j + x_k|**lam prod_k |x_k|**lam1
    * exp(-|x|**2 / 2).

    Parameters
    ----------%s%s
    Returns
    -------
    psi0: ``float``
    """
    point = _as_point(x, params.n_particles)
    return _ground_state(params, point.as_array())


eval_ground_state.__doc__ = eval_ground_state.__doc__ % (params_arg,
                                                         point_arg)


def eval_eigenfunction(ef, x):
    """
    psi_0(x) times the polynomial part evaluated at y = x**2.
    """
    point = _as_point(x, ef.params.n_particles)
    return _psi(ef, point.as_array())


def potential(params, x):
    """
    Potential energy of the physical Hamiltonian at ``x``.
    """
    x = np.asarray(x, dtype=float)
    g2, g1_2 = float(params.g2), float(params.g1_2)
    value = 0.5 * float(np.dot(x, x))
    for i, j in combinations(range(len(x)), 2):
        value += g2 * (1 / (x[i] - x[j]) ** 2 + 1 / (x[i] + x[j]) ** 2)
    if g1_2:
        value += 0.5 * g1_2 * float(np.sum(1 / x ** 2))
    return value


def _laplacian_fd(func, x, h):
    # fourth-order five-point stencil per coordinate
    center = func(x)
    total = 0.0
    for i in range(len(x)):
        step = np.zeros_like(x)
        step[i] = h
        total += (-func(x + 2 * step) + 16 * func(x + step) - 30 * center
                  + 16 * func(x - step) - func(x - 2 * step)) / (12 * h * h)
    return total, center


def fd_residual(ef, x, h=DEFAULT_STEP, energy=None):
    """
    Relative residual of the physical eigen-equation at one point.

    The Laplacian is taken with a fourth-order central stencil of step ``h``
    and the potential is evaluated exactly.

    Parameters
    ----------
    ef: ``Eigenfunction``
%s    h: ``float``, optional
        Stencil step in [1e-4, 1e-2].

    energy: ``float``, optional
        Energy to test against instead of ``ef.energy``.

    Returns
    -------
    residual: ``float``
        |H psi - E psi| / max(|psi|, 1e-30).
    """
    if not 1e-4 <= h <= 1e-2:
        raise ContractError(f'Finite-difference step {h} outside '
                            '[1e-4, 1e-2]')
    x = _as_point(x, ef.params.n_particles).as_array()
    energy = float(ef.energy if energy is None else energy)
    laplacian, psi = _laplacian_fd(lambda y: _psi(ef, y), x, h)
    h_psi = -0.5 * laplacian + potential(ef.params, x) * psi
    return abs(h_psi - energy * psi) / max(abs(psi), 1e-30)


fd_residual.__doc__ = fd_residual.__doc__ % point_arg


def oscillator_fd_residual(q, x, h=DEFAULT_STEP):
    """
    Relative residual of the decoupled-oscillator equation for the
    Gaussian times the smoothed polynomial ``q``.

    For ``q`` homogeneous of x-degree d, exp(-|x|**2 / 2) * E q satisfies
    -1/2 lap psi + 1/2 |x|**2 psi = (d + N/2) psi.
    """
    if not q.is_homogeneous or not q:
        raise ContractError('oscillator_fd_residual needs a nonzero '
                            'homogeneous polynomial')
    q = q.to_x()
    smoothed = exp_graded(GradedOperator.GAUSSIAN_SMOOTHING, q)
    energy = q.x_degree(q.degree) + q.n_vars / 2
    x = np.asarray(x, dtype=float)
    if x.shape != (q.n_vars,):
        raise ContractError(f'Expected {q.n_vars} coordinates')

    def psi(y):
        return math.exp(-0.5 * float(np.dot(y, y))) * evaluate(smoothed, y)
    laplacian, value = _laplacian_fd(psi, x, h)
    h_psi = -0.5 * laplacian + 0.5 * float(np.dot(x, x)) * value
    return abs(h_psi - energy * value) / max(abs(value), 1e-30)


@dataclass(frozen=True)
class QuadratureConfig:
    """
    Gauss rules for overlaps under psi_0**2 rewritten in y = x**2.

    One particle uses generalized Gauss-Laguerre with weight
    y**(lam1 - 1/2) exp(-y). Two particles are integrated over the chamber
    y_1 > y_2 with u = y_1 + y_2 and w = (y_1 - y_2) / u: the radial part is
    generalized Gauss-Laguerre in u and the gap |y_1 - y_2|**(2 lam) becomes
    the Gauss-Jacobi weight in w, so the rule does not straddle the
    diagonal. Three or more particles fall back to the tensor Laguerre rule
    with the pair factor kept in the integrand, which is exact only for
    integer lambda.

    Attributes
    ----------
    nodes_per_dim: ``int``
    """
    nodes_per_dim: int = 32

    @staticmethod
    def required_nodes(max_degree, params):
        return (max_degree + math.ceil(params.n_particles * params.lam) + 2)

    @staticmethod
    def rule(params):
        return 'pair-chamber' if params.n_particles == 2 else 'tensor'

    def validate(self, max_degree, params):
        needed = self.required_nodes(max_degree, params)
        if self.nodes_per_dim < needed:
            raise QuadratureConfigError(
                f'{self.nodes_per_dim} nodes per dimension cannot integrate '
                f'degree {max_degree} with N={params.n_particles}, '
                f'lambda={params.lam}; need at least {needed}')

    def grid(self, params):
        """
        Nodes in y, shape (M, N), and weights, shape (M,), including the
        pair factor.
        """
        if self.rule(params) == 'pair-chamber':
            return self._chamber_grid(params)
        nodes, weights = roots_genlaguerre(self.nodes_per_dim,
                                           float(params.lam1) - 0.5)
        n = params.n_particles
        points = np.array(list(product(nodes, repeat=n)))
        total = np.prod(np.array(list(product(weights, repeat=n))), axis=1)
        lam = float(params.lam)
        if lam:
            for i, j in combinations(range(n), 2):
                gap = np.abs(points[:, i] - points[:, j])
                total = total * gap ** (2 * lam)
        return points, total

    def _chamber_grid(self, params):
        # y_1 = u (1 + w) / 2, y_2 = u (1 - w) / 2 with w = (1 + z) / 2, so
        # (y_1 y_2)**a |y_1 - y_2|**(2 lam) dy becomes
        # u**(2a + 2 lam + 1) (1 - z)**a (1 + z)**(2 lam) (1 + w)**a
        # up to a constant; the mirror chamber doubles the result
        a = float(params.lam1) - 0.5
        lam = float(params.lam)
        u, u_weights = roots_genlaguerre(self.nodes_per_dim,
                                         2 * a + 2 * lam + 1)
        z, z_weights = roots_jacobi(self.nodes_per_dim, a, 2 * lam)
        w = (1 + z) / 2
        scale = 2.0 ** (-3 * a - 2 * lam - 1)
        uu, ww = np.meshgrid(u, w, indexing='ij')
        points = np.column_stack([(uu * (1 + ww) / 2).ravel(),
                                  (uu * (1 - ww) / 2).ravel()])
        weights = scale * np.outer(u_weights, z_weights * (1 + w) ** a)
        return points, weights.ravel()


def gram_matrix(efs, cfg):
    """
    Overlap matrix of eigenfunctions under the ground-state weight.

    Entries are integrals over the positive orthant in y of
    p_a p_b prod_i y_i**(lam1 - 1/2) e**(-y_i) prod_{i<j} |y_i - y_j|**(2 lam).
    Constant factors are dropped. For integer lambda the tensor integrand
    is a polynomial and the rule is exact up to rounding; the two-particle
    chamber rule is exact in the radial variable and converges
    geometrically in the gap variable for any lambda.

    Parameters
    ----------
    efs: ``list of Eigenfunction``
        Members must share the model parameters.

    cfg: ``QuadratureConfig``

    Returns
    -------
    gram: ``numpy.ndarray``
    """
    efs = list(efs)
    if not efs:
        return np.zeros((0, 0))
    params = efs[0].params
    if any(ef.params != params for ef in efs):
        raise ContractError('gram_matrix needs one set of parameters')
    cfg.validate(max(ef.poly.max_degree for ef in efs), params)
    points, weights = cfg.grid(params)
    # summation over nodes follows the fixed node order of the grid
    values = np.array([evaluate_many(ef.poly, points) for ef in efs])
    return (values * weights) @ values.T


def normalize_gram(gram):
    diag = np.sqrt(np.diag(gram))
    return gram / np.outer(diag, diag)


def gram_report(efs, cfg, tolerance=None):
    """
    Check that eigenfunctions of different energies are orthogonal.

    Same-energy entries are reported but not asserted; the power-sum basis
    of a degenerate level is not orthogonal.
    %s"""
    efs = list(efs)
    params = efs[0].params
    if tolerance is None:
        tolerance = (EXACT_GRAM_TOLERANCE if params.lam.denominator == 1
                     else APPROX_GRAM_TOLERANCE)
    gram = gram_matrix(efs, cfg)
    report = CheckReport('gram', details={
        'levels': sorted({ef.level for ef in efs}),
        'rule': cfg.rule(params),
        'quadrature': {'nodes_per_dim': cfg.nodes_per_dim,
                       'lambda': format_rational(params.lam),
                       'lambda1': format_rational(params.lam1)}})
    for a, ef in enumerate(efs):
        report.record(gram[a, a] > 0, relation='<p|p> > 0',
                      label=list(ef.label), value=float(gram[a, a]))
    normalized = normalize_gram(gram)
    max_off_block = 0.0
    max_in_block = 0.0
    for a, b in combinations(range(len(efs)), 2):
        entry = abs(float(normalized[a, b]))
        if efs[a].energy == efs[b].energy:
            max_in_block = max(max_in_block, entry)
            continue
        max_off_block = max(max_off_block, entry)
        report.record(entry < tolerance, relation='cross-level overlap',
                      labels=[list(efs[a].label), list(efs[b].label)],
                      value=entry)
    report.details['max_off_block'] = max_off_block
    report.details['max_in_block'] = max_in_block
    report.details['tolerance'] = tolerance
    return report


gram_report.__doc__ = gram_report.__doc__ % report_returns


def hermite_polynomial(n, gen=None):
    """
    Physicists' Hermite polynomial H_n from H_{k+1} = 2x H_k - 2k H_{k-1}.
    """
    x = gen if gen is not None else sympy.Symbol('x')
    prev, cur = sympy.Poly(0, x, domain='QQ'), sympy.Poly(1, x, domain='QQ')
    two_x = sympy.Poly(2 * x, x, domain='QQ')
    for k in range(n):
        prev, cur = cur, two_x * cur - prev * (2 * k)
    return cur


def laguerre_polynomial(n, a, gen=None):
    """
    Generalized Laguerre polynomial L_n^(a) from
    (k+1) L_{k+1} = (2k + 1 + a - y) L_k - (k + a) L_{k-1}.
    """
    y = gen if gen is not None else sympy.Symbol('y')
    a = sympy.Rational(Fraction(a).numerator, Fraction(a).denominator)
    prev, cur = sympy.Poly(0, y, domain='QQ'), sympy.Poly(1, y, domain='QQ')
    for k in range(n):
        factor = sympy.Poly(2 * k + 1 + a - y, y, domain='QQ')
        prev, cur = cur, (factor * cur - prev * (k + a)) * sympy.Rational(
            1, k + 1)
    return cur


def laguerre_ratio(ef):
    """
    Constant ratio between a one-particle eigenfunction and
    L_n^(lam1 - 1/2), or ``None`` if they are not proportional.
    """
    if ef.params.n_particles != 1:
        raise ContractError('The Laguerre reduction needs N = 1')
    oracle = laguerre_polynomial(ef.level, ef.params.lam1 - Fraction(1, 2))
    expected = {degree: Fraction(int(c.p), int(c.q))
                for (degree,), c in oracle.terms()}
    found = {part.weight: coeff for part, coeff in ef.poly.items()}
    if set(found) != set(expected):
        return None
    ratios = {found[d] / expected[d] for d in found}
    return ratios.pop() if len(ratios) == 1 else None


def coupling_grid(max_particles, couplings=COUPLING_GRID, alpha=0):
    """
    ``ModelParams`` for every N up to ``max_particles`` and every pair of
    couplings (lam, lam1).
    """
    return [ModelParams(n, lam, lam1, alpha)
            for n in range(1, max_particles + 1)
            for lam, lam1 in product(couplings, repeat=2)]


def symbolic_suite(grid, n_max=6, perturb_energy=0, threads=1):
    """
    Exact eigen-equation and rank checks over a parameter grid.

    Every eigenfunction of every level up to ``n_max`` must satisfy
    H p = (E + perturb_energy) p exactly, and every level basis must have
    rank equal to its degeneracy.

    These relations hold for any degree-lowering F and test the algebra
    rather than the model. The extra check F p_1 = -2 E_0 ties the
    couplings in F to the ground-state energy; only `fd_suite` and
    `gram_suite` compare the eigenfunctions with the physical Hamiltonian.
    %s"""
    report = CheckReport('eigen-equation')
    perturb_energy = Fraction(perturb_energy)
    for params in grid:
        for n in range(n_max + 1):
            basis = level_basis(params, n, threads=threads, verify=False)
            for ef in basis:
                report.record(ef.check(perturb_energy),
                              params=params.to_dict(), level=n,
                              label=list(ef.label),
                              energy=format_rational(ef.energy
                                                     + perturb_energy))
            rank = rank_check(basis)
            report.record(rank == degeneracy(params, n),
                          params=params.to_dict(), level=n,
                          relation='rank equals degeneracy', rank=rank)
        p1 = SymPoly.monomial((1,), params.n_particles, VariableTag.Y)
        report.record(apply_F(p1, params)
                      == SymPoly.constant(-2 * params.e0, params.n_particles),
                      params=params.to_dict(), relation='F p_1 = -2 E_0')
    logger.info('Eigen-equation suite: %d checks, %d violations',
                report.checked, len(report.violations))
    return report


symbolic_suite.__doc__ = symbolic_suite.__doc__ % report_returns


def random_symmetric_poly(rng, n_vars, degree, tag=VariableTag.Y):
    """
    Random nonzero homogeneous symmetric polynomial with small rational
    coefficients.
    """
    parts = partitions_of(degree, max(degree, 1), n_vars)
    while True:
        terms = {}
        for part in parts:
            if rng.random() < 0.7:
                terms[part] = Fraction(int(rng.integers(-9, 10)),
                                       int(rng.integers(1, 5)))
        poly = SymPoly(n_vars, tag, terms)
        if poly:
            return poly


def commutator_suite(count=50, seed=DEFAULT_SEED, max_particles=4,
                     max_degree=6, couplings=COUPLING_GRID):
    """
    Check D exp(F/2) q - exp(F/2) D q = -F exp(F/2) q on random homogeneous
    symmetric polynomials q, with D the Euler operator.
    %s"""
    rng = np.random.default_rng(seed)
    report = CheckReport('commutator', details={'seed': seed})
    for _ in range(count):
        n = int(rng.integers(1, max_particles + 1))
        degree = int(rng.integers(1, max_degree + 1))
        lam, lam1 = (couplings[int(k)]
                     for k in rng.integers(0, len(couplings), size=2))
        params = ModelParams(n, lam, lam1)
        q = random_symmetric_poly(rng, n, degree)
        smoothed = exp_graded(GradedOperator.HALF_F, q, params)
        lhs = SymPoly.zero(n)
        for component in smoothed.components().values():
            lhs = lhs + apply_euler(component)
        lhs = lhs - exp_graded(GradedOperator.HALF_F, apply_euler(q), params)
        rhs = -apply_F(smoothed, params)
        report.record(lhs == rhs, params=params.to_dict(),
                      poly=q.to_dict())
    logger.info('Commutator suite: %d random polynomials, %d violations',
                report.checked, len(report.violations))
    return report


commutator_suite.__doc__ = commutator_suite.__doc__ % report_returns


def cs_image(params, q):
    """
    exp(-A/2) q for an even ``X`` seed, the A_N image of a B_N seed.
    """
    q = q.to_x()
    if not q.is_even():
        raise DomainError('The B_N image lies in the even sector; seed '
                          f'{q} has odd exponents')
    return exp_graded(GradedOperator.MINUS_HALF_A, q, params)


def bridge_suite(alphas=(0, 1, 2), max_particles=3, max_level=4):
    """
    Check the A_N bridge: for every B_N label of level n the lifted seed q
    gives exp(-A/2) q with eigenvalue 2n + E_0' under the transformed CS
    Hamiltonian. At alpha = 0 the image must also equal the Gaussian
    smoothing of q.
    %s"""
    report = CheckReport('cs-bridge')
    for alpha, n_vars in product(alphas, range(1, max_particles + 1)):
        params = ModelParams(n_vars, alpha=alpha)
        for n in range(max_level + 1):
            for label in partitions_of(n, n_vars, max(n, 1)):
                q = power_sum_product(dict(label.multiplicities()), n_vars,
                                      VariableTag.Y).to_x()
                image = cs_image(params, q)
                eigenvalue = 2 * n + params.e0_cs
                report.record(
                    apply_transformed_H_cs(image, params)
                    == image.scale(eigenvalue),
                    params=params.to_dict(), label=list(label),
                    relation='CS eigen-equation')
                if alpha == 0:
                    report.record(
                        image == exp_graded(
                            GradedOperator.GAUSSIAN_SMOOTHING, q),
                        params=params.to_dict(), label=list(label),
                        relation='alpha = 0 equals Gaussian smoothing')
    return report


bridge_suite.__doc__ = bridge_suite.__doc__ % report_returns


def hermite_suite(n_max=10, max_particles=3):
    """
    Check the Gaussian smoothing against Hermite polynomials, one variable
    at a time, and as eigenfunctions of the conjugated Euler operator on
    symmetric seeds.
    %s"""
    report = CheckReport('hermite')
    x = sympy.Symbol('x')
    for n in range(n_max + 1):
        smoothed = hermite_smooth(sympy.Poly(x ** n, x, domain='QQ'))
        expected = hermite_polynomial(n, x) * sympy.Rational(1, 2 ** n)
        report.record(smoothed == expected, relation='E x**n = H_n / 2**n',
                      n=n)
    for n_vars in range(1, max_particles + 1):
        for degree in range(n_max + 1):
            for part in partitions_of(degree, max(degree, 1), n_vars):
                q = SymPoly.monomial(part, n_vars, VariableTag.X)
                smoothed = exp_graded(GradedOperator.GAUSSIAN_SMOOTHING, q)
                report.record(apply_hermite_euler(smoothed)
                              == smoothed.scale(degree),
                              relation='conjugated Euler eigen-equation',
                              partition=list(part), N=n_vars)
    return report


hermite_suite.__doc__ = hermite_suite.__doc__ % report_returns


def laguerre_suite(lam1_values=(0, Fraction(1, 2), 1, 2), n_max=8):
    """
    Check that one-particle eigenfunctions are proportional to generalized
    Laguerre polynomials L_n^(lam1 - 1/2).
    %s"""
    report = CheckReport('laguerre')
    for lam1 in lam1_values:
        params = ModelParams(1, lam1=lam1)
        for n in range(n_max + 1):
            ef = build_eigenfunction(params, [1] * n)
            ratio = laguerre_ratio(ef)
            report.record(ratio is not None, lambda1=format_rational(lam1),
                          level=n)
    return report


laguerre_suite.__doc__ = laguerre_suite.__doc__ % report_returns


def fd_suite(particles=(2, 3), couplings=FD_COUPLINGS, n_max=3,
             count=DEFAULT_POINTS, seed=DEFAULT_SEED, h=DEFAULT_STEP,
             tolerance=FD_TOLERANCE, perturb_energy=0, threads=1,
             clearance=NODE_CLEARANCE):
    """
    Finite-difference check of every eigenfunction against the physical
    Hamiltonian at reproducible safe points.

    Each eigenfunction gets its own points from ``seed``, skipping those
    whose `node_clearance` is below ``clearance``.
    %s"""
    report = CheckReport('finite-difference',
                         details={'seed': seed, 'h': h, 'points': count,
                                  'tolerance': tolerance,
                                  'clearance': clearance,
                                  'eigenfunctions': []})
    shift = float(Fraction(perturb_energy))
    for n_vars in particles:
        for lam, lam1 in product(couplings, repeat=2):
            params = ModelParams(n_vars, lam, lam1)
            for n in range(n_max + 1):
                for ef in level_basis(params, n, verify=False):
                    points = random_safe_points(n_vars, count, seed,
                                                poly=ef.poly,
                                                clearance=clearance)
                    residuals = ordered_map(
                        lambda x, ef=ef: fd_residual(
                            ef, x, h, float(ef.energy) + shift),
                        points, threads=threads)
                    worst = max(residuals)
                    report.details['eigenfunctions'].append({
                        'params': params.to_dict(),
                        'label': list(ef.label),
                        'energy': format_rational(ef.energy),
                        'max_fd_residual': worst,
                        'points_tested': len(points)})
                    report.record(worst < tolerance, params=params.to_dict(),
                                  label=list(ef.label),
                                  max_fd_residual=worst)
    logger.info('Finite-difference suite: %d eigenfunctions, %d violations',
                report.checked, len(report.violations))
    return report


fd_suite.__doc__ = fd_suite.__doc__ % report_returns


def gram_suite(lams=(1, Fraction(3, 2)), lam1s=(Fraction(1, 2), 1),
               n_particles=2, n_max=3, nodes_per_dim=48):
    """
    Cross-level orthogonality under the ground-state weight for every pair
    of couplings.
    %s"""
    report = CheckReport('gram', details={'runs': []})
    for lam, lam1 in product(lams, lam1s):
        params = ModelParams(n_particles, lam, lam1)
        efs = [ef for n in range(n_max + 1)
               for ef in level_basis(params, n, verify=False)]
        cfg = QuadratureConfig(max(nodes_per_dim, QuadratureConfig
                                   .required_nodes(n_max, params)))
        run = gram_report(efs, cfg)
        report.merge(run)
        report.details['runs'].append(run.to_dict())
    return report


gram_suite.__doc__ = gram_suite.__doc__ % report_returns
