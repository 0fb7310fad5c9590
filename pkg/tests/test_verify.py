import logging
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from csmexact.errors import (ContractError, DomainError,
                             QuadratureConfigError, UnsafePointError)
from csmexact.operators import ModelParams, hermite_smooth
from csmexact.spectrum import build_eigenfunction, level_basis
from csmexact.symfun import SymPoly, VariableTag
from csmexact.verify import (QuadratureConfig, SamplePoint, bridge_suite,
                             commutator_suite, coupling_grid, cs_image,
                             eval_eigenfunction, eval_ground_state,
                             fd_residual, fd_suite, gram_matrix, gram_report,
                             gram_suite, hermite_polynomial, hermite_suite,
                             laguerre_polynomial, laguerre_ratio,
                             laguerre_suite, node_clearance, normalize_gram,
                             oscillator_fd_residual, potential,
                             random_safe_points, symbolic_suite)

logger = logging.getLogger(__name__)


def test_eval_ground_state_examples():
    logger.debug('test_eval_ground_state_examples')
    assert np.isclose(eval_ground_state(ModelParams(1), [1.0]),
                      0.6065306597)
    assert np.isclose(eval_ground_state(ModelParams(2, 1), (1.0, 2.0)),
                      3 * math.exp(-2.5))
    expected = 0.6 * 2.0 * 0.7 * 1.3 * math.exp(-(0.49 + 1.69) / 2)
    assert np.isclose(eval_ground_state(ModelParams(2, 1, 1), (0.7, 1.3)),
                      expected)


def _reference_ground_state(lam, lam1, x):
    # straight transcription over all ordered pairs j < k
    value = 1.0
    for j in range(len(x)):
        value *= abs(x[j]) ** lam1 * math.exp(-x[j] ** 2 / 2)
        for k in range(j + 1, len(x)):
            value *= abs(x[j] - x[k]) ** lam * abs(x[j] + x[k]) ** lam
    return value


def test_eval_ground_state_reference():
    logger.debug('test_eval_ground_state_reference')
    params = ModelParams(3, '3/2', '1/2')
    for point in random_safe_points(3, count=10, seed=7):
        assert np.isclose(eval_ground_state(params, point),
                          _reference_ground_state(1.5, 0.5,
                                                  point.coordinates))


def test_unsafe_points_rejected():
    logger.debug('test_unsafe_points_rejected')
    params = ModelParams(2, 1)
    for bad in ((0.1, 1.0), (1.0, 1.1), (1.0, -1.1), (4.0, 1.0)):
        with pytest.raises(UnsafePointError):
            eval_ground_state(params, bad)
    with pytest.raises(ContractError):
        eval_ground_state(params, (1.0, 2.0, 3.0))
    assert SamplePoint((1.0, 2.0)).is_safe()


def test_random_safe_points():
    logger.debug('test_random_safe_points')
    points = random_safe_points(3, count=20, seed=11)
    assert len(points) == 20
    assert all(point.is_safe() for point in points)
    again = random_safe_points(3, count=20, seed=11)
    assert [p.coordinates for p in points] == [p.coordinates for p in again]


def test_eval_eigenfunction(params_2):
    logger.debug('test_eval_eigenfunction')
    ground = build_eigenfunction(params_2, [])
    x = (0.7, 1.3)
    assert eval_eigenfunction(ground, x) == eval_ground_state(params_2, x)
    ef = build_eigenfunction(params_2, [1])
    assert np.isclose(eval_eigenfunction(ef, x),
                      eval_ground_state(params_2, x) * (0.49 + 1.69 - 5))
    # sign change across y1 + y2 = 5
    assert eval_eigenfunction(ef, (1.1, 1.5)) < 0
    assert eval_eigenfunction(ef, (1.4, 1.9)) > 0


def test_potential():
    logger.debug('test_potential')
    params = ModelParams(2, 2, 1)
    assert np.isclose(potential(params, (1.0, 2.0)),
                      2.5 + 2 * (1 + 1 / 9))
    params = ModelParams(1, lam1=2)
    assert np.isclose(potential(params, (2.0,)), 2.0 + 0.25)


def test_fd_residual_examples(params_2):
    logger.debug('test_fd_residual_examples')
    ground = build_eigenfunction(ModelParams(1), [])
    assert fd_residual(ground, (1.0,), h=1e-3) < 1e-7
    ef = build_eigenfunction(params_2, [1])
    assert fd_residual(ef, (0.7, 1.3), h=1e-3) < 1e-5
    wrong = fd_residual(ef, (0.7, 1.3), h=1e-3, energy=ef.energy + 1)
    assert 0.5 < wrong < 2
    with pytest.raises(ContractError):
        fd_residual(ef, (0.7, 1.3), h=0.1)
    with pytest.raises(UnsafePointError):
        fd_residual(ef, (0.7, 0.8))


@pytest.mark.parametrize('lam,lam1', [(1, 0), (1, 1), (2, 1), ('3/2', 2)])
def test_fd_residual_pair_coupling(lam, lam1):
    logger.debug('test_fd_residual_pair_coupling')
    params = ModelParams(2, lam, lam1)
    ef = build_eigenfunction(params, [1])
    assert ef.poly == SymPoly(2, VariableTag.Y, {(1,): 1, (): -params.e0})
    for point in random_safe_points(2, count=20, seed=5, poly=ef.poly):
        assert fd_residual(ef, point) < 1e-5


def test_node_clearance():
    logger.debug('test_node_clearance')
    p = SymPoly(2, VariableTag.Y, {(1,): 1, (): -5})
    assert node_clearance(p, (1.0, 2.0)) == pytest.approx(0.0)
    assert node_clearance(p, (0.0, 0.0)) == pytest.approx(1.0)
    assert node_clearance(SymPoly.constant(3, 2), (0.5, 1.5)) == 1.0
    assert node_clearance(SymPoly.zero(2), (0.5, 1.5)) == 1.0
    points = random_safe_points(2, count=30, seed=3, poly=p)
    assert all(node_clearance(p, point.coordinates) >= 1e-2
               for point in points)
    with pytest.raises(UnsafePointError):
        random_safe_points(2, count=1, poly=p, clearance=2)


def test_fd_residual_single_particle_energy(params_1):
    logger.debug('test_fd_residual_single_particle_energy')
    ef = build_eigenfunction(params_1, [1])
    assert ef.energy == Fraction(7, 2)
    for x in (0.6, 1.1, 2.4):
        assert fd_residual(ef, (x,)) < 1e-5


def test_fd_stencil_order():
    logger.debug('test_fd_stencil_order')
    ground = build_eigenfunction(ModelParams(1), [])
    coarse = fd_residual(ground, (2.5,), h=1e-2)
    fine = fd_residual(ground, (2.5,), h=5e-3)
    # fourth order: halving h divides the error by about 16
    assert coarse / fine > 8


def test_oscillator_fd_residual():
    logger.debug('test_oscillator_fd_residual')
    m2 = SymPoly.monomial((2,), 2, VariableTag.X)
    assert oscillator_fd_residual(m2, (0.7, 1.3)) < 1e-5
    y2 = SymPoly.monomial((2,), 1, VariableTag.Y)
    assert oscillator_fd_residual(y2, (1.9,)) < 1e-5
    with pytest.raises(ContractError):
        oscillator_fd_residual(SymPoly(2, VariableTag.X,
                                       {(2,): 1, (): 1}), (0.7, 1.3))


def test_quadrature_config():
    logger.debug('test_quadrature_config')
    params = ModelParams(2, '3/2', 1)
    assert QuadratureConfig.required_nodes(3, params) == 8
    QuadratureConfig(8).validate(3, params)
    with pytest.raises(QuadratureConfigError):
        QuadratureConfig(10).validate(20, params)


def test_gram_single_particle_is_diagonal(params_1):
    logger.debug('test_gram_single_particle_is_diagonal')
    efs = [build_eigenfunction(params_1, [1] * n) for n in range(4)]
    gram = normalize_gram(gram_matrix(efs, QuadratureConfig(16)))
    assert np.allclose(gram, np.eye(4), atol=1e-10)


def test_gram_report(params_2):
    logger.debug('test_gram_report')
    efs = [ef for n in range(3) for ef in level_basis(params_2, n)]
    report = gram_report(efs, QuadratureConfig(24))
    assert report.passed
    data = report.to_dict()
    assert data['levels'] == [0, 1, 2]
    assert data['max_off_block'] < 1e-10
    assert data['quadrature'] == {'nodes_per_dim': 24, 'lambda': '1',
                                  'lambda1': '1'}
    with pytest.raises(QuadratureConfigError):
        gram_matrix(efs, QuadratureConfig(3))


@pytest.mark.parametrize('lam,lam1,total', [
    (1, '1/2', 2.0),
    (0, 1, math.pi / 4),
    (0, '1/2', 1.0),
    ])
def test_chamber_rule_weights(lam, lam1, total):
    logger.debug('test_chamber_rule_weights')
    params = ModelParams(2, lam, lam1)
    cfg = QuadratureConfig(32)
    assert cfg.rule(params) == 'pair-chamber'
    points, weights = cfg.grid(params)
    assert points.shape == (32 * 32, 2)
    assert np.all(points > 0)
    assert np.all(weights > 0)
    assert np.isclose(weights.sum(), total, rtol=1e-10)
    assert QuadratureConfig.rule(ModelParams(3, lam, lam1)) == 'tensor'


def test_gram_half_integer_pair_coupling():
    logger.debug('test_gram_half_integer_pair_coupling')
    params = ModelParams(2, '3/2', 1)
    efs = [ef for n in range(4) for ef in level_basis(params, n)]
    report = gram_report(efs, QuadratureConfig(48))
    assert report.passed, report.violations[:3]
    assert report.details['rule'] == 'pair-chamber'
    assert report.details['max_off_block'] < 1e-6
    coarse = normalize_gram(gram_matrix(efs, QuadratureConfig(32)))
    fine = normalize_gram(gram_matrix(efs, QuadratureConfig(48)))
    assert np.allclose(coarse, fine, atol=1e-10)


@pytest.mark.timeout(300)
def test_gram_suite():
    logger.debug('test_gram_suite')
    report = gram_suite()
    assert report.passed, report.violations[:3]
    runs = report.details['runs']
    assert len(runs) == 4
    for run in runs:
        limit = 1e-10 if run['quadrature']['lambda'] == '1' else 1e-6
        assert run['max_off_block'] < limit


def test_hermite_polynomial():
    logger.debug('test_hermite_polynomial')
    x = sympy.Symbol('x')
    assert hermite_polynomial(2, x) == sympy.Poly(4 * x**2 - 2, x,
                                                  domain='QQ')
    for n in range(8):
        assert hermite_polynomial(n, x) == sympy.Poly(
            sympy.hermite(n, x), x, domain='QQ')
        smoothed = hermite_smooth(sympy.Poly(x**n, x, domain='QQ'))
        assert smoothed * 2**n == hermite_polynomial(n, x)


def test_laguerre_polynomial():
    logger.debug('test_laguerre_polynomial')
    y = sympy.Symbol('y')
    assert laguerre_polynomial(1, Fraction(1, 2), y) == sympy.Poly(
        sympy.Rational(3, 2) - y, y, domain='QQ')
    for n in range(6):
        assert laguerre_polynomial(n, 2, y) == sympy.Poly(
            sympy.assoc_laguerre(n, 2, y), y, domain='QQ')


def test_laguerre_ratio(params_1, params_2):
    logger.debug('test_laguerre_ratio')
    assert laguerre_ratio(build_eigenfunction(params_1, [1])) == -1
    assert laguerre_ratio(build_eigenfunction(params_1, [1, 1])) == 2
    with pytest.raises(ContractError):
        laguerre_ratio(build_eigenfunction(params_2, [1]))


def test_cs_image(params_2):
    logger.debug('test_cs_image')
    m2 = SymPoly.monomial((2,), 2, VariableTag.X)
    assert cs_image(params_2, m2) == SymPoly(2, VariableTag.X,
                                             {(2,): 1, (): -2})
    with pytest.raises(DomainError):
        cs_image(params_2, SymPoly.monomial((1,), 2, VariableTag.X))


@pytest.mark.timeout(300)
def test_symbolic_suite():
    logger.debug('test_symbolic_suite')
    report = symbolic_suite(coupling_grid(2), n_max=3)
    assert report.passed
    assert report.checked > 0


def test_symbolic_suite_perturbed():
    logger.debug('test_symbolic_suite_perturbed')
    report = symbolic_suite(coupling_grid(1), n_max=1, perturb_energy=1)
    assert not report.passed
    assert 'label' in report.violations[0]


def test_coupling_grid():
    logger.debug('test_coupling_grid')
    grid = coupling_grid(2)
    assert len(grid) == 50
    assert grid[0] == ModelParams(1)


@pytest.mark.timeout(300)
def test_commutator_suite():
    logger.debug('test_commutator_suite')
    report = commutator_suite(count=20, seed=3)
    assert report.passed
    assert report.checked == 20


@pytest.mark.timeout(300)
def test_bridge_suite():
    logger.debug('test_bridge_suite')
    report = bridge_suite(max_particles=2, max_level=3)
    assert report.passed


@pytest.mark.timeout(600)
@pytest.mark.parametrize('alpha', [0, 1, 2])
def test_bridge_suite_degree_eight(alpha):
    logger.debug('test_bridge_suite_degree_eight')
    report = bridge_suite(alphas=(alpha,), max_particles=3, max_level=4)
    assert report.passed, report.violations[:3]
    # labels of levels 0..4 with parts at most 1, 2 and 3
    expected = (5 + 9 + 11) * (2 if alpha == 0 else 1)
    assert report.checked == expected


def test_hermite_suite():
    logger.debug('test_hermite_suite')
    assert hermite_suite(n_max=6, max_particles=2).passed


def test_laguerre_suite():
    logger.debug('test_laguerre_suite')
    report = laguerre_suite()
    assert report.passed
    # four values of lambda_1, levels 0 through 8
    assert report.checked == 36


@pytest.mark.timeout(300)
def test_fd_suite():
    logger.debug('test_fd_suite')
    report = fd_suite(particles=(1, 2), couplings=(Fraction(1),), n_max=2,
                      count=5)
    assert report.passed, report.violations[:3]
    entry = report.details['eigenfunctions'][0]
    assert entry['points_tested'] == 5
    assert set(entry) == {'params', 'label', 'energy', 'max_fd_residual',
                          'points_tested'}


def test_fd_suite_perturbed():
    logger.debug('test_fd_suite_perturbed')
    report = fd_suite(particles=(1,), couplings=(Fraction(1),), n_max=1,
                      count=3, perturb_energy=1)
    assert not report.passed


@pytest.mark.timeout(600)
def test_fd_suite_default_grid():
    logger.debug('test_fd_suite_default_grid')
    report = fd_suite()
    assert report.passed, report.violations[:3]
    entries = report.details['eigenfunctions']
    assert {entry['params']['N'] for entry in entries} == {2, 3}
    assert {entry['params']['lambda'] for entry in entries} == {'1', '2'}
    assert all(entry['points_tested'] == 20 for entry in entries)


@pytest.mark.timeout(600)
@pytest.mark.parametrize('particles,couplings,n_max', [
    ((3,), (Fraction(2),), 3),
    ((2,), (Fraction(2), Fraction(3, 2)), 3),
    ((1,), (Fraction(1, 2), Fraction(2)), 4),
    ])
def test_fd_suite_grids(particles, couplings, n_max):
    logger.debug('test_fd_suite_grids')
    report = fd_suite(particles=particles, couplings=couplings, n_max=n_max,
                      count=8, seed=42)
    assert report.passed, report.violations[:3]
