import logging
from fractions import Fraction

import pytest

from csmexact.errors import ContractError, DomainError
from csmexact.operators import ModelParams
from csmexact.spectrum import (FockModel, FockState, build_eigenfunction,
                               constants_spectrum, degeneracy,
                               exponents_to_label, fock_orthogonality_check,
                               label_to_exponents, level_basis, level_labels,
                               occupation_ket, oscillator_energy, rank_check,
                               su11_fock_check)
from csmexact.symfun import (Partition, SymPoly, VariableTag,
                             power_sum_product)

logger = logging.getLogger(__name__)

Y = VariableTag.Y


def test_label_exponent_bijection():
    logger.debug('test_label_exponent_bijection')
    assert label_to_exponents([3, 1, 1]) == {3: 1, 1: 2}
    assert exponents_to_label({1: 2, 3: 1}) == Partition([3, 1, 1])
    assert exponents_to_label({2: 0}) == Partition()
    with pytest.raises(DomainError):
        exponents_to_label({1: -1})


def test_build_eigenfunction_examples(params_2, params_1):
    logger.debug('test_build_eigenfunction_examples')
    ground = build_eigenfunction(params_2, [])
    assert ground.poly == SymPoly.constant(1, 2)
    assert ground.energy == 5
    ef = build_eigenfunction(params_2, [1])
    assert ef.poly == SymPoly(2, Y, {(1,): 1, (): -5})
    assert ef.energy == 7
    assert ef.level == 1
    single = build_eigenfunction(params_1, [1])
    assert single.poly == SymPoly(1, Y, {(1,): 1, (): '-3/2'})
    # E_0 = lambda_1 + 1/2 for one particle
    assert single.energy == Fraction(7, 2)


def test_build_eigenfunction_accepts_exponent_map(params_2):
    logger.debug('test_build_eigenfunction_accepts_exponent_map')
    by_map = build_eigenfunction(params_2, {1: 2})
    by_label = build_eigenfunction(params_2, [1, 1])
    assert by_map == by_label
    assert by_map.exponents == {1: 2}


def test_build_eigenfunction_rejects_large_parts(params_2):
    logger.debug('test_build_eigenfunction_rejects_large_parts')
    with pytest.raises(DomainError):
        build_eigenfunction(params_2, [3])
    with pytest.raises(DomainError):
        build_eigenfunction(params_2, {3: 1})


@pytest.mark.parametrize('n_vars', [1, 2, 3])
@pytest.mark.parametrize('lam', [0, '1/2', 1, 2])
@pytest.mark.parametrize('lam1', [0, '1/2', '3/2'])
def test_level_bases_solve_the_hamiltonian(n_vars, lam, lam1):
    logger.debug('test_level_bases_solve_the_hamiltonian')
    params = ModelParams(n_vars, lam, lam1)
    for n in range(5):
        basis = level_basis(params, n, verify=False)
        assert len(basis) == degeneracy(params, n)
        for ef in basis:
            assert ef.check()
            assert ef.energy == 2 * n + params.e0
            assert ef.poly.top_component() == power_sum_product(
                ef.exponents, n_vars)
        assert rank_check(basis) == len(basis)


@pytest.mark.timeout(600)
@pytest.mark.parametrize('lam', [1, '3/2'])
@pytest.mark.parametrize('lam1', [1, 2])
def test_four_particle_levels(lam, lam1):
    logger.debug('test_four_particle_levels')
    params = ModelParams(4, lam, lam1)
    for n in range(7):
        basis = level_basis(params, n, verify=False)
        assert len(basis) == degeneracy(params, n)
        assert all(ef.check() for ef in basis)
        assert rank_check(basis) == len(basis)
    # partitions of 6 with at most four parts
    assert degeneracy(params, 6) == 9


def test_level_basis_threads_keep_order(params_2):
    logger.debug('test_level_basis_threads_keep_order')
    serial = level_basis(params_2, 4)
    threaded = level_basis(params_2, 4, threads=4)
    assert [ef.label for ef in serial] == [ef.label for ef in threaded]
    assert serial == threaded


@pytest.mark.parametrize('n_vars,n,count', [
    (3, 6, 7),
    (2, 5, 3),
    (1, 4, 1),
    (2, 0, 1),
    ])
def test_degeneracy(n_vars, n, count):
    logger.debug('test_degeneracy')
    assert degeneracy(ModelParams(n_vars), n) == count


def test_level_labels_order(params_2):
    logger.debug('test_level_labels_order')
    assert level_labels(params_2, 2) == [Partition([2]), Partition([1, 1])]


def test_rank_check(params_2):
    logger.debug('test_rank_check')
    basis = level_basis(params_2, 2)
    assert rank_check(basis) == 2
    assert rank_check(basis[:1]) == 1
    assert rank_check([basis[0], basis[0]]) == 1
    assert rank_check([]) == 0
    with pytest.raises(ContractError):
        rank_check(basis + level_basis(params_2, 1))


def test_constants_spectrum(params_2):
    logger.debug('test_constants_spectrum')
    assert constants_spectrum(params_2, [1]) == [3, Fraction(5, 4)]
    assert constants_spectrum(params_2, []) == [1, Fraction(1, 4)]
    with pytest.raises(DomainError):
        constants_spectrum(params_2, [1, 1, 1])


@pytest.mark.parametrize('mu', [(), (1,), (2, 1), (3, 3)])
def test_constants_match_energy(params_2, mu):
    logger.debug('test_constants_match_energy')
    e1 = constants_spectrum(params_2, mu)[0]
    energy = 2 * Partition(mu).weight + params_2.e0
    assert e1 + params_2.e0 - 1 == energy
    assert oscillator_energy(params_2, mu) == energy


def test_fock_state_algebra():
    logger.debug('test_fock_state_algebra')
    model = FockModel(cutoff=10)
    vacuum = FockState.basis(0)
    two = FockState.basis(2)
    assert not model.k_minus(vacuum, 0)
    assert model.k_minus(two, 0) == vacuum
    assert model.h(two, 0) == two.scale(Fraction(5, 2))
    assert model.k_plus(vacuum, 0) == two.scale(Fraction(1, 2))
    assert two.inner(two) == 2
    assert two.inner(vacuum) == 0
    # raising past the cutoff drops the state
    assert not model.a_plus(FockState.basis(10), 0)


def test_fock_model_rejects_cutoff():
    logger.debug('test_fock_model_rejects_cutoff')
    with pytest.raises(DomainError):
        FockModel(cutoff=7)
    with pytest.raises(DomainError):
        FockModel(cutoff=4)


@pytest.mark.parametrize('cutoff', [6, 10, 12])
def test_su11_fock_check(cutoff):
    logger.debug('test_su11_fock_check')
    report = su11_fock_check(cutoff)
    assert report.passed
    assert report.checked > 0


def test_su11_multimode():
    logger.debug('test_su11_multimode')
    report = su11_fock_check(8, n_modes=2)
    assert report.passed
    assert report.to_dict()['n_modes'] == 2


def test_su11_tampered_fails():
    logger.debug('test_su11_tampered_fails')
    report = su11_fock_check(12, kplus_scale=2)
    assert not report.passed
    assert report.violations[0]['relation'] == '[K-,K+] = H'


def test_occupation_ket():
    logger.debug('test_occupation_ket')
    ket = occupation_ket([2], 2)
    assert ket == FockState({(4, 0): 1, (0, 4): 1})
    assert ket.inner(occupation_ket([1, 1], 2)) == 0


def test_fock_orthogonality_check():
    logger.debug('test_fock_orthogonality_check')
    report = fock_orthogonality_check(3, 2)
    assert report.passed
    assert len(report.details['labels']) == 6
    assert report.checked == 36
