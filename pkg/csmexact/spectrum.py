"""
Eigenbasis, degeneracies and conserved-quantity spectra of the B_N model.

Level-n eigenfunctions are labelled by partitions of n with parts at most N.
The label fixes the power-sum seed prod_l P_l**n_l, where n_l is the number
of parts equal to l; the polynomial part of the eigenfunction is
exp(F/2) applied to that seed.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import sympy

from .doc_stubs import params_arg, report_returns
from .errors import ContractError, DomainError, InternalConsistencyError
from .operators import (GradedOperator, ModelParams, apply_transformed_H,
                        exp_graded)
from .symfun import (Partition, SymPoly, VariableTag, canonical_order,
                     partitions_of, power_sum_product)
from .utils import CheckReport, format_rational, ordered_map

logger = logging.getLogger(__name__)

DEFAULT_CUTOFF = 12
SPECTRUM_NOTE = ('Constants-of-motion spectra are reported for occupation '
                 'labels mu (states S m_mu); the power-sum eigenbasis '
                 'diagonalizes H only, not each I_k.')


def label_to_exponents(label):
    """
    Exponent map {l: n_l} of a level label, n_l the multiplicity of part l.
    """
    return Partition(label).multiplicities()


def exponents_to_label(exponents):
    """
    Level label with n_l parts equal to l.
    """
    parts = []
    for l in sorted(exponents, reverse=True):
        if exponents[l] < 0:
            raise DomainError(f'Negative exponent {exponents[l]} for P_{l}')
        parts.extend([l] * exponents[l])
    return Partition(parts)


def _as_label(label):
    if isinstance(label, dict):
        return exponents_to_label(label)
    return Partition(label)


@dataclass(frozen=True)
class Eigenfunction:
    """
    One eigenfunction psi_0 * poly of the B_N Hamiltonian.

    Attributes
    ----------
    params: ``ModelParams``

    level: ``int``
        Level n, the weight of ``label``.

    label: ``Partition``
        Power-sum label with parts at most N.

    poly: ``SymPoly``
        Polynomial part in the squared coordinates.

    energy: ``Fraction``
        2 n + E_0.
    """
    params: ModelParams
    level: int
    label: Partition
    poly: SymPoly
    energy: Fraction

    @property
    def exponents(self):
        return label_to_exponents(self.label)

    def check(self, energy_shift=0):
        """
        ``True`` if the transformed Hamiltonian maps ``poly`` to
        ``(energy + energy_shift) * poly`` exactly.
        """
        image = apply_transformed_H(self.poly, self.params)
        return image == self.poly.scale(self.energy + energy_shift)

    def to_dict(self):
        return {'params': self.params.to_dict(),
                'level': self.level,
                'label': list(self.label),
                'energy': format_rational(self.energy),
                'poly': self.poly.to_dict()}


def build_eigenfunction(params, label, verify=True):
    """
    Eigenfunction seeded by the power-sum product of ``label``.

    Parameters
    ----------%s
    label: ``Partition``, sequence of ``int`` or ``dict``
        Partition with parts at most N, or the exponent map {l: n_l}.

    verify: ``bool``, optional
        Check the eigen-equation and the leading component on construction.
        Both follow from F lowering the degree, so they catch slips in the
        series but not a wrong coefficient inside F; `csmexact.verify`
        compares against the physical Hamiltonian.

    Returns
    -------
    eigenfunction: ``Eigenfunction``
    """
    label = _as_label(label)
    n_vars = params.n_particles
    if label and label[0] > n_vars:
        raise DomainError(f'Label {list(label)} has a part larger than '
                          f'N={n_vars}')
    seed = power_sum_product(label_to_exponents(label), n_vars, VariableTag.Y)
    poly = exp_graded(GradedOperator.HALF_F, seed, params)
    ef = Eigenfunction(params, label.weight, label, poly,
                       2 * label.weight + params.e0)
    if verify:
        if poly.top_component() != seed:
            raise InternalConsistencyError(
                f'exp(F/2) changed the leading part of the seed {label!r}')
        if not ef.check():
            raise InternalConsistencyError(
                f'Eigenfunction {label!r} fails H p = {ef.energy} p for '
                f'{params}')
    logger.debug('built eigenfunction %s: E=%s, %d terms', list(label),
                 ef.energy, len(poly))
    return ef


build_eigenfunction.__doc__ = build_eigenfunction.__doc__ % params_arg


def level_labels(params, n):
    """
    Labels of level ``n``: partitions of n with parts at most N.
    """
    return partitions_of(n, params.n_particles, max(n, 1))


def level_basis(params, n, threads=1, verify=True):
    """
    One eigenfunction per label of level ``n``, in reverse-lexicographic
    label order; all share the energy 2 n + E_0.
    """
    labels = level_labels(params, n)
    return ordered_map(lambda label: build_eigenfunction(params, label,
                                                         verify=verify),
                       labels, threads=threads)


def degeneracy(params, n):
    """
    Number of independent eigenfunctions at level ``n``.
    """
    return len(level_labels(params, n))


def rank_check(basis):
    """
    Rank over the rationals of the coefficient matrix of a level basis.

    Parameters
    ----------
    basis: ``list of Eigenfunction``
        Members must share the model parameters and the level.

    Returns
    -------
    rank: ``int``
    """
    basis = list(basis)
    if not basis:
        return 0
    first = basis[0]
    for ef in basis[1:]:
        if ef.params != first.params or ef.level != first.level:
            raise ContractError('rank_check needs eigenfunctions of one '
                                'level and one set of parameters')
    columns = canonical_order({part for ef in basis for part in ef.poly.terms})
    rows = [[sympy.Rational(c.numerator, c.denominator)
             for c in (ef.poly.coefficient(part) for part in columns)]
            for ef in basis]
    if not columns:
        return 0
    return sympy.Matrix(rows).rank()


def constants_spectrum(params, mu):
    """
    Eigenvalues of the conserved quantities I_1 .. I_N on the state S m_mu.

    The single-mode Hamiltonians act as H_i = 2 mu_i + 1/2 on that state,
    and I_k is their k-th elementary symmetric polynomial.

    Parameters
    ----------%s
    mu: ``Partition`` or sequence of ``int``
        Occupation label with at most N parts.

    Returns
    -------
    spectrum: ``list of Fraction``
        [e_1, ..., e_N].
    """
    mu = Partition(mu)
    n_vars = params.n_particles
    if mu.length > n_vars:
        raise DomainError(f'{mu!r} has more than N={n_vars} parts')
    coeffs = [Fraction(1)]
    for value in mode_energies(params, mu):
        coeffs = [low + value * high
                  for low, high in zip(coeffs + [0], [0] + coeffs)]
    return coeffs[1:]


constants_spectrum.__doc__ = constants_spectrum.__doc__ % params_arg


def mode_energies(params, mu):
    """
    Single-mode energies 2 mu_i + 1/2 of the occupation label, padded to N.
    """
    return [2 * part + Fraction(1, 2)
            for part in Partition(mu).padded(params.n_particles)]


def oscillator_energy(params, mu):
    """
    Energy of the occupation label in the decoupled picture,
    sum_i H_i + (E_0 - N/2).
    """
    return (sum(mode_energies(params, mu)) + params.e0
            - Fraction(params.n_particles, 2))


class FockState:
    """
    Finite combination of multi-mode occupation states.

    The basis is the unnormalized |n) = (a+)**n |0>, in which every matrix
    element of a+, a-, K+- and H is rational: a+|n) = |n+1), a-|n) = n|n-1).

    Parameters
    ----------
    amplitudes: ``dict``
        Mapping from occupation tuples to rationals.
    """
    __slots__ = ('_amplitudes',)

    def __init__(self, amplitudes=None):
        cleaned = {}
        for occupations, value in (amplitudes or {}).items():
            occupations = tuple(int(n) for n in occupations)
            if any(n < 0 for n in occupations):
                raise DomainError(f'Negative occupation in {occupations}')
            value = Fraction(value)
            if value:
                cleaned[occupations] = cleaned.get(occupations, 0) + value
        self._amplitudes = {key: value for key, value
                            in sorted(cleaned.items()) if value}

    @classmethod
    def basis(cls, *occupations):
        return cls({tuple(occupations): 1})

    @property
    def amplitudes(self):
        return dict(self._amplitudes)

    @property
    def is_even_sector(self):
        return all(n % 2 == 0 for key in self._amplitudes for n in key)

    def __bool__(self):
        return bool(self._amplitudes)

    def __eq__(self, other):
        if not isinstance(other, FockState):
            return NotImplemented
        return self._amplitudes == other._amplitudes

    def __add__(self, other):
        merged = dict(self._amplitudes)
        for key, value in other._amplitudes.items():
            merged[key] = merged.get(key, 0) + value
        return FockState(merged)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor):
        return FockState({key: factor * value
                          for key, value in self._amplitudes.items()})

    def inner(self, other):
        """
        <self|other> with <m|n> = delta_mn n! per mode.
        """
        total = Fraction(0)
        for key, value in self._amplitudes.items():
            if key in other._amplitudes:
                norm = 1
                for n in key:
                    norm *= math.factorial(n)
                total += value * other._amplitudes[key] * norm
        return total

    def to_dict(self):
        return {','.join(str(n) for n in key): format_rational(value)
                for key, value in self._amplitudes.items()}

    def __repr__(self):
        return f'FockState({self.to_dict()})'


class FockModel:
    """
    Truncated multi-mode oscillator space with the SU(1,1) generators.

    Parameters
    ----------
    cutoff: ``int``
        Largest occupation kept per mode; raising beyond it is dropped.

    n_modes: ``int``, optional

    kplus_scale: ``Fraction``, optional
        Extra factor on K+. Anything but one breaks the algebra and is only
        meant for negative controls.
    """
    def __init__(self, cutoff=DEFAULT_CUTOFF, n_modes=1, kplus_scale=1):
        if cutoff < 6 or cutoff % 2:
            raise DomainError(f'cutoff must be an even integer >= 6, got '
                              f'{cutoff}')
        if n_modes < 1:
            raise DomainError(f'n_modes must be positive, got {n_modes}')
        self.cutoff = cutoff
        self.n_modes = n_modes
        self.kplus_scale = Fraction(kplus_scale)

    def a_plus(self, state, mode):
        out = {}
        for key, value in state.amplitudes.items():
            if key[mode] < self.cutoff:
                out[key[:mode] + (key[mode] + 1,) + key[mode + 1:]] = value
        return FockState(out)

    def a_minus(self, state, mode):
        out = {}
        for key, value in state.amplitudes.items():
            if key[mode]:
                out[key[:mode] + (key[mode] - 1,) + key[mode + 1:]] = (
                    key[mode] * value)
        return FockState(out)

    def k_plus(self, state, mode):
        raised = self.a_plus(self.a_plus(state, mode), mode)
        return raised.scale(self.kplus_scale / 2)

    def k_minus(self, state, mode):
        return self.a_minus(self.a_minus(state, mode), mode).scale(
            Fraction(1, 2))

    def h(self, state, mode):
        return (self.a_plus(self.a_minus(state, mode), mode)
                + state.scale(Fraction(1, 2)))

    def basis_states(self, max_occupation, even_only=False):
        step = 2 if even_only else 1
        for key in product(range(0, max_occupation + 1, step),
                           repeat=self.n_modes):
            yield FockState.basis(*key)


def _commutator(first, second, state):
    return first(second(state)) - second(first(state))


def su11_fock_check(cutoff=DEFAULT_CUTOFF, n_modes=1, kplus_scale=1):
    """
    Check the SU(1,1) relations of every mode on a truncated Fock space.

    Verifies [K_i-, K_j+] = delta_ij H_i and [H_i, K_j+-] = +-2 delta_ij
    K_j+- on all basis states with occupations at most ``cutoff - 4``, so
    that no image leaves the truncated space, and that K+- keep even
    occupations even.

    Parameters
    ----------
    cutoff: ``int``, optional
        Even, at least 6.

    n_modes: ``int``, optional

    kplus_scale: ``Fraction``, optional
        Tampering factor on K+ for negative controls.
    %s"""
    model = FockModel(cutoff, n_modes, kplus_scale)
    report = CheckReport('su11-fock',
                         details={'cutoff': cutoff, 'n_modes': n_modes})
    modes = range(n_modes)
    for state in model.basis_states(cutoff - 4):
        occupations = next(iter(state.amplitudes))
        for i, j in product(modes, modes):
            kp = lambda s, m=j: model.k_plus(s, m)  # noqa: E731
            km = lambda s, m=j: model.k_minus(s, m)  # noqa: E731
            hi = lambda s, m=i: model.h(s, m)  # noqa: E731
            delta = 1 if i == j else 0
            relations = (
                ('[K-,K+] = H',
                 _commutator(lambda s: model.k_minus(s, i), kp, state),
                 model.h(state, i).scale(delta)),
                ('[H,K+] = 2K+', _commutator(hi, kp, state),
                 model.k_plus(state, j).scale(2 * delta)),
                ('[H,K-] = -2K-', _commutator(hi, km, state),
                 model.k_minus(state, j).scale(-2 * delta)),
            )
            for relation, lhs, rhs in relations:
                report.record(lhs == rhs, relation=relation, modes=[i, j],
                              state=list(occupations),
                              residual=(lhs - rhs).to_dict())
    for state in model.basis_states(cutoff - 2, even_only=True):
        occupations = next(iter(state.amplitudes))
        for mode in modes:
            for name, image in (('K+', model.k_plus(state, mode)),
                                ('K-', model.k_minus(state, mode))):
                report.record(image.is_even_sector,
                              relation=f'{name} keeps the even sector',
                              modes=[mode], state=list(occupations),
                              residual=image.to_dict())
    logger.info('SU(1,1) check at cutoff %d: %d relations, %d violations',
                cutoff, report.checked, len(report.violations))
    return report


su11_fock_check.__doc__ = su11_fock_check.__doc__ % report_returns


def occupation_ket(mu, n_modes):
    """
    Symmetrized ket with one mode at occupation 2 mu_i for each part.
    """
    return FockState({tuple(2 * n for n in vector): 1
                      for vector in Partition(mu).orbit(n_modes)})


def fock_orthogonality_check(n_max, n_particles):
    """
    Check that symmetrized occupation kets with different labels are
    orthogonal, and that every ket has positive norm.

    Labels run over all partitions mu with |mu| <= ``n_max`` and at most
    ``n_particles`` parts.
    %s"""
    labels = []
    for n in range(n_max + 1):
        labels.extend(partitions_of(n, max(n, 1), n_particles))
    kets = [occupation_ket(mu, n_particles) for mu in labels]
    report = CheckReport('fock-orthogonality',
                         details={'n_max': n_max, 'N': n_particles,
                                  'labels': [list(mu) for mu in labels]})
    for (mu, bra), (nu, ket) in product(zip(labels, kets), repeat=2):
        overlap = bra.inner(ket)
        if mu == nu:
            report.record(overlap > 0, relation='<mu|mu> > 0',
                          labels=[list(mu), list(nu)],
                          overlap=format_rational(overlap))
        else:
            report.record(overlap == 0, relation='<mu|nu> = 0',
                          labels=[list(mu), list(nu)],
                          overlap=format_rational(overlap))
    logger.info('Fock orthogonality for N=%d up to level %d: %d overlaps',
                n_particles, n_max, report.checked)
    return report


fock_orthogonality_check.__doc__ = (fock_orthogonality_check.__doc__
                                    % report_returns)
