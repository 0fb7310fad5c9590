"""
Command-line front end, installed as the ``csmexact`` console script.

Exit codes: 0 when everything passed, 1 when a verification failed and 2 for
usage errors (bad flags, non-rational couplings, labels outside the model).
"""
import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .config import FORMATS, build_config
from .errors import CsmError
from .operators import GradedOperator, apply_transformed_H_cs, exp_graded
from .spectrum import (SPECTRUM_NOTE, build_eigenfunction, constants_spectrum,
                       degeneracy, fock_orthogonality_check, level_basis,
                       level_labels, oscillator_energy, su11_fock_check)
from .symfun import Partition, SymPoly, VariableTag, power_sum_product
from .utils import SCHEMA_VERSION, format_rational
from .verify import (bridge_suite, commutator_suite, coupling_grid, cs_image,
                     fd_suite, gram_suite, hermite_suite, laguerre_suite,
                     symbolic_suite)

logger = logging.getLogger(__name__)

LOG_FORMAT = ('%(asctime)s.%(msecs)03d '
              '%(module)-13s '
              '%(levelname)-8s '
              '%(threadName)-10s '
              '%(message)s')
EVEN_SECTOR_NOTE = ('B_N eigenstates map into the even sector of the A_N '
                    'model.')


def _partition_arg(text):
    try:
        return tuple(int(part) for part in text.replace(',', ' ').split())
    except ValueError:
        raise argparse.ArgumentTypeError(
            f'{text!r} is not a comma-separated list of integers')


def _command(sub, name, **kwargs):
    return sub.add_parser(name, argument_default=argparse.SUPPRESS, **kwargs)


def build_parser():
    parser = argparse.ArgumentParser(
        prog='csmexact',
        description='Exact eigenfunctions, spectra and checks for the B_N '
                    'Calogero-Sutherland-Moser model.')
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {__version__}')
    common = argparse.ArgumentParser(add_help=False,
                                     argument_default=argparse.SUPPRESS)
    model = common.add_argument_group('model')
    model.add_argument('--n-particles', '-N', type=int,
                       help='Number of particles (default 2)')
    model.add_argument('--lambda', dest='lambda',
                       help='Pair exponent, integer or p/q (default 1)')
    model.add_argument('--lambda1', dest='lambda1',
                       help='One-body exponent, integer or p/q (default 1)')
    model.add_argument('--alpha',
                       help='A_N pair exponent for cs-map (default 1)')
    run = common.add_argument_group('run')
    run.add_argument('--config', help='YAML file of flag: value settings')
    run.add_argument('--output', '-o', help='Write to a file, not stdout')
    run.add_argument('--format', dest='format', choices=FORMATS)
    run.add_argument('--threads', type=int)
    run.add_argument('--log-level',
                     choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'))

    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True
    solve = _command(
        sub, 'solve', parents=[common],
        help='Eigenfunctions of one level')
    solve.add_argument('--level', type=int)
    solve.add_argument('--partition', type=_partition_arg,
                       help='Only the eigenfunction with this label')

    spectrum = _command(
        sub, 'spectrum', parents=[common],
        help='Energies and degeneracies')
    spectrum.add_argument('--n-max', type=int)
    spectrum.add_argument('--partition', type=_partition_arg,
                          help='Also report the conserved-quantity '
                               'spectrum of this occupation label')

    verify = _command(
        sub, 'verify', parents=[common],
        help='Run the verification suites')
    verify.add_argument('--n-max', type=int)
    verify.add_argument('--max-particles', type=int)
    verify.add_argument('--seed', type=int)
    verify.add_argument('--h', type=float, help='Finite-difference step')
    verify.add_argument('--nodes', type=int,
                        help='Quadrature nodes per dimension')
    verify.add_argument('--perturb-energy',
                        help='Shift tested energies (negative control)')
    verify.add_argument('--skip-numeric', action='store_true',
                        help='Symbolic suites only')

    cs_map = _command(
        sub, 'cs-map', parents=[common],
        help='Map a level to the A_N model')
    cs_map.add_argument('--level', type=int)
    cs_map.add_argument('--partition', type=_partition_arg,
                        help='Seed m_partition in plain coordinates; parts '
                             'must be even')

    fock = _command(
        sub, 'fock-check', parents=[common],
        help='SU(1,1) and orthogonality checks on the Fock model')
    fock.add_argument('--cutoff', type=int)
    fock.add_argument('--n-max', type=int)
    fock.add_argument('--tamper-kplus',
                      help='Scale K+ by this factor (negative control)')
    return parser


def configure_logging(level):
    level = level.upper()
    logging.basicConfig(level=getattr(logging, level),
                        format=LOG_FORMAT, datefmt='%H:%M:%S',
                        stream=sys.stderr)
    logging.getLogger().setLevel(getattr(logging, level))


def _dump_json(payload):
    return json.dumps(payload, indent=2) + '\n'


def _dump_csv(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _dump_pretty(header, rows):
    rows = [[str(value) for value in row] for row in rows]
    widths = [max(len(str(col)), *(len(row[i]) for row in rows))
              for i, col in enumerate(header)]
    lines = ['  '.join(str(col).ljust(w) for col, w in zip(header, widths))]
    lines.append('  '.join('-' * w for w in widths))
    lines.extend('  '.join(value.ljust(w) for value, w in zip(row, widths))
                 for row in rows)
    return '\n'.join(line.rstrip() for line in lines) + '\n'


def _table(cfg, header, rows, payload):
    if cfg.fmt == 'csv':
        return _dump_csv(header, rows)
    if cfg.fmt == 'pretty':
        return _dump_pretty(header, rows)
    return _dump_json(payload)


def _record(data):
    return {'schema_version': SCHEMA_VERSION, **data}


def cmd_solve(cfg):
    """
    Eigenfunctions of one level, or of a single label.
    """
    params = cfg.model_params()
    if cfg.partition is not None:
        label = Partition(cfg.partition)
        if cfg.level is not None and cfg.level != label.weight:
            raise ValueError(f'Partition {list(label)} has weight '
                             f'{label.weight}, not level {cfg.level}')
        efs = [build_eigenfunction(params, label)]
    else:
        level = 1 if cfg.level is None else cfg.level
        efs = level_basis(params, level, threads=cfg.threads)
    logger.info('Built %d eigenfunctions for %s', len(efs), params)
    rows = [[' '.join(map(str, ef.label)), ef.level,
             format_rational(ef.energy), str(ef.poly)] for ef in efs]
    text = _table(cfg, ['label', 'level', 'energy', 'poly'], rows,
                  [_record(ef.to_dict()) for ef in efs])
    return text, 0


def cmd_spectrum(cfg):
    """
    Energies 2 n + E_0 and degeneracies for n = 0 .. n_max.
    """
    params = cfg.model_params()
    levels = [{'n': n,
               'energy': format_rational(2 * n + params.e0),
               'degeneracy': degeneracy(params, n)}
              for n in range(cfg.n_max + 1)]
    payload = _record({'params': params.to_dict(), 'levels': levels})
    if cfg.partition is not None:
        mu = Partition(cfg.partition)
        payload['constants'] = {
            'mu': list(mu),
            'values': [format_rational(value)
                       for value in constants_spectrum(params, mu)],
            'energy': format_rational(oscillator_energy(params, mu)),
            'note': SPECTRUM_NOTE}
    rows = [[level['n'], level['energy'], level['degeneracy']]
            for level in levels]
    return _table(cfg, ['n', 'energy', 'degeneracy'], rows, payload), 0


def _first_violation(reports):
    for report in reports:
        if report.violations:
            return {'check': report.name, **report.violations[0]}
    return None


def cmd_verify(cfg):
    """
    Run the symbolic suites and, unless skipped, the numerical ones.

    ``--n-max`` bounds the eigen-equation grid and the numerical suites; the
    CS bridge and the Laguerre reduction always run at their full ranges.
    """
    grid = coupling_grid(cfg.max_particles)
    reports = [
        symbolic_suite(grid, n_max=cfg.n_max,
                       perturb_energy=cfg.perturb_energy,
                       threads=cfg.threads),
        commutator_suite(seed=cfg.seed, max_particles=cfg.max_particles),
        bridge_suite(max_particles=cfg.max_particles),
        hermite_suite(max_particles=cfg.max_particles),
        laguerre_suite(),
    ]
    if not cfg.skip_numeric:
        particles = tuple(n for n in (1, 2, 3) if n <= cfg.max_particles)
        numeric_max = min(cfg.n_max, 3)
        reports.append(fd_suite(particles=particles, n_max=numeric_max,
                                seed=cfg.seed, h=cfg.h,
                                perturb_energy=cfg.perturb_energy,
                                threads=cfg.threads))
        gram_options = {}
        if cfg.nodes is not None:
            gram_options['nodes_per_dim'] = cfg.nodes
        reports.append(gram_suite(n_max=numeric_max, **gram_options))
    passed = all(report.passed for report in reports)
    counterexample = _first_violation(reports)
    if counterexample is not None:
        logger.error('Verification failed: %s', counterexample)
    payload = _record({'passed': passed,
                       'seed': cfg.seed,
                       'checks': [report.to_dict() for report in reports],
                       'first_counterexample': counterexample})
    rows = [[report.name, report.checked, len(report.violations),
             'pass' if report.passed else 'FAIL'] for report in reports]
    text = _table(cfg, ['check', 'checked', 'violations', 'status'], rows,
                  payload)
    return text, 0 if passed else 1


def _cs_seeds(cfg):
    n_vars = cfg.n_particles
    if cfg.partition is not None:
        seed = SymPoly.monomial(cfg.partition, n_vars, VariableTag.X)
        if cfg.level is not None and 2 * cfg.level != sum(cfg.partition):
            raise ValueError(f'Seed {list(cfg.partition)} has degree '
                             f'{sum(cfg.partition)}, not 2 * {cfg.level}')
        return [(None, seed)]
    level = 1 if cfg.level is None else cfg.level
    return [(label, power_sum_product(label.multiplicities(), n_vars).to_x())
            for label in level_labels(cfg.model_params(), level)]


def cmd_cs_map(cfg):
    """
    Map level seeds through exp(-A/2) and check the A_N eigen-equation.
    """
    params = cfg.model_params()
    records = []
    passed = True
    for label, seed in _cs_seeds(cfg):
        image = cs_image(params, seed)
        eigenvalue = seed.degree + params.e0_cs
        ok = apply_transformed_H_cs(image, params) == image.scale(eigenvalue)
        record = {'params': params.to_dict(),
                  'label': None if label is None else list(label),
                  'seed': seed.to_dict(),
                  'poly': image.to_dict(),
                  'eigenvalue': format_rational(eigenvalue),
                  'verified': ok,
                  'note': EVEN_SECTOR_NOTE}
        if params.alpha == 0:
            smoothed = exp_graded(GradedOperator.GAUSSIAN_SMOOTHING, seed)
            record['matches_gaussian_smoothing'] = smoothed == image
            ok = ok and record['matches_gaussian_smoothing']
        passed = passed and ok
        records.append(_record(record))
    rows = [[' '.join(map(str, r['label'] or [])), r['eigenvalue'],
             'yes' if r['verified'] else 'NO',
             str(SymPoly.from_dict(r['poly']))] for r in records]
    text = _table(cfg, ['label', 'eigenvalue', 'verified', 'poly'], rows,
                  records)
    return text, 0 if passed else 1


def cmd_fock_check(cfg):
    """
    SU(1,1) relations and label orthogonality in the Fock model.
    """
    reports = [su11_fock_check(cfg.cutoff, n_modes=1,
                               kplus_scale=cfg.tamper_kplus),
               fock_orthogonality_check(cfg.n_max, cfg.n_particles)]
    if cfg.n_particles > 1:
        reports.insert(1, su11_fock_check(cfg.cutoff,
                                          n_modes=cfg.n_particles,
                                          kplus_scale=cfg.tamper_kplus))
    passed = all(report.passed for report in reports)
    payload = _record({'passed': passed,
                       'checks': [report.to_dict() for report in reports],
                       'first_counterexample': _first_violation(reports)})
    rows = [[report.name, report.checked, len(report.violations),
             'pass' if report.passed else 'FAIL'] for report in reports]
    text = _table(cfg, ['check', 'checked', 'violations', 'status'], rows,
                  payload)
    return text, 0 if passed else 1


_COMMANDS = {'solve': cmd_solve,
             'spectrum': cmd_spectrum,
             'verify': cmd_verify,
             'cs-map': cmd_cs_map,
             'fock-check': cmd_fock_check}


def _write(text, output):
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)
        logger.info('Wrote %s', output)


def main(argv=None):
    """
    Run one ``csmexact`` command and return its exit code.
    """
    parser = build_parser()
    try:
        args = vars(parser.parse_args(argv))
    except SystemExit as exc:
        return exc.code
    command = args.pop('command')
    config_file = args.pop('config', None)
    try:
        cfg = build_config(command, args, config_file)
    except (ValueError, TypeError, OSError) as exc:
        print(f'csmexact {command}: {exc}', file=sys.stderr)
        return 2
    configure_logging(cfg.log_level)
    try:
        if cfg.model_params().non_normalizable_risk:
            logger.warning('lambda=%s, lambda1=%s: non-normalizable-risk: '
                           'unverified', format_rational(cfg.lam),
                           format_rational(cfg.lam1))
        text, code = _COMMANDS[command](cfg)
    except (CsmError, ValueError) as exc:
        logger.debug('', exc_info=True)
        print(f'csmexact {command}: {exc}', file=sys.stderr)
        return 1 if isinstance(exc, CsmError) and not isinstance(
            exc, ValueError) else 2
    _write(text, cfg.output)
    return code


def console_main():
    sys.exit(main())


if __name__ == '__main__':
    console_main()
