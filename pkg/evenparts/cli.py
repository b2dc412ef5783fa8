"""
Command-line interface for evenparts.

Usage:
    evenparts table --k 12 --ell 5 --n-max 30 --format csv
    evenparts poly --k 2 --n 4
    evenparts closedform --k 12 --target avoid
    evenparts verify --k-max 6 --n-max 18 --ell-max 4
    evenparts value --k 12 --n 30 --stat c
    evenparts recurrence --k 1 --target avoid --reduced
"""
import csv
import io
import json
import logging
import sys

import click
import numpy as np

from evenparts import __version__, config
from evenparts.exceptions import (
    ConvergenceError, DecompositionError, EvenPartsError, NonSimpleRootError
)
from evenparts.model.genfun import (
    allowed_parts_gf, build_F, first_at_gf, late_gf, make_threshold,
    reduced_pair, specialize_y, total_gf
)
from evenparts.model.numeric_engine import NumericEngine
from evenparts.model.oracle import OracleEngine
from evenparts.model.stats import (
    ExactEngine, build_table, count_by_t, count_exactly
)
from evenparts.model.verification import verify
from evenparts.util.partial_fraction import (
    double_pole_constants, multi_pole_coeff, recover_shape_constants,
    simple_pole_coeff, simple_pole_weights
)
from evenparts.util.polycore import (
    RationalGF, YPolynomial, recurrence_of, series_coeffs
)
from evenparts.util.roots import find_roots

log = logging.getLogger(__name__)

ENGINES = {engine.name: engine
           for engine in (ExactEngine, NumericEngine, OracleEngine)}

CSV_HEADER = ('n', 'a_t', 'c', 'E', 'O', 'T', 'L', 'F', 'late_exists',
              'avg_num', 'avg_den')

STATS = ('a', 'c', 'E', 'O', 'T', 'avg', 'L', 'F', 'late_exists')

TARGETS = ('avoid', 'parity', 'total', 'late', 'first')


def _text(value):
    return None if value is None else str(value)


def row_record(row):
    """ A :class:`StatRow` as a dict of decimal strings, None where absent """
    return {
        'n': str(row.n),
        'a_t': None if row.counts is None else [str(a) for a in row.counts],
        'c': _text(row.c),
        'E': _text(row.E),
        'O': _text(row.O),
        'T': _text(row.T),
        'L': _text(row.L),
        'F': _text(row.F),
        'late_exists': _text(row.late_exists),
        'avg_num': None if row.avg is None else str(row.avg.numerator),
        'avg_den': None if row.avg is None else str(row.avg.denominator),
    }


def render_csv(table):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    for row in table:
        record = row_record(row)
        record['a_t'] = ';'.join(record['a_t'] or ())
        writer.writerow(['' if record[key] is None else record[key]
                         for key in CSV_HEADER])
    return buffer.getvalue()


def render_json(table, engine):
    meta = {'k': table.k, 'ell': table.ell, 'engine': engine,
            'version': __version__}
    return json.dumps({'meta': meta,
                       'rows': [row_record(row) for row in table]}, indent=2)


def render_text(table, engine):
    lines = [f'k={table.k} ell={table.ell} engine={engine}']
    header = ('n', 'c', 'E', 'O', 'T', 'L', 'F', 'late_exists', 'avg')
    records = []
    for row in table:
        record = row_record(row)
        avg = '' if row.avg is None else str(row.avg)
        records.append([record['n'], record['c'], record['E'] or '-',
                        record['O'] or '-', record['T'], record['L'],
                        record['F'], record['late_exists'], avg or '-'])
    widths = [max([len(name)] + [len(r[i]) for r in records])
              for i, name in enumerate(header)]
    lines.append('  '.join(name.rjust(w) for name, w in zip(header, widths)))
    for record in records:
        lines.append('  '.join(value.rjust(w)
                               for value, w in zip(record, widths)))
    return '\n'.join(lines)


class NumericFailure(click.ClickException):
    """ A numeric evaluation failed for valid arguments """
    exit_code = 3

    def format_message(self):
        return f'numeric evaluation failed: {self.message}'


def _fail(err):
    if isinstance(err, (ConvergenceError, DecompositionError)):
        raise NumericFailure(str(err))
    raise click.UsageError(str(err))


@click.group()
@click.version_option(version=__version__, prog_name='evenparts')
@click.option('-v', '--verbose', count=True,
              help='Log progress to stderr, repeat for debug output')
def cli(verbose):
    """
    Statistics of large even parts in integer compositions.

    A part is large even when it is even and larger than the threshold k.
    """
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def k_option(func):
    return click.option('--k', 'k', type=click.IntRange(min=1),
                        required=True, help='Threshold k')(func)


def ell_option(func):
    return click.option('--ell', type=click.IntRange(min=0,
                                                     max=config.ELL_CAP),
                        default=0, show_default=True,
                        help='Number of leading parts')(func)


@cli.command()
@k_option
@ell_option
@click.option('--n-max', type=click.IntRange(min=0), required=True,
              help='Last row')
@click.option('--format', 'fmt', type=click.Choice(['text', 'csv', 'json']),
              default='text', show_default=True)
@click.option('--engine', type=click.Choice(sorted(ENGINES)),
              default='exact', show_default=True)
@click.option('--oracle-cap', type=click.IntRange(min=0),
              default=config.ORACLE_CAP, show_default=True,
              help='Largest n the oracle engine enumerates')
@click.option('--workers', type=click.IntRange(min=1), default=1,
              help='Processes for the oracle engine')
def table(k, ell, n_max, fmt, engine, oracle_cap, workers):
    """ Print one row of statistics per n = 0..n-max. """
    try:
        if engine == 'oracle':
            built = OracleEngine(k, ell, oracle_cap=oracle_cap,
                                 workers=workers).table(n_max)
        else:
            built = ENGINES[engine](k, ell).table(n_max)
    except EvenPartsError as err:
        _fail(err)
    if fmt == 'csv':
        click.echo(render_csv(built), nl=False)
    elif fmt == 'json':
        click.echo(render_json(built, engine))
    else:
        click.echo(render_text(built, engine))


@cli.command()
@k_option
@click.option('--n', 'n', type=click.IntRange(min=0), required=True)
def poly(k, n):
    """ Print f_n(y), y marking large even parts. """
    click.echo(str(YPolynomial(count_by_t(k, n))))


@cli.command()
@k_option
@ell_option
@click.option('--n', 'n', type=click.IntRange(min=0), required=True)
@click.option('--stat', type=click.Choice(STATS), required=True)
@click.option('--t', 'tcount', type=click.IntRange(min=0), default=None,
              help='Number of large even parts for --stat a')
def value(k, ell, n, stat, tcount):
    """ Print a single statistic from the exact engine. """
    if stat == 'a':
        if tcount is None:
            click.echo(' '.join(str(a) for a in count_by_t(k, n)))
        else:
            click.echo(str(count_exactly(k, tcount, n)))
        return
    row = build_table(k, ell, n).rows[n]
    result = getattr(row, stat)
    if result is None:
        _fail(f'{stat} is undefined for n={n}')
    click.echo(str(result))


def _format_recurrence(lags, valid_from):
    terms = []
    for j, coeff in lags:
        term = f'a(n-{j})'
        magnitude = abs(coeff)
        if magnitude != 1:
            term = f'{magnitude}*{term}'
        if not terms:
            terms.append(term if coeff > 0 else f'-{term}')
        else:
            terms.append(f'+ {term}' if coeff > 0 else f'- {term}')
    body = ' '.join(terms) if terms else '0'
    return f'a(n) = {body}\nvalid for n >= {valid_from}'


def _target_gf(t, target, ell):
    if target in ('avoid', 'parity'):
        return specialize_y(build_F(t), 0 if target == 'avoid' else -1)
    if target == 'total':
        return total_gf(t)
    if target == 'late':
        return late_gf(t, ell)
    if target == 'first':
        return first_at_gf(t, ell)
    return allowed_parts_gf(t, ell)


@cli.command()
@k_option
@ell_option
@click.option('--target', type=click.Choice(TARGETS + ('allowed',)),
              required=True)
@click.option('--reduced', is_flag=True,
              help='Use the cancelled denominator for avoid and parity')
def recurrence(k, ell, target, reduced):
    """ Print the linear recurrence given by a denominator. """
    t = make_threshold(k)
    if reduced:
        if target not in ('avoid', 'parity'):
            _fail('--reduced applies to the avoid and parity targets only')
        P, R = reduced_pair(t, 0 if target == 'avoid' else -1)
        g = RationalGF(P, R)
    else:
        g = _target_gf(t, target, ell)
    click.echo(f'denominator: {g.den}')
    click.echo(_format_recurrence(*recurrence_of(g)))


def _complex_text(z):
    z = complex(z)
    if abs(z.imag) < 1e-14 * max(1.0, abs(z.real)):
        return f'{z.real:.12g}'
    return f'{z.real:.12g}{z.imag:+.12g}j'


def _pair(z):
    return [float(np.real(z)), float(np.imag(z))]


def _closedform_report(t, target, ell, spot_checks):
    report = {'k': t.k, 'target': target, 'spot_checks': []}
    if target in ('late', 'first'):
        report['ell'] = ell
    g = _target_gf(t, target, ell)
    exact = series_coeffs(g, max(spot_checks))

    if target in ('avoid', 'parity'):
        P, R = reduced_pair(t, 0 if target == 'avoid' else -1)
        roots = find_roots(R)
        report['denominator'] = str(R)
        report['poles'] = [{'pole': _pair(root), 'order': mult}
                           for root, mult in roots]
        try:
            weights = simple_pole_weights(P, R, roots)
            report['weights'] = [_pair(w) for _, w in weights]
            numeric = [simple_pole_coeff(P, R, roots, n) for n in spot_checks]
        except NonSimpleRootError as err:
            log.warning('%s; falling back to the full pole decomposition',
                        err)
            decomposition = recover_shape_constants(g)
            numeric = [multi_pole_coeff(g, n, decomposition)
                       for n in spot_checks]
    else:
        decomposition = recover_shape_constants(g)
        report['denominator'] = str(g.den)
        report['poles'] = [
            {'pole': _pair(pole), 'order': order,
             'weights': [_pair(w)
                         for w in decomposition.binomial_weights(pole)]}
            for pole, order in decomposition.poles]
        report['poly_degree'] = len(decomposition.poly) - 1
        if target == 'total':
            A, B, C = double_pole_constants(decomposition)
            report['constants'] = {'A': A, 'B': B, 'C': C}
        numeric = [decomposition.coefficient(n) for n in spot_checks]

    for n, value in zip(spot_checks, numeric):
        scale = max(abs(exact[n]), 1)
        report['spot_checks'].append({
            'n': n, 'exact': str(exact[n]), 'numeric': value.real,
            'rel_error': abs(value.real - exact[n]) / scale})
    return report


def _render_closedform(report):
    lines = [f"k={report['k']} target={report['target']}"
             + (f" ell={report['ell']}" if 'ell' in report else ''),
             f"denominator: {report['denominator']}",
             f"poles: {len(report['poles'])}"]
    for entry in report['poles']:
        pole = complex(*entry['pole'])
        line = (f'  {_complex_text(pole):>28}  |pole|={abs(pole):.12g}  '
                f"order={entry['order']}")
        if 'weights' in entry:
            line += '  weights=' + ', '.join(
                _complex_text(complex(*w)) for w in entry['weights'])
        lines.append(line)
    if 'weights' in report:
        lines.append('simple pole weights: ' + ', '.join(
            _complex_text(complex(*w)) for w in report['weights']))
    if 'poly_degree' in report:
        lines.append(f"polynomial part degree: {report['poly_degree']}")
    if 'constants' in report:
        constants = report['constants']
        lines.append(
            'T(n) = (A n + B) 2^n + C (-1)^n with '
            f"A={constants['A']:.12g} B={constants['B']:.12g} "
            f"C={constants['C']:.12g}")
    lines.append('spot check:')
    for check in report['spot_checks']:
        lines.append(f"  n={check['n']:>4}  exact={check['exact']}  "
                     f"numeric={check['numeric']:.12g}  "
                     f"rel_error={check['rel_error']:.2e}")
    return '\n'.join(lines)


@cli.command()
@k_option
@ell_option
@click.option('--target', type=click.Choice(TARGETS), required=True)
@click.option('--format', 'fmt', type=click.Choice(['text', 'json']),
              default='text', show_default=True)
def closedform(k, ell, target, fmt):
    """ Print the poles and constants of a closed form with a spot check. """
    try:
        report = _closedform_report(make_threshold(k), target, ell,
                                    config.DEFAULT_SPOT_CHECKS)
    except EvenPartsError as err:
        _fail(err)
    if fmt == 'json':
        click.echo(json.dumps(report, indent=2))
    else:
        click.echo(_render_closedform(report))


@cli.command(name='verify')
@click.option('--k-max', type=click.IntRange(min=1), required=True)
@click.option('--n-max', type=click.IntRange(min=0), required=True)
@click.option('--ell-max', type=click.IntRange(min=0, max=config.ELL_CAP),
              default=0, show_default=True)
@click.option('--oracle-cap', type=click.IntRange(min=0),
              default=config.ORACLE_CAP, show_default=True)
@click.option('--workers', type=click.IntRange(min=1), default=1)
@click.option('--no-numeric', is_flag=True,
              help='Skip the numeric engine comparison')
def verify_command(k_max, n_max, ell_max, oracle_cap, workers, no_numeric):
    """ Compare the exact engine with enumeration and the numeric engine. """
    try:
        result = verify(k_max, n_max, ell_max, oracle_cap=oracle_cap,
                        workers=workers, numeric=not no_numeric)
    except EvenPartsError as err:
        _fail(err)
    header = 'k\\ell ' + ' '.join(f'{ell:>4}' for ell in range(ell_max + 1))
    click.echo(header)
    for k in range(1, k_max + 1):
        marks = ' '.join(
            f"{'ok' if result.matrix[(k, ell)] else 'FAIL':>4}"
            for ell in range(ell_max + 1))
        click.echo(f'{k:>6} {marks}')
    if not result.ok:
        click.echo(str(result.first), err=True)
        sys.exit(1)
