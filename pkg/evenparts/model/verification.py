""" Cross checks of the exact, numeric and brute force engines """
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from evenparts import config
from evenparts.exceptions import EvenPartsError
from evenparts.model.numeric_engine import NumericEngine
from evenparts.model.oracle import aggregate, row_from_report
from evenparts.model.stats import build_table

log = logging.getLogger(__name__)

EXACT_FIELDS = ('counts', 'c', 'E', 'O', 'T', 'L', 'F', 'late_exists', 'avg')
NUMERIC_FIELDS = ('c', 'E', 'O', 'T', 'L', 'F')


@dataclass(frozen=True)
class Mismatch:
    """ One disagreement between two engines """
    k: int
    ell: int
    n: int
    field: str
    expected: object
    actual: object
    source: str

    def __str__(self):
        return (f'{self.source} mismatch at k={self.k}, ell={self.ell}, '
                f'n={self.n}, field {self.field}: expected {self.expected}, '
                f'got {self.actual}')


@dataclass
class VerificationResult:
    """ Outcome of :func:`verify`

    Attributes
    ----------
    mismatches : list of Mismatch
        In the order found, outer loop over ``k``, then ``ell``, then ``n``
    matrix : dict
        ``(k, ell) -> True`` when every check for that pair passed
    """
    mismatches: List[Mismatch] = field(default_factory=list)
    matrix: Dict[Tuple[int, int], bool] = field(default_factory=dict)

    @property
    def ok(self):
        return not self.mismatches

    @property
    def first(self):
        return self.mismatches[0] if self.mismatches else None


def _close(expected, actual, rtol, atol):
    if expected is None or actual is None:
        return expected is actual
    return bool(np.isclose(float(actual), float(expected), rtol=rtol,
                           atol=atol if expected == 0 else 0))


def verify(k_max, n_max, ell_max, **kwargs):
    """ Compare the exact engine with brute force enumeration on every field
    and with the numeric engine on ``c, E, O, T, L, F``

    Parameters
    ----------
    k_max : int
        Thresholds ``1..k_max`` are checked
    n_max : int
        Rows ``0..n_max``, at most the oracle cap
    ell_max : int
        Values ``0..ell_max`` of ``ell``
    numeric : bool, optional
        Include the numeric engine, default True
    numeric_rtol : float, optional
        Relative tolerance for the numeric comparison
    numeric_atol : float, optional
        Absolute tolerance where the exact value is zero
    workers : int, optional
        Processes used by the enumeration

    Returns
    -------
    VerificationResult
    """
    use_numeric = kwargs.get('numeric', True)
    rtol = kwargs.get('numeric_rtol', config.NUMERIC_RTOL)
    atol = kwargs.get('numeric_atol', config.NUMERIC_ATOL)
    result = VerificationResult()
    for k in range(1, k_max + 1):
        reports = [aggregate(n, k, ell_max, **kwargs)
                   for n in range(n_max + 1)]
        for ell in range(ell_max + 1):
            table = build_table(k, ell, n_max)
            found = []
            for report, row in zip(reports, table.rows):
                expected = row_from_report(report, ell)
                for name in EXACT_FIELDS:
                    if getattr(expected, name) != getattr(row, name):
                        found.append(Mismatch(
                            k, ell, row.n, name, getattr(expected, name),
                            getattr(row, name), 'oracle'))
                if report.L[ell] != report.A[ell] + report.F[ell] + \
                        report.L[ell + 1]:
                    found.append(Mismatch(k, ell, row.n, 'telescoping',
                                          report.L[ell], None, 'oracle'))
            if use_numeric:
                found.extend(_numeric_mismatches(k, ell, table, rtol, atol))
            result.mismatches.extend(found)
            result.matrix[(k, ell)] = not found
        log.info('Verified k=%d for n <= %d, ell <= %d', k, n_max, ell_max)
    return result


def _numeric_mismatches(k, ell, table, rtol, atol):
    found = []
    try:
        engine = NumericEngine(k, ell)
    except EvenPartsError as err:
        log.warning('Numeric engine unavailable for k=%d, ell=%d: %s', k,
                    ell, err)
        return [Mismatch(k, ell, 0, 'decomposition', None, str(err),
                         'numeric')]
    for row in table.rows:
        values = engine.values(row.n)
        approx = {'c': values['c'].real, 'T': values['T'].real,
                  'L': values['L'].real, 'F': values['F'].real}
        if row.n:
            approx['E'] = (row.total + values['g'].real) / 2
            approx['O'] = (row.total - values['g'].real) / 2
        for name in NUMERIC_FIELDS:
            if name not in approx:
                continue
            if not _close(getattr(row, name), approx[name], rtol, atol):
                found.append(Mismatch(k, ell, row.n, name,
                                      getattr(row, name), approx[name],
                                      'numeric'))
    return found
