""" Exact statistics of large even parts

Every value comes from the series of an uncancelled rational generating
function, so all arithmetic is on Python integers.
"""
import logging
from fractions import Fraction

from evenparts.model.base_engine import (
    BaseEngine, StatRow, StatTable, check_n, compositions_of
)
from evenparts.model.genfun import (
    allowed_parts_gf, build_F, check_ell, count_gf, first_at_gf, late_gf,
    make_threshold, specialize_y, total_gf
)
from evenparts.util.polycore import bivariate_series, series_coeffs

log = logging.getLogger(__name__)


def _coefficient(g, n):
    return series_coeffs(g, n)[n]


def count_by_t(k, n):
    """ ``[a_{n,0}, ..., a_{n,t_max}]``, compositions of ``n`` by number of
    large even parts
    """
    check_n(n)
    f = bivariate_series(build_F(k), n)[n]
    return list(f.coeffs)


def count_exactly(k, tcount, n):
    """ Compositions of ``n`` with exactly ``tcount`` large even parts """
    check_n(n)
    return _coefficient(count_gf(k, tcount), n)


def avoid_count(k, n):
    """ ``c_k(n)``, compositions of ``n`` with no large even part """
    check_n(n)
    return _coefficient(specialize_y(build_F(k), 0), n)


def parity_counts(k, n):
    """ Compositions of ``n >= 1`` with an even and an odd number of large
    even parts

    Returns
    -------
    E, O : int
    """
    check_n(n, minimum=1)
    g = _coefficient(specialize_y(build_F(k), -1), n)
    total = compositions_of(n)
    return (total + g) // 2, (total - g) // 2


def total_count(k, n):
    """ ``T_k(n)``, large even parts summed over all compositions of ``n`` """
    check_n(n)
    return _coefficient(total_gf(k), n)


def average_count(k, n):
    """ Mean number of large even parts in a composition of ``n >= 1`` """
    check_n(n, minimum=1)
    return Fraction(total_count(k, n), compositions_of(n))


def late_count(k, ell, n, **kwargs):
    """ Compositions of ``n`` whose first ``ell`` parts exist and are not
    large even
    """
    check_n(n)
    return _coefficient(late_gf(k, ell, **kwargs), n)


def first_at_count(k, ell, n, **kwargs):
    """ Compositions of ``n`` whose first large even part is part ``ell + 1``
    """
    check_n(n)
    return _coefficient(first_at_gf(k, ell, **kwargs), n)


def late_with_existence(k, ell, n, **kwargs):
    """ Compositions counted by :func:`late_count` that contain a large even
    part
    """
    return late_count(k, ell, n, **kwargs) - avoid_count(k, n)


def allowed_parts_count(k, ell, n, **kwargs):
    """ Compositions of ``n`` into exactly ``ell`` parts, none large even """
    check_n(n)
    return _coefficient(allowed_parts_gf(k, ell, **kwargs), n)


def build_table(k, ell, n_max, **kwargs):
    """ All statistics for ``n = 0..n_max`` from one series pass per
    generating function

    Parameters
    ----------
    k : int or Threshold
        Threshold
    ell : int
        Number of leading parts for ``L`` and ``F``
    n_max : int
        Last row
    ell_cap : int, optional
        Largest accepted ``ell``

    Returns
    -------
    StatTable
    """
    t = make_threshold(k)
    ell = check_ell(ell, **kwargs)
    check_n(n_max)
    bivariate = build_F(t)
    f = bivariate_series(bivariate, n_max)
    avoid = series_coeffs(specialize_y(bivariate, 0), n_max)
    signed = series_coeffs(specialize_y(bivariate, -1), n_max)
    totals = series_coeffs(total_gf(t), n_max)
    late = series_coeffs(late_gf(t, ell, **kwargs), n_max)
    first = series_coeffs(first_at_gf(t, ell, **kwargs), n_max)

    rows = []
    for n in range(n_max + 1):
        total = compositions_of(n)
        if n:
            E = (total + signed[n]) // 2
            O = (total - signed[n]) // 2  # noqa: E741
            avg = Fraction(totals[n], total)
        else:
            E = O = avg = None  # noqa: E741
        rows.append(StatRow(
            n=n, counts=tuple(f[n].coeffs), c=avoid[n], E=E, O=O,
            T=totals[n], L=late[n], F=first[n],
            late_exists=late[n] - avoid[n], avg=avg))
    log.info('Built exact table for k=%d, ell=%d up to n=%d', t.k, ell,
             n_max)
    return StatTable(t.k, ell, rows)


class ExactEngine(BaseEngine):
    """ Statistics from the integer recurrences of the generating functions
    """
    name = 'exact'

    def __init__(self, k, ell=0, **kwargs):
        super().__init__(k, ell, **kwargs)
        self._kwargs = kwargs

    def row(self, n):
        check_n(n)
        return self.table(n).rows[n]

    def table(self, n_max):
        return build_table(self.threshold, self.ell, n_max, **self._kwargs)
