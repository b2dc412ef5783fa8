""" Brute force enumeration of compositions

A composition of ``n >= 1`` is the set of cut points among the ``n - 1`` gaps
between ``n`` cells; bit ``i`` of the mask cuts after cell ``i + 1``.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List

from evenparts import config
from evenparts.exceptions import OracleCapError, ParameterError
from evenparts.model.base_engine import (
    BaseEngine, StatRow, check_n, compositions_of
)

log = logging.getLogger(__name__)


class Composition:
    """ An ordered tuple of positive parts

    Attributes
    ----------
    parts : tuple of int
    n : int
        Sum of the parts
    """
    __slots__ = ('parts',)

    def __init__(self, parts):
        parts = tuple(int(part) for part in parts)
        if any(part < 1 for part in parts):
            raise ParameterError(f'Parts must be positive, got {parts}')
        self.parts = parts

    @property
    def n(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, item):
        return self.parts[item]

    def __eq__(self, other):
        if isinstance(other, Composition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f'Composition{self.parts!r}'


def check_cap(n, **kwargs):
    cap = kwargs.get('oracle_cap', config.ORACLE_CAP)
    check_n(n)
    if n > cap:
        raise OracleCapError(
            f'Enumerating compositions of {n} exceeds the cap of {cap}')
    return n


def mask_count(n):
    """ Number of cut sets of ``n``, 1 for ``n = 0`` """
    return compositions_of(n)


def cut_set_to_composition(n, mask):
    """ Composition of ``n`` whose cuts are the set bits of ``mask`` """
    if not 0 <= mask < mask_count(n):
        raise ParameterError(f'Mask {mask} is out of range for n={n}')
    if n == 0:
        return Composition(())
    parts = []
    length = 1
    for gap in range(n - 1):
        if mask >> gap & 1:
            parts.append(length)
            length = 1
        else:
            length += 1
    parts.append(length)
    return Composition(parts)


def composition_to_cut_set(parts):
    """ Mask of the cut points of a composition, inverse of
    :func:`cut_set_to_composition`
    """
    mask = 0
    position = 0
    for part in tuple(parts)[:-1]:
        position += part
        mask |= 1 << (position - 1)
    return mask


def enumerate_range(n, start, stop):
    """ Compositions of ``n`` for masks in ``[start, stop)`` """
    for mask in range(start, stop):
        yield cut_set_to_composition(n, mask)


def enumerate_compositions(n, **kwargs):
    """ Every composition of ``n`` exactly once, ``()`` alone for ``n = 0``

    Parameters
    ----------
    n : int
        Integer to compose
    oracle_cap : int, optional
        Largest ``n`` accepted

    Raises
    ------
    OracleCapError
        ``n`` exceeds the cap
    """
    check_cap(n, **kwargs)
    return enumerate_range(n, 0, mask_count(n))


def big_even_stats(parts, k):
    """ Number of parts that are even and larger than ``k``, and the 1-based
    position of the first such part

    Returns
    -------
    count : int
    first : int or None
        None when there is no such part
    """
    count = 0
    first = None
    for position, part in enumerate(parts, start=1):
        if part % 2 == 0 and part > k:
            count += 1
            if first is None:
                first = position
    return count, first


@dataclass
class OracleReport:
    """ Brute force statistics of the compositions of ``n``

    ``L``, ``F`` and ``A`` are indexed by ``ell``; ``L`` runs to
    ``ell_max + 1`` so the telescoping identity can be checked at ``ell_max``.
    """
    n: int
    k: int
    ell_max: int
    histogram: Dict[int, int] = field(default_factory=dict)
    T: int = 0
    L: List[int] = None
    F: List[int] = None
    A: List[int] = None

    def __post_init__(self):
        if self.L is None:
            self.L = [0] * (self.ell_max + 2)
        if self.F is None:
            self.F = [0] * (self.ell_max + 1)
        if self.A is None:
            self.A = [0] * (self.ell_max + 1)

    @property
    def c(self):
        return self.histogram.get(0, 0)

    @property
    def E(self):
        return sum(v for t, v in self.histogram.items() if t % 2 == 0)

    @property
    def O(self):  # noqa: E743
        return sum(v for t, v in self.histogram.items() if t % 2 == 1)

    @property
    def total(self):
        return sum(self.histogram.values())

    @property
    def counts(self):
        """ Dense histogram ``a_{n,0}, ..., a_{n,t_max}`` """
        t_max = max(self.histogram, default=0)
        return tuple(self.histogram.get(t, 0) for t in range(t_max + 1))

    def add(self, parts):
        count, first = big_even_stats(parts, self.k)
        self.histogram[count] = self.histogram.get(count, 0) + 1
        self.T += count
        # L counts ell <= len(parts) with no large even part among the first
        late_limit = len(parts) if first is None else min(len(parts),
                                                          first - 1)
        for ell in range(min(late_limit, self.ell_max + 1) + 1):
            self.L[ell] += 1
        if first is not None and first - 1 <= self.ell_max:
            self.F[first - 1] += 1
        if first is None and len(parts) <= self.ell_max:
            self.A[len(parts)] += 1

    def merge(self, other):
        """ Combine with a report for a disjoint set of compositions """
        histogram = dict(self.histogram)
        for t, value in other.histogram.items():
            histogram[t] = histogram.get(t, 0) + value
        return OracleReport(
            n=self.n, k=self.k, ell_max=self.ell_max, histogram=histogram,
            T=self.T + other.T,
            L=[a + b for a, b in zip(self.L, other.L)],
            F=[a + b for a, b in zip(self.F, other.F)],
            A=[a + b for a, b in zip(self.A, other.A)])


def _aggregate_range(n, k, ell_max, start, stop):
    report = OracleReport(n=n, k=k, ell_max=ell_max)
    for composition in enumerate_range(n, start, stop):
        report.add(composition.parts)
    return report


def aggregate(n, k, ell_max=0, **kwargs):
    """ Enumerate the compositions of ``n`` and tally every statistic

    Parameters
    ----------
    n : int
        Integer to compose
    k : int
        Threshold
    ell_max : int
        Largest ``ell`` for the positional statistics
    workers : int, optional
        Number of processes; the mask space is split into contiguous ranges
    oracle_cap : int, optional
        Largest ``n`` accepted

    Returns
    -------
    OracleReport
    """
    check_cap(n, **kwargs)
    if k < 1:
        raise ParameterError(f'Threshold must be at least 1, got {k}')
    if ell_max < 0:
        raise ParameterError(f'ell_max must be nonnegative, got {ell_max}')
    workers = kwargs.get('workers', 1)
    size = mask_count(n)
    if workers <= 1 or size < workers:
        return _aggregate_range(n, k, ell_max, 0, size)

    bounds = [size * i // workers for i in range(workers + 1)]
    log.debug('Splitting %d masks of n=%d over %d workers', size, n, workers)
    with ProcessPoolExecutor(max_workers=workers) as ex:
        futures = [ex.submit(_aggregate_range, n, k, ell_max, lo, hi)
                   for lo, hi in zip(bounds[:-1], bounds[1:])]
        reports = [future.result() for future in futures]
    report = reports[0]
    for other in reports[1:]:
        report = report.merge(other)
    return report


class OracleEngine(BaseEngine):
    """ Statistics by enumerating every composition """
    name = 'oracle'

    def __init__(self, k, ell=0, **kwargs):
        super().__init__(k, ell, **kwargs)
        self._kwargs = kwargs

    def row(self, n):
        report = aggregate(n, self.k, self.ell, **self._kwargs)
        return row_from_report(report, self.ell)

    def table(self, n_max):
        check_cap(n_max, **self._kwargs)
        return super().table(n_max)


def row_from_report(report, ell):
    """ :class:`StatRow` for one ``ell`` of an :class:`OracleReport` """
    n = report.n
    if n:
        E, O, avg = (report.E, report.O,  # noqa: E741
                     Fraction(report.T, compositions_of(n)))
    else:
        E = O = avg = None  # noqa: E741
    L = report.L[ell]
    return StatRow(n=n, counts=report.counts, c=report.c, E=E, O=O,
                   T=report.T, L=L, F=report.F[ell],
                   late_exists=L - report.c, avg=avg)
