from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from evenparts.exceptions import ParameterError
from evenparts.model.genfun import check_ell, make_threshold


def compositions_of(n):
    """ Number of compositions of ``n``, 1 for ``n = 0`` """
    return 1 if n == 0 else 2 ** (n - 1)


def check_n(n, minimum=0):
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f'n must be an integer, got {n!r}')
    if n < minimum:
        raise ParameterError(f'n must be at least {minimum}, got {n}')
    return n


@dataclass(frozen=True)
class StatRow:
    """ Statistics of the compositions of ``n``

    ``counts``, ``E``, ``O`` and ``avg`` are None where an engine does not
    produce them; ``E``, ``O`` and ``avg`` are always None for ``n = 0``.
    """
    n: int
    counts: Optional[Tuple[int, ...]]
    c: int
    E: Optional[int]
    O: Optional[int]  # noqa: E741
    T: int
    L: int
    F: int
    late_exists: int
    avg: Optional[Fraction]

    @property
    def total(self):
        return compositions_of(self.n)

    def violations(self):
        """ Internal consistency failures of this row as messages """
        problems = []
        total = self.total
        if self.counts is not None:
            if sum(self.counts) != total:
                problems.append(f'n={self.n}: counts sum to '
                                f'{sum(self.counts)}, expected {total}')
            if self.counts[0] != self.c:
                problems.append(f'n={self.n}: counts[0]={self.counts[0]} '
                                f'differs from c={self.c}')
            weighted = sum(t * a for t, a in enumerate(self.counts))
            if weighted != self.T:
                problems.append(f'n={self.n}: weighted counts {weighted} '
                                f'differ from T={self.T}')
        if self.E is not None and self.O is not None:
            if self.E + self.O != total or min(self.E, self.O) < 0:
                problems.append(f'n={self.n}: E={self.E} and O={self.O} do '
                                f'not split {total}')
        if self.late_exists != self.L - self.c:
            problems.append(f'n={self.n}: late_exists={self.late_exists} '
                            f'differs from L - c={self.L - self.c}')
        if not 0 <= self.F <= self.L <= total:
            problems.append(f'n={self.n}: expected 0 <= F={self.F} <= '
                            f'L={self.L} <= {total}')
        if self.avg is not None and self.avg != Fraction(self.T, total):
            problems.append(f'n={self.n}: avg={self.avg} differs from '
                            f'T / {total}')
        return problems


class StatTable:
    """ Rows ``n = 0..n_max`` for one threshold and one ``ell``

    Attributes
    ----------
    k : int
        Threshold
    ell : int
        Number of leading parts used by the positional statistics
    rows : list of StatRow
    """
    def __init__(self, k, ell, rows):
        self.k = k
        self.ell = ell
        self.rows = list(rows)

    def row(self, n):
        return self.rows[n]

    def violations(self):
        problems = []
        for row in self.rows:
            problems.extend(row.violations())
        return problems

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def __repr__(self):
        return f'StatTable(k={self.k}, ell={self.ell}, rows={len(self.rows)})'


class BaseEngine(ABC):
    """ Base class for engines producing composition statistics

    Attributes
    ----------
    threshold : Threshold
        Threshold above which even parts are counted
    ell : int
        Number of leading parts used by the positional statistics
    name : str
        Name of the engine on the command line
    """
    name = None

    def __init__(self, k, ell=0, **kwargs):
        self.threshold = make_threshold(k)
        self.ell = check_ell(ell, **kwargs)

    @property
    def k(self):
        return self.threshold.k

    @abstractmethod
    def row(self, n):
        """ Compute the statistics of the compositions of ``n``

        Parameters
        ----------
        n : int
            Integer being composed, nonnegative

        Returns
        -------
        row : StatRow
            Values for ``n``

        Raises
        ------
        ParameterError
            n is outside the range the engine supports
        """
        raise NotImplementedError()

    def table(self, n_max):
        """ Rows ``0..n_max`` as a :class:`StatTable` """
        return StatTable(self.k, self.ell,
                         [self.row(n) for n in range(n_max + 1)])
