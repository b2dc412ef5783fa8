import logging
from fractions import Fraction

from evenparts import config
from evenparts.exceptions import ParameterError
from evenparts.model.base_engine import (
    BaseEngine, StatRow, check_n, compositions_of
)
from evenparts.model.genfun import (
    build_F, first_at_gf, late_gf, specialize_y, total_gf
)
from evenparts.util.partial_fraction import recover_shape_constants

log = logging.getLogger(__name__)


class NumericEngine(BaseEngine):
    """ Statistics evaluated from pole decompositions

    The decompositions of ``F(x, 0)``, ``F(x, -1)`` and the total, late and
    first-at generating functions are computed once; each row then costs a
    sum over the pole terms. Values are rounded to the nearest integer, the
    per ``t`` counts are not produced.

    Rows are only produced up to ``numeric_n_max``, past which a double no
    longer determines the integer. :meth:`values` goes on until the pole
    terms leave the float range.

    Attributes
    ----------
    decompositions : dict of str to PoleDecomposition
        Keyed by ``'c'``, ``'g'``, ``'T'``, ``'L'`` and ``'F'``
    n_max : int
        Largest ``n`` accepted by :meth:`row`
    """
    name = 'numeric'

    def __init__(self, k, ell=0, **kwargs):
        super().__init__(k, ell, **kwargs)
        self.n_max = kwargs.get('numeric_n_max', config.NUMERIC_N_MAX)
        bivariate = build_F(self.threshold)
        sources = {
            'c': specialize_y(bivariate, 0),
            'g': specialize_y(bivariate, -1),
            'T': total_gf(self.threshold),
            'L': late_gf(self.threshold, self.ell, **kwargs),
            'F': first_at_gf(self.threshold, self.ell, **kwargs),
        }
        self.decompositions = {
            key: recover_shape_constants(g, **kwargs)
            for key, g in sources.items()
        }
        limits = [d.max_index for d in self.decompositions.values()
                  if d.max_index is not None]
        self.float_n_max = min(limits, default=None)
        log.info('Numeric engine ready for k=%d, ell=%d', self.k, self.ell)

    def values(self, n):
        """ Unrounded complex values of ``c``, ``g``, ``T``, ``L`` and ``F``
        at ``n``, where ``g = E - O``

        Raises
        ------
        ParameterError
            The pole terms at ``n`` overflow a double
        """
        check_n(n)
        if self.float_n_max is not None and n > self.float_n_max:
            raise ParameterError(
                f'n={n} is beyond the float range of the numeric engine, '
                f'at most {self.float_n_max}')
        return {key: decomposition.coefficient(n)
                for key, decomposition in self.decompositions.items()}

    def _check_row_n(self, n):
        if n > self.n_max:
            raise ParameterError(
                f'The numeric engine rounds rows up to n={self.n_max}, got '
                f'{n}; use the exact engine')

    def row(self, n):
        check_n(n)
        self._check_row_n(n)
        values = {key: int(round(value.real))
                  for key, value in self.values(n).items()}
        total = compositions_of(n)
        if n:
            E = (total + values['g']) // 2
            O = total - E  # noqa: E741
            avg = Fraction(values['T'], total)
        else:
            E = O = avg = None  # noqa: E741
        return StatRow(n=n, counts=None, c=values['c'], E=E, O=O,
                       T=values['T'], L=values['L'], F=values['F'],
                       late_exists=values['L'] - values['c'], avg=avg)

    def table(self, n_max):
        check_n(n_max)
        self._check_row_n(n_max)
        return super().table(n_max)
