import logging
import numbers

from evenparts import config
from evenparts.exceptions import ParameterError
from evenparts.util.polycore import (
    BivariateGF, IntPolynomial, RationalGF, YPolynomial, poly_mul, poly_pow
)

log = logging.getLogger(__name__)

ONE = IntPolynomial((1,))
X = IntPolynomial((0, 1))
ONE_MINUS_X = IntPolynomial((1, -1))
ONE_PLUS_X = IntPolynomial((1, 1))
ONE_MINUS_2X = IntPolynomial((1, -2))
ONE_MINUS_X2 = IntPolynomial((1, 0, -1))


class Threshold:
    """ The threshold ``k`` above which even parts are counted

    Attributes
    ----------
    k : int
        The threshold, at least 1
    delta : int
        1 when ``k`` is odd, 2 when ``k`` is even
    smallest : int
        ``k + delta``, the smallest even integer larger than ``k``
    """
    __slots__ = ('_k',)

    def __init__(self, k):
        if isinstance(k, bool) or not isinstance(k, numbers.Integral):
            raise TypeError(f'Threshold must be an integer, got {k!r}')
        if k < 1:
            raise ParameterError(f'Threshold must be at least 1, got {k}')
        self._k = int(k)

    @property
    def k(self):
        return self._k

    @property
    def delta(self):
        return 1 if self._k % 2 else 2

    @property
    def smallest(self):
        return self._k + self.delta

    def __eq__(self, other):
        if not isinstance(other, Threshold):
            return NotImplemented
        return self._k == other._k

    def __hash__(self):
        return hash(self._k)

    def __repr__(self):
        return f'Threshold(k={self._k})'


def make_threshold(k):
    """ Build the :class:`Threshold` for ``k``

    Raises
    ------
    ParameterError
        ``k`` is not positive
    """
    if isinstance(k, Threshold):
        return k
    return Threshold(k)


def check_ell(ell, **kwargs):
    ell_cap = kwargs.get('ell_cap', config.ELL_CAP)
    if isinstance(ell, bool) or not isinstance(ell, numbers.Integral):
        raise TypeError(f'ell must be an integer, got {ell!r}')
    if ell < 0:
        raise ParameterError(f'ell must be nonnegative, got {ell}')
    if ell > ell_cap:
        raise ParameterError(f'ell must not exceed {ell_cap}, got {ell}')
    return int(ell)


def _factor_list(*pairs):
    return tuple((factor, mult) for factor, mult in pairs if mult)


def _allowed_base(t):
    # x(1 + x) - x^(k + delta), numerator of a single allowed part
    return poly_mul(X, ONE_PLUS_X) - IntPolynomial.monomial(t.smallest)


def even_tail_gf(t):
    """ Generating function of a single large even part,
    ``x^(k+delta) / (1 - x^2)``
    """
    t = make_threshold(t)
    return RationalGF(IntPolynomial.monomial(t.smallest), ONE_MINUS_X2,
                      factors=_factor_list((ONE_MINUS_X, 1), (ONE_PLUS_X, 1)))


def build_F(t):
    """ Bivariate generating function of compositions, ``y`` marking large
    even parts, with cleared denominators

    ``F = (1-x)(1-x^2) / ((1-2x)(1-x^2) - (y-1)(1-x) x^(k+delta))``

    Parameters
    ----------
    t : Threshold or int
        Threshold

    Returns
    -------
    BivariateGF
    """
    t = make_threshold(t)
    s = t.smallest
    num = poly_mul(ONE_MINUS_X, ONE_MINUS_X2)
    base = poly_mul(ONE_MINUS_2X, ONE_MINUS_X2)

    den = [YPolynomial(base.coeff(i)) for i in range(max(len(base), s + 2))]
    # -(y - 1)(1 - x) x^s
    den[s] = den[s] + YPolynomial((1, -1))
    den[s + 1] = den[s + 1] + YPolynomial((-1, 1))

    log.debug('Built F for k=%d with denominator x-degree %d', t.k, s + 1)
    return BivariateGF([YPolynomial(value) for value in num.coeffs], den)


def specialize_y(g, y0):
    """ Substitute the integer ``y0`` for ``y``

    Parameters
    ----------
    g : BivariateGF
        Bivariate generating function
    y0 : int
        Value of ``y``

    Returns
    -------
    RationalGF
    """
    num = IntPolynomial([coeff(y0) for coeff in g.num])
    den = IntPolynomial([coeff(y0) for coeff in g.den])
    return RationalGF(num, den)


def total_gf(t):
    """ Generating function of the total number of large even parts,
    ``x^(k+delta)(1-x) / ((1-2x)^2 (1+x))``
    """
    t = make_threshold(t)
    num = poly_mul(IntPolynomial.monomial(t.smallest), ONE_MINUS_X)
    den = poly_mul(poly_pow(ONE_MINUS_2X, 2), ONE_PLUS_X)
    return RationalGF(num, den,
                      factors=_factor_list((ONE_MINUS_2X, 2), (ONE_PLUS_X, 1)))


def single_part_gfs(t):
    """ Single part generating functions

    Returns
    -------
    U : RationalGF
        Any part, ``x / (1 - x)``
    B : RationalGF
        A large even part
    S : RationalGF
        A part that is not large even, ``U - B``
    """
    t = make_threshold(t)
    U = RationalGF(X, ONE_MINUS_X, factors=_factor_list((ONE_MINUS_X, 1)))
    B = even_tail_gf(t)
    S = RationalGF(_allowed_base(t), poly_mul(ONE_MINUS_X, ONE_PLUS_X),
                   factors=_factor_list((ONE_MINUS_X, 1), (ONE_PLUS_X, 1)))
    return U, B, S


def late_gf(t, ell, **kwargs):
    """ Generating function of compositions whose first ``ell`` parts are not
    large even

    ``S(x)^ell (1-x) / (1-2x)``, kept uncancelled so that ``ell = 0`` needs no
    special case.

    Parameters
    ----------
    t : Threshold or int
        Threshold
    ell : int
        Number of leading parts that must avoid large even values
    ell_cap : int, optional
        Largest accepted ``ell``

    Returns
    -------
    RationalGF
    """
    t = make_threshold(t)
    ell = check_ell(ell, **kwargs)
    num = poly_mul(poly_pow(_allowed_base(t), ell), ONE_MINUS_X)
    den = poly_mul(poly_mul(ONE_MINUS_2X, poly_pow(ONE_MINUS_X, ell)),
                   poly_pow(ONE_PLUS_X, ell))
    factors = _factor_list((ONE_MINUS_2X, 1), (ONE_MINUS_X, ell),
                           (ONE_PLUS_X, ell))
    return RationalGF(num, den, factors=factors)


def first_at_gf(t, ell, **kwargs):
    """ Generating function of compositions whose first large even part is
    part number ``ell + 1``

    ``S(x)^ell B(x) (1-x) / (1-2x)``, uncancelled.
    """
    t = make_threshold(t)
    ell = check_ell(ell, **kwargs)
    num = poly_mul(IntPolynomial.monomial(t.smallest),
                   poly_pow(_allowed_base(t), ell))
    den = poly_mul(poly_mul(ONE_MINUS_2X, poly_pow(ONE_MINUS_X, ell)),
                   poly_pow(ONE_PLUS_X, ell + 1))
    factors = _factor_list((ONE_MINUS_2X, 1), (ONE_MINUS_X, ell),
                           (ONE_PLUS_X, ell + 1))
    return RationalGF(num, den, factors=factors)


def allowed_parts_gf(t, ell, **kwargs):
    """ ``S(x)^ell``, compositions into exactly ``ell`` parts none of which is
    large even
    """
    t = make_threshold(t)
    ell = check_ell(ell, **kwargs)
    num = poly_pow(_allowed_base(t), ell)
    den = poly_mul(poly_pow(ONE_MINUS_X, ell), poly_pow(ONE_PLUS_X, ell))
    factors = _factor_list((ONE_MINUS_X, ell), (ONE_PLUS_X, ell))
    return RationalGF(num, den, factors=factors)


def reduced_pair(t, y0):
    """ Numerator and denominator of ``F(x, y0)`` after removing the common
    factor ``1 - x``

    Parameters
    ----------
    t : Threshold or int
        Threshold
    y0 : int
        Value of ``y``

    Returns
    -------
    P : IntPolynomial
        ``1 - x^2``
    R : IntPolynomial
        ``(1-2x)(1+x) - (y0-1) x^(k+delta)``
    """
    t = make_threshold(t)
    R = (poly_mul(ONE_MINUS_2X, ONE_PLUS_X) -
         (y0 - 1) * IntPolynomial.monomial(t.smallest))
    return ONE_MINUS_X2, R


def count_gf(t, tcount):
    """ Generating function of the number of compositions with exactly
    ``tcount`` large even parts

    Expanding ``F = N / (Q - y W)`` in powers of ``y`` gives
    ``N W^t / Q^(t+1)`` with ``N = (1-x)(1-x^2)``,
    ``W = (1-x) x^(k+delta)`` and ``Q = (1-x) R_k``.
    """
    t = make_threshold(t)
    if tcount < 0:
        raise ParameterError(f'Part count must be nonnegative, got {tcount}')
    s = t.smallest
    _, R = reduced_pair(t, 0)
    N = poly_mul(ONE_MINUS_X, ONE_MINUS_X2)
    W = poly_mul(ONE_MINUS_X, IntPolynomial.monomial(s))
    num = poly_mul(N, poly_pow(W, tcount))
    den = poly_pow(poly_mul(ONE_MINUS_X, R), tcount + 1)
    factors = _factor_list((ONE_MINUS_X, tcount + 1), (R, tcount + 1))
    return RationalGF(num, den, factors=factors)


def part_weight_series(t, n_max):
    """ ``f_0(y), ..., f_{n_max}(y)`` straight from the part weights

    Uses ``f_n = sum_{j=1}^{n} w_j f_{n-j}`` where ``w_j = y`` for a large even
    part and 1 otherwise. Quadratic in ``n_max``.
    """
    t = make_threshold(t)
    s = t.smallest
    rows = [[1]]
    for n in range(1, n_max + 1):
        acc = [0] * (n // s + 1)
        for j in range(1, n + 1):
            shift = 1 if j >= s and (j - s) % 2 == 0 else 0
            for i, value in enumerate(rows[n - j]):
                acc[i + shift] += value
        rows.append(acc)
    return [YPolynomial(row) for row in rows]
