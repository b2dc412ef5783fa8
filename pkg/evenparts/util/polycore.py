import logging
import numbers
from fractions import Fraction

from evenparts.exceptions import NormalizationError

log = logging.getLogger(__name__)


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class IntPolynomial:
    """ Dense univariate polynomial with arbitrary precision integer
    coefficients

    Instances are immutable. Arithmetic operators return new polynomials of
    the same class.

    Attributes
    ----------
    coeffs : tuple of int
        ``coeffs[i]`` is the coefficient of degree ``i``. Trailing zeros are
        trimmed, so the zero polynomial is the empty tuple.
    """
    variable = 'x'
    __slots__ = ('_coeffs',)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, numbers.Integral):
            coeffs = (coeffs,)
        trimmed = _trim(coeffs)
        for value in trimmed:
            if not isinstance(value, numbers.Integral):
                msg = (f'{type(self).__name__} coefficients must be integers, '
                       f'got {value!r}')
                raise TypeError(msg)
        self._coeffs = tuple(int(value) for value in trimmed)

    @classmethod
    def monomial(cls, degree, coeff=1):
        """ Build ``coeff * var**degree`` """
        if degree < 0:
            raise ValueError(
                f'Monomial degree must be nonnegative, got {degree}')
        return cls((0,) * degree + (coeff,))

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        """ Degree of the polynomial, -1 for the zero polynomial """
        return len(self._coeffs) - 1

    @property
    def is_zero(self):
        return not self._coeffs

    def coeff(self, i):
        """ Coefficient of degree ``i``, zero outside the stored range """
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return 0

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __getitem__(self, item):
        return self._coeffs[item]

    def __eq__(self, other):
        if isinstance(other, numbers.Integral):
            other = type(self)(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return (self.variable == other.variable and
                self._coeffs == other._coeffs)

    def __hash__(self):
        return hash((self.variable, self._coeffs))

    def __repr__(self):
        return f'{type(self).__name__}({self._coeffs!r})'

    def __str__(self):
        terms = []
        for power, value in enumerate(self._coeffs):
            if value == 0:
                continue
            magnitude = abs(value)
            if power == 0:
                body = str(magnitude)
            else:
                var = (self.variable if power == 1
                       else f'{self.variable}^{power}')
                body = var if magnitude == 1 else f'{magnitude}{var}'
            if not terms:
                terms.append(f'-{body}' if value < 0 else body)
            else:
                terms.append(f'- {body}' if value < 0 else f'+ {body}')
        return ' '.join(terms) if terms else '0'

    def _coerce(self, other):
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, numbers.Integral):
            return type(self)(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_sub(other, self)

    def __neg__(self):
        return poly_scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, numbers.Integral):
            return poly_scale(self, other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        return poly_pow(self, exponent)

    def __call__(self, value):
        return poly_eval(self, value)


class YPolynomial(IntPolynomial):
    """ Polynomial in ``y`` whose coefficient of ``y**t`` is the number of
    compositions with exactly ``t`` large even parts
    """
    variable = 'y'
    __slots__ = ()

    def total(self):
        """ Value at y = 1 """
        return sum(self.coeffs)

    def signed_total(self):
        """ Value at y = -1 """
        return sum(value if t % 2 == 0 else -value
                   for t, value in enumerate(self.coeffs))

    def weighted_total(self):
        """ Derivative at y = 1, the sum of ``t * a_t`` """
        return sum(t * value for t, value in enumerate(self.coeffs))


def poly_add(a, b):
    """ Exact coefficient-wise sum

    Parameters
    ----------
    a : IntPolynomial
        First summand
    b : IntPolynomial
        Second summand

    Returns
    -------
    IntPolynomial
        Trimmed sum, of the same class as ``a``
    """
    size = max(len(a), len(b))
    return type(a)([a.coeff(i) + b.coeff(i) for i in range(size)])


def poly_sub(a, b):
    size = max(len(a), len(b))
    return type(a)([a.coeff(i) - b.coeff(i) for i in range(size)])


def poly_scale(a, c):
    return type(a)([c * value for value in a.coeffs])


def poly_shift(a, j):
    """ Multiply ``a`` by ``var**j`` """
    if j < 0:
        raise ValueError(f'Shift must be nonnegative, got {j}')
    if a.is_zero:
        return a
    return type(a)((0,) * j + a.coeffs)


def poly_mul(a, b):
    """ Exact convolution product

    Parameters
    ----------
    a : IntPolynomial
        First factor
    b : IntPolynomial
        Second factor

    Returns
    -------
    IntPolynomial
        Product, of the same class as ``a``
    """
    if a.is_zero or b.is_zero:
        return type(a)()
    out = [0] * (len(a) + len(b) - 1)
    b_coeffs = b.coeffs
    for i, a_i in enumerate(a.coeffs):
        if a_i == 0:
            continue
        for j, b_j in enumerate(b_coeffs):
            out[i + j] += a_i * b_j
    return type(a)(out)


def poly_pow(a, e):
    """ Exact power by repeated squaring, ``a**0`` is the constant 1 """
    if e < 0:
        raise ValueError(f'Exponent must be nonnegative, got {e}')
    result = type(a)((1,))
    base = a
    while e:
        if e & 1:
            result = poly_mul(result, base)
        e >>= 1
        if e:
            base = poly_mul(base, base)
    return result


def poly_eval(a, value):
    """ Evaluate ``a`` at ``value`` by Horner's rule

    ``value`` may be anything closed under ``+`` and ``*`` with integers:
    int, Fraction, complex or a numpy array.
    """
    result = value * 0
    for coeff in reversed(a.coeffs):
        result = result * value + coeff
    return result


def poly_divmod(a, b):
    """ Long division over the rationals

    Parameters
    ----------
    a : IntPolynomial
        Dividend
    b : IntPolynomial
        Divisor, nonzero

    Returns
    -------
    quotient : list of Fraction
        Coefficients of the quotient, ascending and trimmed
    remainder : list of Fraction
        Coefficients of the remainder, degree below that of ``b``

    Raises
    ------
    ZeroDivisionError
        ``b`` is the zero polynomial
    """
    if b.is_zero:
        raise ZeroDivisionError('Polynomial division by zero')
    remainder = [Fraction(value) for value in a.coeffs]
    divisor_degree = b.degree
    lead = b.coeffs[-1]
    if a.degree < divisor_degree:
        return [], _trim(remainder)

    quotient = [Fraction(0)] * (a.degree - divisor_degree + 1)
    for i in range(a.degree - divisor_degree, -1, -1):
        q = remainder[i + divisor_degree] / lead
        quotient[i] = q
        if q:
            for j, b_j in enumerate(b.coeffs):
                remainder[i + j] -= q * b_j
    return _trim(quotient), _trim(remainder[:divisor_degree])


def _check_normalized(den):
    if den.coeff(0) != 1:
        msg = f'Denominator constant term must be 1, got {den.coeff(0)}'
        raise NormalizationError(msg)


class RationalGF:
    """ A power series given as ``num / den`` with ``den(0) = 1``

    Common factors of ``num`` and ``den`` are never cancelled.

    Attributes
    ----------
    num : IntPolynomial
        Numerator
    den : IntPolynomial
        Denominator, constant term 1
    factors : tuple of (IntPolynomial, int), optional
        Factorisation of ``den`` into powers of known polynomials
    """
    __slots__ = ('_num', '_den', '_factors')

    def __init__(self, num, den, factors=None):
        num = num if isinstance(num, IntPolynomial) else IntPolynomial(num)
        den = den if isinstance(den, IntPolynomial) else IntPolynomial(den)
        _check_normalized(den)
        if factors is not None:
            factors = tuple((factor, int(mult)) for factor, mult in factors)
            product = IntPolynomial((1,))
            for factor, mult in factors:
                product = poly_mul(product, poly_pow(factor, mult))
            if product != den:
                msg = f'Factors {factors!r} do not multiply out to {den}'
                raise NormalizationError(msg)
        self._num = num
        self._den = den
        self._factors = factors

    @property
    def num(self):
        return self._num

    @property
    def den(self):
        return self._den

    @property
    def factors(self):
        return self._factors

    def series(self, n_max):
        return series_coeffs(self, n_max)

    def __eq__(self, other):
        if not isinstance(other, RationalGF):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        return hash((self._num, self._den))

    def __repr__(self):
        return f'RationalGF(num={self._num!r}, den={self._den!r})'

    def __str__(self):
        return f'({self._num}) / ({self._den})'


class BivariateGF:
    """ A power series in ``x`` whose coefficients are polynomials in ``y``,
    given as ``num(x, y) / den(x, y)``

    Attributes
    ----------
    num : tuple of YPolynomial
        ``num[i]`` is the coefficient of ``x**i``
    den : tuple of YPolynomial
        ``den[i]`` is the coefficient of ``x**i``; ``den[0]`` is the constant 1
    """
    __slots__ = ('_num', '_den')

    def __init__(self, num, den):
        num = self._as_y_coeffs(num)
        den = self._as_y_coeffs(den)
        if not den or den[0] != YPolynomial((1,)):
            constant = den[0] if den else YPolynomial()
            msg = f'Denominator must equal 1 at x = 0, got {constant}'
            raise NormalizationError(msg)
        self._num = num
        self._den = den

    @staticmethod
    def _as_y_coeffs(coeffs):
        converted = [value if isinstance(value, YPolynomial)
                     else YPolynomial(value) for value in coeffs]
        while converted and converted[-1].is_zero:
            converted.pop()
        return tuple(converted)

    @property
    def num(self):
        return self._num

    @property
    def den(self):
        return self._den

    def series(self, n_max):
        return bivariate_series(self, n_max)

    def __repr__(self):
        return f'BivariateGF(num={self._num!r}, den={self._den!r})'


def series_coeffs(g, n_max):
    """ Power series coefficients of a rational generating function

    With ``den = sum(q_j x**j)`` and ``q_0 = 1`` the coefficients obey
    ``a_n = p_n - sum_{j >= 1} q_j a_{n-j}``.

    Parameters
    ----------
    g : RationalGF
        Rational generating function
    n_max : int
        Index of the last coefficient to compute

    Returns
    -------
    list of int
        ``[a_0, ..., a_{n_max}]``

    Raises
    ------
    NormalizationError
        The denominator constant term is not 1
    """
    if n_max < 0:
        raise ValueError(f'n_max must be nonnegative, got {n_max}')
    _check_normalized(g.den)
    taps = [(j, q) for j, q in enumerate(g.den.coeffs) if j and q]
    num = g.num.coeffs
    out = []
    for n in range(n_max + 1):
        acc = num[n] if n < len(num) else 0
        for j, q in taps:
            if j > n:
                break
            acc -= q * out[n - j]
        out.append(acc)
    log.debug('Expanded %d coefficients over a degree %d denominator',
              n_max + 1, g.den.degree)
    return out


def bivariate_series(g, n_max):
    """ Coefficients ``f_0(y), ..., f_{n_max}(y)`` of a bivariate generating
    function

    The same denominator driven recurrence as :func:`series_coeffs`, carried
    out with polynomials in ``y``.

    Parameters
    ----------
    g : BivariateGF
        Bivariate generating function
    n_max : int
        Index of the last coefficient to compute

    Returns
    -------
    list of YPolynomial
    """
    if n_max < 0:
        raise ValueError(f'n_max must be nonnegative, got {n_max}')
    if not g.den or g.den[0] != YPolynomial((1,)):
        raise NormalizationError('Denominator must equal 1 at x = 0')
    taps = [(j, q.coeffs) for j, q in enumerate(g.den) if j and not q.is_zero]
    num = g.num
    out = []
    for n in range(n_max + 1):
        acc = list(num[n].coeffs) if n < len(num) else []
        for j, q in taps:
            if j > n:
                break
            prev = out[n - j]
            if not prev:
                continue
            width = len(prev)
            needed = width + len(q) - 1
            if len(acc) < needed:
                acc.extend([0] * (needed - len(acc)))
            for s, q_s in enumerate(q):
                if q_s == 0:
                    continue
                window = acc[s:s + width]
                acc[s:s + width] = [a - q_s * p for a, p in zip(window, prev)]
        out.append(_trim(acc))
    log.debug('Expanded %d bivariate coefficients', n_max + 1)
    return [YPolynomial(coeffs) for coeffs in out]


def poly_exact_div(a, b):
    """ Exact quotient ``a / b`` for a divisor with constant term 1

    Parameters
    ----------
    a : IntPolynomial
        Dividend
    b : IntPolynomial
        Divisor with ``b(0) = 1``

    Returns
    -------
    IntPolynomial or None
        The quotient, or None when ``b`` does not divide ``a``
    """
    if a.is_zero:
        return type(a)()
    if a.degree < b.degree:
        return None
    quotient = type(a)(series_coeffs(RationalGF(a, b), a.degree - b.degree))
    if poly_mul(quotient, b) != a:
        return None
    return quotient


def recurrence_residual(g, coeffs):
    """ Residuals ``sum_j q_j a_{n-j} - p_n`` of a coefficient list against the
    denominator of ``g``; all zero when ``coeffs`` is the series of ``g``
    """
    den = g.den.coeffs
    residuals = []
    for n in range(len(coeffs)):
        total = sum(q * coeffs[n - j] for j, q in enumerate(den)
                    if j <= n and q)
        residuals.append(total - g.num.coeff(n))
    return residuals


def recurrence_of(g):
    """ Constant coefficient recurrence satisfied by the series of ``g``

    Parameters
    ----------
    g : RationalGF
        Rational generating function

    Returns
    -------
    lags : list of (int, int)
        Pairs ``(j, c_j)`` with ``a_n = sum c_j a_{n-j}``
    valid_from : int
        Smallest n for which the recurrence holds, taking ``a_m = 0`` for
        negative ``m``
    """
    lags = [(j, -q) for j, q in enumerate(g.den.coeffs) if j and q]
    return lags, g.num.degree + 1
