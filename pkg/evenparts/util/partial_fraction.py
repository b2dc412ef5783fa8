""" Pole decompositions of rational generating functions

A rational ``G = num / den`` is written as a polynomial part plus terms
``c / (1 - x/alpha)^j`` for every pole ``alpha`` of order ``m`` and
``1 <= j <= m``, so that

    [x^n] G = poly[n] + sum c * binom(n + j - 1, j - 1) * alpha^(-n)

The poles ``1/2``, ``1`` and ``-1`` and the polynomial part are handled in
exact rational arithmetic; only the remaining poles are floating point.
"""
import logging
import numbers
from collections import namedtuple
from fractions import Fraction

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import binom, comb

from evenparts import config
from evenparts.exceptions import DecompositionError, NonSimpleRootError
from evenparts.util.polycore import poly_divmod, poly_exact_div, poly_pow
from evenparts.util.roots import (
    KNOWN_FACTORS, find_roots, strip_known_factors
)

log = logging.getLogger(__name__)

PoleTerm = namedtuple('PoleTerm', ['pole', 'order', 'coeff'])

FACTOR_OF_POLE = {pole: factor for factor, pole in KNOWN_FACTORS}


def _inverse_power(pole, n):
    if pole.imag == 0:
        return complex(pole.real ** -n)
    return pole ** -n


class PoleDecomposition:
    """ Polynomial part plus pole terms of a rational function

    Parameters
    ----------
    terms : list of PoleTerm
        Floating point terms
    poly : sequence
        Ascending coefficients of the polynomial part, kept exact when they
        are all rational
    error : float, optional
        Reconstruction error
    exact_terms : list of PoleTerm, optional
        Terms with ``Fraction`` poles and coefficients

    Attributes
    ----------
    terms : list of PoleTerm
        One ``(pole, order, coeff)`` entry per pole and order, exact terms
        included as complex numbers
    exact_terms : list of PoleTerm
        The terms known exactly
    poly : array
        Ascending coefficients of the polynomial part
    error : float
        Reconstruction error measured when the decomposition was built
    """
    def __init__(self, terms, poly, error=0.0, exact_terms=()):
        self.exact_terms = list(exact_terms)
        self._inexact = list(terms)
        self.terms = [PoleTerm(complex(pole), order, complex(coeff))
                      for pole, order, coeff in self.exact_terms]
        self.terms.extend(self._inexact)
        poly = list(poly)
        if all(isinstance(c, numbers.Rational) for c in poly):
            self._exact_poly = [Fraction(c) for c in poly]
        else:
            self._exact_poly = None
        self.poly = np.asarray([complex(c).real for c in poly], dtype=float)
        self.error = error

    @property
    def poles(self):
        """ Distinct poles with their orders """
        orders = {}
        for term in self.terms:
            orders[term.pole] = max(orders.get(term.pole, 0), term.order)
        return sorted(orders.items(), key=lambda item: abs(item[0]))

    @property
    def max_index(self):
        """ Largest ``n`` whose coefficient stays within float range, None
        when the poles allow any ``n``
        """
        smallest = min((abs(pole) for pole, _ in self.poles), default=1.0)
        if smallest >= 1:
            return None
        return int(config.FLOAT_EXPONENT_LIMIT / -np.log10(smallest))

    def exact_coefficient(self, n):
        """ Exact contribution of the polynomial part and the exact terms
        to ``[x^n]``
        """
        value = Fraction(0)
        if self._exact_poly is not None and n < len(self._exact_poly):
            value += self._exact_poly[n]
        for pole, order, coeff in self.exact_terms:
            value += coeff * comb(n + order - 1, order - 1, exact=True) * \
                pole ** -n
        return value

    def coefficient(self, n):
        """ ``[x^n]`` of the decomposed function as a complex number """
        value = complex(float(self.exact_coefficient(n)))
        if self._exact_poly is None and n < len(self.poly):
            value += self.poly[n]
        for pole, order, coeff in self._inexact:
            value += coeff * binom(n + order - 1, order - 1) * \
                _inverse_power(pole, n)
        return value

    def evaluate(self, x):
        """ Value of the decomposed function at ``x`` """
        value = P.polyval(x, self.poly) if len(self.poly) else 0j
        for pole, order, coeff in self.terms:
            value = value + coeff / (1 - x / pole) ** order
        return value

    def term_scale(self, x):
        # Largest single contribution at x, used as the reference magnitude
        scale = abs(P.polyval(x, self.poly)) if len(self.poly) else 0.0
        for pole, order, coeff in self.terms:
            scale = max(scale, abs(coeff / (1 - x / pole) ** order))
        return scale

    def binomial_weights(self, pole):
        """ Weights ``w_0, ..., w_{m-1}`` with the contribution of ``pole`` to
        ``[x^n]`` equal to ``pole^(-n) * sum w_j binom(n + j, j)``
        """
        matches = [term for term in self.terms if term.pole == pole]
        if not matches:
            raise KeyError(f'{pole} is not a pole of this decomposition')
        order = max(term.order for term in matches)
        weights = [0j] * order
        for term in matches:
            weights[term.order - 1] += term.coeff
        return weights

    def __repr__(self):
        return (f'PoleDecomposition(poles={len(self.poles)}, '
                f'poly_degree={len(self.poly) - 1}, error={self.error:.2e})')


def _collect_poles(g, **kwargs):
    """ Poles of ``g`` with multiplicities

    Returns
    -------
    exact : dict of Fraction to int
        Poles ``1/2``, ``1`` and ``-1`` found by exact division
    numeric : list of (complex, int)
        Poles found by the root finder
    """
    factors = g.factors if g.factors is not None else ((g.den, 1),)
    exact = {}
    numeric = []
    for factor, mult in factors:
        known, rest = strip_known_factors(factor)
        for pole, order in known:
            exact[pole] = exact.get(pole, 0) + order * mult
        if rest.degree >= 1:
            for root, order in find_roots(rest, **kwargs):
                numeric.append((root, order * mult))
    total = sum(exact.values()) + sum(order for _, order in numeric)
    if total != g.den.degree:
        raise DecompositionError(
            f'Found {total} poles for a denominator of degree {g.den.degree}')
    return exact, numeric


def _series_divide(num, den, length):
    out = []
    for i in range(length):
        acc = num[i] if i < len(num) else 0
        for j in range(1, min(i, len(den) - 1) + 1):
            acc -= den[j] * out[i - j]
        out.append(acc / den[0])
    return out


def _shifted_prefix(coeffs, alpha, length):
    # first ``length`` coefficients in u of c(alpha (1 - u))
    out = [Fraction(0)] * length
    for coeff in reversed(coeffs):
        shifted = [alpha * value for value in out]
        for i in range(1, length):
            shifted[i] -= alpha * out[i - 1]
        shifted[0] += coeff
        out = shifted
    return out


def _exact_local_coefficients(g, pole, order):
    """ Coefficients of ``(1 - x/pole)^(-j)`` for a rational pole

    With ``x = pole (1 - u)`` the factor ``1 - x/pole`` is ``u`` and the
    function equals ``u^(-m) num / cofactor``.
    """
    factor = FACTOR_OF_POLE[pole]
    cofactor = poly_exact_div(g.den, poly_pow(factor, order))
    if cofactor is None:
        raise DecompositionError(
            f'{factor}^{order} does not divide the denominator of {g!r}')
    num_u = _shifted_prefix(g.num.coeffs, pole, order)
    den_u = _shifted_prefix(cofactor.coeffs, pole, order)
    h = _series_divide(num_u, den_u, order)
    return [PoleTerm(pole, order - i, h[i]) for i in range(order)]


def _local_coefficients(remainder, lead, poles, index):
    """ Coefficients of ``(1 - x/alpha)^(-j)`` for one pole

    With ``x = alpha (1 - u)`` the proper part equals
    ``u^(-m) * H(u)``; the first ``m`` Taylor coefficients of ``H`` give the
    terms of order ``m, m - 1, ..., 1``.
    """
    alpha, order = poles[index]
    substitute = np.array([alpha, -alpha], dtype=complex)
    num_u = np.zeros(1, dtype=complex)
    for coeff in reversed(remainder):
        num_u = P.polyadd(P.polymul(num_u, substitute),
                          [complex(float(coeff))])
    num_u = num_u[:order]

    den_u = np.array([lead * (-alpha) ** order], dtype=complex)
    for other, other_order in (poles[:index] + poles[index + 1:]):
        linear = np.array([alpha - other, -alpha], dtype=complex)
        for _ in range(other_order):
            den_u = P.polymul(den_u, linear)[:order]

    h = _series_divide(num_u, den_u, order)
    return [PoleTerm(alpha, order - i, h[i]) for i in range(order)]


def _check_reconstruction(g, decomposition, **kwargs):
    samples = kwargs.get('reconstruction_samples',
                         config.RECONSTRUCTION_SAMPLES)
    rtol = kwargs.get('reconstruction_rtol', config.RECONSTRUCTION_RTOL)
    seed = kwargs.get('sample_seed', config.SAMPLE_SEED)
    poles = decomposition.poles
    radius = 0.5 * min((abs(pole) for pole, _ in poles), default=1.0)

    rng = np.random.default_rng(seed)
    points = radius * rng.uniform(0.4, 1.0, samples) * \
        np.exp(2j * np.pi * rng.uniform(0, 1, samples))
    num = np.array(g.num.coeffs, dtype=float)
    den = np.array(g.den.coeffs, dtype=float)
    worst = 0.0
    for x in points:
        expected = P.polyval(x, num) / P.polyval(x, den)
        actual = decomposition.evaluate(x)
        scale = max(abs(expected), decomposition.term_scale(x))
        worst = max(worst, abs(actual - expected) / scale)
    if worst > rtol:
        raise DecompositionError(
            f'Pole decomposition of {g!r} reconstructs with relative error '
            f'{worst:.2e} above {rtol:.0e}')
    return worst


def recover_shape_constants(g, **kwargs):
    """ Decompose ``g`` into its polynomial part and pole terms

    Known factors ``1 - 2x``, ``1 - x`` and ``1 + x`` are located exactly and
    their terms computed over the rationals; remaining roots come from
    :func:`~evenparts.util.roots.find_roots`. The result is checked against
    ``g`` at seeded random points inside the disk of convergence.

    Parameters
    ----------
    g : RationalGF
        Rational generating function, uncancelled
    **kwargs
        Passed on to the root finder and the reconstruction check

    Returns
    -------
    PoleDecomposition

    Raises
    ------
    DecompositionError
        The poles do not account for the denominator or the reconstruction
        check fails
    """
    exact, numeric = _collect_poles(g, **kwargs)
    quotient, remainder = poly_divmod(g.num, g.den)
    lead = complex(g.den.coeffs[-1])

    exact_terms = []
    for pole, order in exact.items():
        exact_terms.extend(_exact_local_coefficients(g, pole, order))
    poles = numeric + [(complex(pole), order) for pole, order in exact.items()]
    terms = []
    for index in range(len(numeric)):
        terms.extend(_local_coefficients(remainder, lead, poles, index))
    decomposition = PoleDecomposition(terms, quotient,
                                      exact_terms=exact_terms)
    decomposition.error = _check_reconstruction(g, decomposition, **kwargs)
    log.debug('Decomposed %r into %d terms, error %.2e', g,
              len(decomposition.terms), decomposition.error)
    return decomposition




def multi_pole_coeff(g, n, decomposition=None, **kwargs):
    """ ``[x^n] g`` from its pole decomposition

    Parameters
    ----------
    g : RationalGF
        Rational generating function
    n : int
        Coefficient index
    decomposition : PoleDecomposition, optional
        Reused when given

    Returns
    -------
    complex
    """
    if decomposition is None:
        decomposition = recover_shape_constants(g, **kwargs)
    return decomposition.coefficient(n)


def simple_pole_coeff(p, q, roots, n):
    """ ``[x^n] p/q`` for a denominator with simple roots

    Each root ``alpha`` contributes ``-p(alpha) / (alpha q'(alpha))
    alpha^(-n)``; the polynomial part of ``p/q`` is added when
    ``deg p >= deg q``.

    Parameters
    ----------
    p : IntPolynomial
        Numerator
    q : IntPolynomial
        Denominator with ``q(0) != 0``
    roots : ComplexRootSet
        Roots of ``q``
    n : int
        Coefficient index

    Returns
    -------
    complex

    Raises
    ------
    NonSimpleRootError
        Some root of ``q`` is multiple
    """
    value = sum(weight * _inverse_power(alpha, n)
                for alpha, weight in simple_pole_weights(p, q, roots))
    value = complex(value)
    if p.degree >= q.degree:
        quotient, _ = poly_divmod(p, q)
        if n < len(quotient):
            value += float(quotient[n])
    return value


def simple_pole_weights(p, q, roots):
    """ Weights ``C_i`` of the simple pole formula, keyed by root """
    if not roots.is_simple:
        raise NonSimpleRootError(
            f'Denominator {q} has a multiple root, simple pole formula does '
            f'not apply')
    alphas = roots.values
    p_coeffs = np.array(p.coeffs, dtype=float)
    q_coeffs = np.array(q.coeffs, dtype=float)
    weights = -P.polyval(alphas, p_coeffs) / \
        (alphas * P.polyval(alphas, P.polyder(q_coeffs)))
    return list(zip(alphas, weights))


def double_pole_constants(decomposition):
    """ Constants of ``A n 2^n + B 2^n + C (-1)^n`` for a function whose only
    poles are a double pole at 1/2 and a simple pole at -1

    Returns
    -------
    A, B, C : float
    """
    w0, w1 = (decomposition.binomial_weights(0.5 + 0j) + [0j])[:2]
    try:
        C = decomposition.binomial_weights(-1 + 0j)[0]
    except KeyError:
        C = 0j
    return w1.real, (w0 + w1).real, C.real
