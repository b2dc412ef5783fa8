import logging
from fractions import Fraction

import numpy as np
from numpy.polynomial import polynomial as P

from evenparts import config
from evenparts.exceptions import ConvergenceError
from evenparts.util.polycore import IntPolynomial, poly_exact_div

log = logging.getLogger(__name__)

# (factor, pole) pairs removed by exact division before numeric root finding
KNOWN_FACTORS = (
    (IntPolynomial((1, -2)), Fraction(1, 2)),
    (IntPolynomial((1, -1)), Fraction(1)),
    (IntPolynomial((1, 1)), Fraction(-1)),
)


class ComplexRootSet:
    """ Roots of a polynomial grouped by multiplicity

    Attributes
    ----------
    roots : list of (complex, int)
        Distinct roots with their multiplicities, ordered by modulus then
        argument
    degree : int
        Degree of the polynomial, the sum of the multiplicities
    residual : float
        Largest ``|p(root)|`` relative to the largest coefficient of ``p``
    converged : bool
        Whether the iteration met its tolerance
    """
    def __init__(self, roots, degree, residual, converged=True):
        self.roots = list(roots)
        self.degree = degree
        self.residual = residual
        self.converged = converged

    @property
    def values(self):
        return np.array([root for root, _ in self.roots], dtype=complex)

    @property
    def multiplicities(self):
        return [mult for _, mult in self.roots]

    @property
    def simple(self):
        """ Per root flag, True when the root has multiplicity one """
        return [mult == 1 for _, mult in self.roots]

    @property
    def is_simple(self):
        return all(self.simple)

    def min_separation(self):
        """ Smallest distance between two distinct roots, inf for fewer than
        two roots
        """
        values = self.values
        if len(values) < 2:
            return np.inf
        diff = np.abs(values[:, None] - values[None, :])
        np.fill_diagonal(diff, np.inf)
        return float(np.min(diff))

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def __repr__(self):
        return (f'ComplexRootSet(degree={self.degree}, '
                f'distinct={len(self.roots)}, residual={self.residual:.2e}, '
                f'converged={self.converged})')


def find_multiplicity(root, candidates, separation):
    """
    Number of entries of ``candidates`` within ``separation`` of ``root``,
    scaled by ``max(1, |root|)``

    Parameters
    ----------
    root : complex
        The root in question
    candidates : array
        Approximate roots to search in
    separation : float
        Clustering distance

    Returns
    -------
    mult : int
        The multiplicity of the root
    """
    atol = separation * max(1.0, abs(root))
    mult = 0
    for other in candidates:
        if np.isclose(root, other, rtol=0, atol=atol):
            mult += 1
    return mult


def cluster_roots(approx, separation):
    """ Group approximate roots lying within ``separation`` of each other

    Returns
    -------
    list of (complex, int)
        Cluster centroids and sizes
    """
    remaining = list(approx)
    clusters = []
    while remaining:
        seed = remaining.pop(0)
        mult = 1 + find_multiplicity(seed, remaining, separation)
        if mult > 1:
            atol = separation * max(1.0, abs(seed))
            members = [seed] + [z for z in remaining
                                if np.isclose(seed, z, rtol=0, atol=atol)]
            remaining = [z for z in remaining
                         if not np.isclose(seed, z, rtol=0, atol=atol)]
            seed = complex(np.mean(members))
        clusters.append((seed, mult))
    return clusters


def _aberth(coeffs, tol, max_iter):
    """ Simultaneous Aberth iteration on ascending float coefficients """
    degree = len(coeffs) - 1
    deriv = P.polyder(coeffs)
    radius = abs(coeffs[0] / coeffs[-1]) ** (1.0 / degree)
    angles = 2 * np.pi * np.arange(degree) / degree + 0.25
    z = radius * np.exp(1j * angles)

    converged = False
    for iteration in range(max_iter):
        pz = P.polyval(z, coeffs)
        dz = P.polyval(z, deriv)
        with np.errstate(divide='ignore', invalid='ignore'):
            ratio = pz / dz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            repulsion = np.sum(1.0 / diff, axis=1)
            step = ratio / (1.0 - ratio * repulsion)
        step = np.where(np.isfinite(step) & (pz != 0), step, 0)
        z = z - step
        if np.all(np.abs(step) <= tol * np.maximum(1.0, np.abs(z))):
            converged = True
            break
    log.debug('Aberth iteration stopped after %d steps, converged=%s',
              iteration + 1, converged)
    return z, converged


def _polish(z, coeffs, steps=3):
    # Newton steps, kept only where they reduce |p|
    deriv = P.polyder(coeffs)
    for _ in range(steps):
        pz = P.polyval(z, coeffs)
        dz = P.polyval(z, deriv)
        with np.errstate(divide='ignore', invalid='ignore'):
            candidate = z - pz / dz
        better = (np.isfinite(candidate) &
                  (np.abs(P.polyval(candidate, coeffs)) < np.abs(pz)))
        z = np.where(better, candidate, z)
    return z


def _snap_real(z, separation):
    # roots that are real up to rounding
    return np.where(np.abs(z.imag) <= separation * np.abs(z), z.real + 0j, z)


def _refine_multiple(z, coeffs, mult, steps=20):
    # a root of multiplicity m is a simple root of the (m - 1)th derivative
    target = P.polyder(coeffs, mult - 1)
    deriv = P.polyder(coeffs, mult)
    for _ in range(steps):
        dz = P.polyval(z, deriv)
        if dz == 0:
            break
        step = P.polyval(z, target) / dz
        z = z - step
        if abs(step) <= np.finfo(float).eps * max(1.0, abs(z)):
            break
    return complex(z)


def _vanishes_to_order(z, coeffs, mult, rtol):
    for j in range(mult):
        c = P.polyder(coeffs, j) if j else coeffs
        magnitude = P.polyval(abs(z), np.abs(c))
        if abs(P.polyval(z, c)) > rtol * magnitude:
            return False
    return True


def merge_clusters(clusters, coeffs, radius, rtol=1e-10):
    """ Merge nearby clusters that form one multiple root

    Approximations of a root of multiplicity m only agree to about the
    m-th root of machine precision, so clusters within ``radius`` are
    refined together and accepted as one root when the polynomial and its
    first m - 1 derivatives vanish there.

    Parameters
    ----------
    clusters : list of (complex, int)
        Output of `cluster_roots`
    coeffs : ndarray
        Coefficients, lowest degree first
    radius : float
        Relative distance below which clusters are merge candidates
    rtol : float, optional
        Relative size allowed for the vanishing derivatives

    Returns
    -------
    list of (complex, int)
    """
    remaining = list(clusters)
    merged = []
    while remaining:
        seed, mult = remaining.pop(0)
        atol = radius * max(1.0, abs(seed))
        near = [c for c in remaining if abs(c[0] - seed) <= atol]
        if near or mult > 1:
            total = mult + sum(m for _, m in near)
            centroid = (seed * mult + sum(z * m for z, m in near)) / total
            root = _refine_multiple(centroid, coeffs, total)
            if _vanishes_to_order(root, coeffs, total, rtol):
                remaining = [c for c in remaining if c not in near]
                merged.append((root, total))
                continue
        merged.append((seed, mult))
    return merged


def find_roots(p, tol=None, **kwargs):
    """ All complex roots of an integer polynomial

    Parameters
    ----------
    p : IntPolynomial
        Polynomial of degree at least 1
    tol : float, optional
        Step tolerance of the iteration and bound on the relative residual
    max_iter : int, optional
        Iteration limit
    separation : float, optional
        Roots closer than this are merged into one multiple root
    merge_radius : float, optional
        Clusters closer than this are tested for a shared multiple root
    strict : bool, optional
        Raise instead of warning when some root misses the residual bound

    Returns
    -------
    ComplexRootSet

    Raises
    ------
    ValueError
        ``p`` is constant
    ConvergenceError
        ``strict`` is set and ``|p(root)| > tol * max|coeff|`` for some root
    """
    tol = config.ROOT_TOL if tol is None else tol
    max_iter = kwargs.get('max_iter', config.ROOT_MAX_ITER)
    separation = kwargs.get('separation', config.SEPARATION)
    merge_radius = kwargs.get('merge_radius', config.MERGE_RADIUS)
    strict = kwargs.get('strict', False)
    if p.degree < 1:
        raise ValueError(f'Cannot find roots of the constant {p}')

    coeffs = np.array(p.coeffs, dtype=float)
    zeros = int(np.argmax(coeffs != 0))
    coeffs = coeffs[zeros:]
    degree = len(coeffs) - 1

    approx = np.zeros(0, dtype=complex)
    if degree == 1:
        approx = np.array([-coeffs[0] / coeffs[1]], dtype=complex)
    elif degree > 1:
        approx, _ = _aberth(coeffs, tol, max_iter)
        approx = _polish(approx, coeffs)
    approx = _snap_real(approx, separation)
    clusters = cluster_roots(approx, separation)
    if degree > 1:
        clusters = [
            (complex(_snap_real(np.array([z]), separation)[0]), m)
            for z, m in merge_clusters(clusters, coeffs, merge_radius)]
    if zeros:
        clusters.append((0j, zeros))
    clusters.sort(key=lambda item: (round(abs(item[0]), 12),
                                    np.angle(item[0])))

    scale = float(np.max(np.abs(coeffs)))
    full = np.array(p.coeffs, dtype=float)
    residual = max((abs(P.polyval(root, full)) / scale
                    for root, _ in clusters), default=0.0)
    converged = residual <= tol
    if not converged:
        msg = (f'Root finding for a degree {p.degree} polynomial did not '
               f'converge, residual {residual:.2e}')
        if strict:
            raise ConvergenceError(msg)
        log.warning(msg)
    return ComplexRootSet(clusters, p.degree, residual, converged)


def strip_known_factors(p):
    """ Divide out powers of ``1 - 2x``, ``1 - x`` and ``1 + x`` exactly

    Parameters
    ----------
    p : IntPolynomial
        Polynomial with ``p(0) = 1``

    Returns
    -------
    poles : list of (Fraction, int)
        Exact roots found with their multiplicities
    rest : IntPolynomial
        The remaining cofactor
    """
    poles = []
    rest = p
    for factor, pole in KNOWN_FACTORS:
        mult = 0
        while rest.degree >= 1:
            quotient = poly_exact_div(rest, factor)
            if quotient is None:
                break
            rest = quotient
            mult += 1
        if mult:
            poles.append((pole, mult))
    return poles, rest
