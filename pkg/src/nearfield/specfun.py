"""Special functions for spectral computations on spheres.

Spherical Bessel/Neumann/Hankel functions with derivatives, orthonormal
complex spherical harmonics (Condon-Shortley phase), and product quadrature
rules on spheres that integrate harmonics exactly up to a requested degree.

Conventions used throughout the package:

* ``Y_lm`` is orthonormal on the unit sphere, ``conj(Y_lm) = (-1)^m Y_l,-m``,
  ``Y_00 = 1/sqrt(4 pi)``.
* Harmonic coefficient vectors are packed as ``index = l^2 + l + m`` for
  ``0 <= l <= lmax``, ``-l <= m <= l``.
"""

import numpy as np
from scipy import special as _sp
from scipy.optimize import brentq

from .errors import DomainError

__all__ = [
    "sph_bessel_j",
    "sph_bessel_y",
    "sph_hankel1",
    "wronskian_jy",
    "n_harmonics",
    "harmonic_index",
    "harmonic_degrees",
    "sph_harm_lm",
    "sph_harm_matrix",
    "sphere_quadrature",
    "gauss_legendre_colatitude",
    "jl_zero_distance",
]


def _check_positive(x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise DomainError("argument must be positive")
    return x


def sph_bessel_j(l, x, derivative=False):
    """Spherical Bessel function j_l(x) (or j_l'(x)) for x > 0."""
    x = _check_positive(x)
    return _sp.spherical_jn(l, x, derivative=derivative)


def sph_bessel_y(l, x, derivative=False):
    """Spherical Neumann function y_l(x) (or y_l'(x)) for x > 0."""
    x = _check_positive(x)
    return _sp.spherical_yn(l, x, derivative=derivative)


def sph_hankel1(l, x, derivative=False):
    """Outgoing spherical Hankel function h_l^(1) = j_l + i y_l for x > 0."""
    x = _check_positive(x)
    return (_sp.spherical_jn(l, x, derivative=derivative)
            + 1j * _sp.spherical_yn(l, x, derivative=derivative))


def wronskian_jy(l, x):
    """j_l(x) y_l'(x) - j_l'(x) y_l(x); identically 1/x^2."""
    x = _check_positive(x)
    return (_sp.spherical_jn(l, x) * _sp.spherical_yn(l, x, derivative=True)
            - _sp.spherical_jn(l, x, derivative=True) * _sp.spherical_yn(l, x))


# ----------------------------------------------------------------------------
# spherical harmonics
# ----------------------------------------------------------------------------

def n_harmonics(lmax):
    return (lmax + 1) ** 2


def harmonic_index(l, m):
    """Flat index of (l, m) in the packed coefficient vector."""
    if abs(m) > l:
        raise IndexError(f"harmonic order |m|={abs(m)} exceeds degree l={l}")
    return l * l + l + m


def harmonic_degrees(lmax):
    """Array mapping flat coefficient index -> degree l."""
    return np.repeat(np.arange(lmax + 1), 2 * np.arange(lmax + 1) + 1)


def _normalized_legendre(lmax, costheta, sintheta):
    """Orthonormal associated Legendre values Q_lm with Condon-Shortley phase.

    Returns array of shape (n_points, (lmax+1)(lmax+2)/2) holding Q_lm for
    m >= 0, packed by m-major blocks: Y_lm = Q_lm * exp(i m phi).
    """
    npts = costheta.shape[0]
    out = {}
    q_mm = np.full(npts, 1.0 / np.sqrt(4.0 * np.pi))
    for m in range(lmax + 1):
        if m > 0:
            q_mm = -np.sqrt((2 * m + 1) / (2.0 * m)) * sintheta * q_mm
        out[(m, m)] = q_mm
        if m + 1 <= lmax:
            out[(m + 1, m)] = np.sqrt(2 * m + 3.0) * costheta * q_mm
        for l in range(m + 2, lmax + 1):
            a = np.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b = np.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
            out[(l, m)] = a * (costheta * out[(l - 1, m)] - b * out[(l - 2, m)])
    return out


def sph_harm_matrix(lmax, theta, phi):
    """All orthonormal Y_lm at the given angles.

    Returns a complex array of shape (n_points, (lmax+1)^2), columns packed
    by ``harmonic_index``.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    if np.any(theta < 0.0) or np.any(theta > np.pi):
        raise DomainError("colatitude must lie in [0, pi]")
    ct, st = np.cos(theta), np.sin(theta)
    q = _normalized_legendre(lmax, ct, st)
    y = np.empty((theta.shape[0], n_harmonics(lmax)), dtype=complex)
    expi = {m: np.exp(1j * m * phi) for m in range(lmax + 1)}
    for l in range(lmax + 1):
        for m in range(l + 1):
            val = q[(l, m)] * expi[m]
            y[:, harmonic_index(l, m)] = val
            if m > 0:
                y[:, harmonic_index(l, -m)] = (-1) ** m * np.conj(val)
    return y


def sph_harm_lm(l, m, theta, phi):
    """Single orthonormal spherical harmonic Y_lm(theta, phi)."""
    if abs(m) > l:
        raise IndexError(f"harmonic order |m|={abs(m)} exceeds degree l={l}")
    scalar = np.isscalar(theta) and np.isscalar(phi)
    theta, phi = np.broadcast_arrays(np.atleast_1d(theta), np.atleast_1d(phi))
    col = sph_harm_matrix(l, theta.ravel().astype(float),
                          phi.ravel().astype(float))[:, harmonic_index(l, m)]
    col = col.reshape(theta.shape)
    return col[()] if scalar else col


# ----------------------------------------------------------------------------
# quadrature on spheres
# ----------------------------------------------------------------------------

def gauss_legendre_colatitude(n):
    """Gauss-Legendre nodes in cos(theta) mapped to colatitudes and weights."""
    x, w = np.polynomial.legendre.leggauss(n)
    theta = np.arccos(x[::-1])
    return theta, w[::-1]


def sphere_quadrature(degree):
    """Product quadrature on the unit sphere exact for harmonics up to `degree`.

    Gauss-Legendre in colatitude (exactness 2n-1 >= degree) times a uniform
    azimuthal rule (exact for orders < n_phi). Returns flattened
    (theta, phi, angular_weight) arrays; weights sum to 4 pi.
    """
    n_theta = degree // 2 + 1
    n_phi = degree + 1
    theta, wt = gauss_legendre_colatitude(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    wphi = 2.0 * np.pi / n_phi
    th = np.repeat(theta, n_phi)
    ph = np.tile(phi, n_theta)
    w = np.repeat(wt * wphi, n_phi)
    return th, ph, w


# ----------------------------------------------------------------------------
# zeros of j_l, for eigenvalue-proximity checks
# ----------------------------------------------------------------------------

def _jl_zeros_upto(l, xmax):
    """All positive zeros of j_l in (0, xmax], by sign-change scan + brentq."""
    # first zero exceeds l + 1.8*l^(1/3); start the scan safely below it
    lo = max(1e-3, 0.5 * (l + 1.0))
    if lo >= xmax:
        lo = 1e-3
    grid = np.linspace(lo, xmax, max(16, int((xmax - lo) / 0.05) + 2))
    vals = _sp.spherical_jn(l, grid)
    zeros = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            zeros.append(grid[i])
        elif vals[i] * vals[i + 1] < 0.0:
            zeros.append(brentq(lambda x: _sp.spherical_jn(l, x),
                                grid[i], grid[i + 1], xtol=1e-14))
    return zeros


def jl_zero_distance(x, lmax):
    """Distance from x > 0 to the nearest zero of any j_l with l <= lmax."""
    x = float(_check_positive(x))
    best = np.inf
    for l in range(lmax + 1):
        for z in _jl_zeros_upto(l, x + 4.0):
            best = min(best, abs(x - z))
    return best
