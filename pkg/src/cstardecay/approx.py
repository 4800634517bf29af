"""Scalar polynomial approximation: Chebyshev interpolation, Taylor
coefficients on a circle, and maxima of |f| on Bernstein ellipses and
circles."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import chebyshev as npcheb

from .algebra import cheb_coeffs_from_lobatto, lobatto_nodes
from .errors import (
    ApproximationFailureError,
    InvalidRadiusError,
    RegionViolationError,
)

__all__ = [
    "ScalarFunction",
    "as_scalar_function",
    "ChebyshevSeries",
    "TaylorSeries",
    "BernsteinEllipse",
    "DiskRegion",
    "cheb_interpolate",
    "cheb_tail_bound",
    "ellipse_max",
    "disk_max",
    "taylor_coeffs",
    "FUNCTIONS",
]

DEFAULT_SAMPLES = 720


@dataclass(frozen=True)
class ScalarFunction:
    """A scalar analytic function plus what is known about where it stops
    being analytic.

    ``singularities`` lists poles and branch points (branch cuts are assumed
    to run away from the origin along a ray). ``None`` means unknown, in which
    case region checks fall back to a Cauchy-integral consistency test.
    """

    func: Callable
    name: str = "f"
    singularities: Optional[tuple] = None
    real_on_real: bool = True

    def __call__(self, z):
        return self.func(z)

    def compose_affine(self, scale, shift=0.0, name=None):
        """Return z -> f(scale * z + shift)."""
        f = self.func
        sing = None
        if self.singularities is not None:
            sing = tuple((s - shift) / scale for s in self.singularities)
        return ScalarFunction(lambda z: f(scale * np.asarray(z) + shift),
                              name or f"{self.name}({scale:g}z+{shift:g})", sing,
                              self.real_on_real and np.isreal(scale) and np.isreal(shift))


def as_scalar_function(f) -> ScalarFunction:
    return f if isinstance(f, ScalarFunction) else ScalarFunction(f, getattr(f, "__name__", "f"))


def _log_shift5(z):
    z = np.asarray(z)
    if np.iscomplexobj(z):
        return np.log(z + 5)
    return np.log(z.astype(float) + 5)


FUNCTIONS = {
    "exp": ScalarFunction(np.exp, "exp", ()),
    "log_shift5": ScalarFunction(_log_shift5, "log_shift5", (-5.0,)),
    "identity": ScalarFunction(lambda z: np.asarray(z) * 1.0, "identity", ()),
    "inverse": ScalarFunction(lambda z: 1.0 / np.asarray(z), "inverse", (0.0,)),
}


@dataclass
class ChebyshevSeries:
    """Chebyshev expansion on [-1, 1]: sum_j coeffs[j] T_j(x)."""

    coeffs: np.ndarray
    func: Optional[ScalarFunction] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        self.coeffs = np.atleast_1d(np.asarray(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return npcheb.chebval(x, self.coeffs)

    def truncate(self, k: int) -> "ChebyshevSeries":
        c = self.coeffs[: k + 1]
        if len(c) < k + 1:
            c = np.concatenate([c, np.zeros(k + 1 - len(c), dtype=c.dtype)])
        return replace(self, coeffs=c.copy())


@dataclass
class TaylorSeries:
    """Taylor expansion about 0, sum_j coeffs[j] z^j, computed on |z| = radius."""

    coeffs: np.ndarray
    radius: float

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)


@dataclass(frozen=True)
class BernsteinEllipse:
    """Ellipse with foci -1, 1 whose semi-axes sum to ``chi``."""

    chi: float

    def __post_init__(self):
        if not self.chi > 1:
            raise ValueError(f"Bernstein ellipse needs chi > 1, got {self.chi}")

    @property
    def semi_major(self):
        return 0.5 * (self.chi + 1.0 / self.chi)

    @property
    def semi_minor(self):
        return 0.5 * (self.chi - 1.0 / self.chi)

    def points(self, samples):
        theta = 2 * np.pi * np.arange(samples) / samples
        return self.semi_major * np.cos(theta) + 1j * self.semi_minor * np.sin(theta)

    def contains(self, z) -> bool:
        """Closed region test: |z - 1| + |z + 1| <= chi + 1/chi."""
        z = complex(z)
        return abs(z - 1) + abs(z + 1) <= 2 * self.semi_major * (1 + 1e-14)


@dataclass(frozen=True)
class DiskRegion:
    """Disk |z| <= r enclosing a field of values, analytic out to radius R."""

    r: float
    R: float

    def __post_init__(self):
        if not 0 <= self.r < self.R:
            raise InvalidRadiusError(f"need 0 <= r < R, got r={self.r}, R={self.R}")

    @property
    def ratio(self):
        return self.r / self.R


# ---------------------------------------------------------------------------
# Region checks
# ---------------------------------------------------------------------------

def _eval_boundary(f, z):
    with np.errstate(all="ignore"):
        vals = np.asarray(f(z), dtype=complex) * np.ones_like(z)
    if not np.all(np.isfinite(vals)):
        raise RegionViolationError(f"{f.name} is not finite on the region boundary")
    return vals


def _cauchy_check(f, z, dz, vals, what):
    # trapezoid rule for (1/2 pi i) \oint f(z)/(z - z0) dz at interior points
    for z0 in (0.0, 0.3 * z.real.max(), 0.3 * z.real.min(), 0.3j * z.imag.max()):
        integral = np.mean(vals * dz / (z - z0)) / (2j * np.pi)
        with np.errstate(all="ignore"):
            ref = complex(np.asarray(f(np.array([z0], dtype=complex)))[0])
        scale = max(np.abs(vals).max(), 1.0)
        if not np.isfinite(ref) or abs(integral - ref) > 1e-6 * scale:
            raise RegionViolationError(f"{f.name} is not analytic inside the {what}")


def _check_singularities(f, inside, what):
    if f.singularities is None:
        return False
    for s in f.singularities:
        if inside(s):
            raise RegionViolationError(f"{f.name} has a singularity at {s} inside the {what}")
    return True


# ---------------------------------------------------------------------------
# Chebyshev machinery
# ---------------------------------------------------------------------------

def _lobatto_coeffs(f, N):
    x = lobatto_nodes(N + 1)
    with np.errstate(all="ignore"):
        v = np.asarray(f(x)) * np.ones(N + 1)
    if not np.all(np.isfinite(v)):
        raise ApproximationFailureError(f"{f.name} is not finite on [-1, 1]")
    if np.iscomplexobj(v) and np.all(v.imag == 0):
        v = v.real
    return cheb_coeffs_from_lobatto(v)


def cheb_interpolate(f, tol: float = 1e-14, kmax: int = 1024,
                     degree: Optional[int] = None) -> ChebyshevSeries:
    """Chebyshev interpolant at Lobatto points with degree doubling.

    Doubling stops once the last two coefficients fall below
    ``tol * max|c_j|``; trailing coefficients under that threshold are then
    chopped. ``degree`` truncates (or zero-pads) the converged expansion.
    """
    f = as_scalar_function(f)
    if tol <= 0:
        raise ValueError("tol must be positive")
    N = 16
    while True:
        c = _lobatto_coeffs(f, N)
        scale = np.abs(c).max()
        if scale == 0 or np.all(np.abs(c[-2:]) < tol * scale):
            break
        if N >= kmax:
            raise ApproximationFailureError(
                f"Chebyshev coefficients of {f.name} did not decay to {tol:g} by degree {kmax}")
        N = min(2 * N, kmax)
    big = np.flatnonzero(np.abs(c) >= tol * scale)
    last = int(big[-1]) if big.size else 0
    series = ChebyshevSeries(c[: last + 1].copy(), f)
    if degree is not None:
        series = series.truncate(degree)
    return series


def cheb_tail_bound(s: ChebyshevSeries, fullseries_tol: float = 1e-15,
                    nmax: int = 1024) -> float:
    """Sum of |c_j| over j > deg(s) for the function behind ``s``.

    The expansion is recomputed at higher degree until its last two
    coefficients drop below ``fullseries_tol * max|c|``; the sum then runs
    until two consecutive coefficients are below that level (the round-off
    plateau). For Hermitian A with spectrum in [-1, 1], ||T_j(A)|| <= 1, so
    the result bounds the norm of the matrix truncation error.
    """
    if s.func is None:
        raise ValueError("tail bound needs the series' underlying function")
    k = s.degree
    N = max(32, 2 * (k + 1))
    while True:
        c = _lobatto_coeffs(s.func, N)
        thresh = fullseries_tol * np.abs(c).max()
        if np.all(np.abs(c[-2:]) < thresh) or N >= nmax:
            break
        N *= 2
    tail = 0.0
    small = 0
    for cj in np.abs(c[k + 1:]):
        if cj < thresh:
            small += 1
            if small == 2:
                break
        else:
            small = 0
        tail += cj
    return float(tail)


# ---------------------------------------------------------------------------
# Maxima on contours and Taylor coefficients
# ---------------------------------------------------------------------------

def ellipse_max(f, e: BernsteinEllipse, samples: int = DEFAULT_SAMPLES) -> float:
    """max |f| on the Bernstein ellipse (boundary suffices by the maximum
    modulus principle). Raises RegionViolationError if f is not analytic
    inside."""
    f = as_scalar_function(f)
    if samples < 64:
        raise ValueError("need at least 64 boundary samples")
    if not _check_singularities(f, e.contains, f"Bernstein ellipse chi={e.chi:g}"):
        m = max(samples, 256)
        z = e.points(m)
        theta = 2 * np.pi * np.arange(m) / m
        dz = 2 * np.pi * (-e.semi_major * np.sin(theta) + 1j * e.semi_minor * np.cos(theta))
        _cauchy_check(f, z, dz, _eval_boundary(f, z), f"Bernstein ellipse chi={e.chi:g}")
    return float(np.abs(_eval_boundary(f, e.points(samples))).max())


def _circle(R, samples):
    return R * np.exp(2j * np.pi * np.arange(samples) / samples)


def _check_disk(f, R):
    what = f"disk of radius {R:g}"
    if not _check_singularities(f, lambda s: abs(s) <= R * (1 + 1e-14), what):
        m = 512
        z = _circle(R, m)
        _cauchy_check(f, z, 2j * np.pi * z, _eval_boundary(f, z), what)


def disk_max(f, R: float, samples: int = DEFAULT_SAMPLES) -> float:
    """max |f| on the circle |z| = R."""
    f = as_scalar_function(f)
    if not R > 0:
        raise InvalidRadiusError("radius must be positive")
    _check_disk(f, R)
    return float(np.abs(_eval_boundary(f, _circle(R, samples))).max())


def taylor_coeffs(f, k: int, Rs: float) -> TaylorSeries:
    """Taylor coefficients a_0..a_k by the trapezoid rule for Cauchy's
    integral on |z| = Rs, with max(4k, 256) nodes."""
    f = as_scalar_function(f)
    if not Rs > 0:
        raise InvalidRadiusError("radius must be positive")
    _check_disk(f, Rs)
    m = max(4 * k, 256)
    vals = _eval_boundary(f, _circle(Rs, m))
    a = np.fft.fft(vals)[: k + 1] / m
    a = a / Rs ** np.arange(k + 1)
    if f.real_on_real and np.all(np.abs(a.imag) <= 1e-12 * max(np.abs(a).max(), 1e-300)):
        a = a.real.copy()
    return TaylorSeries(a, float(Rs))
