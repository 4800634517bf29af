"""Evaluation of f(A) for matrices over an entry algebra.

Three routes are provided: a Chebyshev expansion for Hermitian A (after
scaling the spectrum into [-1, 1]), a truncated Taylor series on a disk for
general A, and real-coefficient power series for quaternion matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import Quaternions
from .approx import (
    ChebyshevSeries,
    as_scalar_function,
    cheb_interpolate,
    cheb_tail_bound,
    disk_max,
    taylor_coeffs,
)
from .errors import (
    ApproximationFailureError,
    IncompatibleOperandsError,
    InvalidRadiusError,
    PreconditionViolationError,
)
from .matrix import CStarMatrix, is_hermitian, matricial_norm, op_norm_upper

__all__ = [
    "MatfunResult",
    "eval_poly_matrix",
    "eval_power_series",
    "matfun_hermitian",
    "matfun_taylor",
    "matfun_quaternion",
    "entry_norm_matrix",
    "inverse_unit_triangular",
    "taylor_certificate",
]

TAYLOR_KMAX = 256


@dataclass
class MatfunResult:
    """f(A) together with how it was obtained.

    ``certificate`` bounds the norm of the truncation error of the polynomial
    surrogate (Chebyshev tail or Taylor-disk estimate); ``scale`` is the
    spectral enclosure radius used (||Â||_2 of the input).
    """

    matrix: CStarMatrix
    method: str
    degree: int
    certificate: float
    scale: float


def eval_poly_matrix(A: CStarMatrix, s: ChebyshevSeries) -> CStarMatrix:
    """sum_j c_j T_j(A) by the three-term recurrence T_{j+1} = 2A T_j - T_{j-1}."""
    coeffs = np.asarray(s.coeffs)
    eye = CStarMatrix.identity(A.n, A.algebra)
    out = eye.scale(coeffs[0]) if coeffs[0] != 0 else CStarMatrix.zeros(A.n, A.algebra)
    if len(coeffs) == 1:
        return out
    t_prev, t_cur = eye, A
    for j in range(1, len(coeffs)):
        if j > 1:
            t_prev, t_cur = t_cur, (A @ t_cur).scale(2.0) - t_prev
        if coeffs[j] != 0:
            out = out + t_cur.scale(coeffs[j])
    return out


def eval_power_series(A: CStarMatrix, coeffs: Sequence) -> CStarMatrix:
    """sum_j a_j A^j by Horner's rule."""
    coeffs = np.asarray(coeffs)
    eye = CStarMatrix.identity(A.n, A.algebra)
    out = eye.scale(coeffs[-1])
    for a in coeffs[-2::-1]:
        out = A @ out
        if a != 0:
            out = out + eye.scale(a)
    return out


def _coeff_cast(A, coeffs):
    coeffs = np.asarray(coeffs)
    if isinstance(A.algebra, Quaternions) and np.iscomplexobj(coeffs):
        if np.any(np.abs(coeffs.imag) > 1e-12 * max(np.abs(coeffs).max(), 1e-300)):
            raise IncompatibleOperandsError("quaternion matrices need real series coefficients")
        coeffs = coeffs.real
    return coeffs


def matfun_hermitian(A: CStarMatrix, f, tol: float = 1e-14,
                     degree: Optional[int] = None, kmax: int = 1024) -> MatfunResult:
    """f(A) for Hermitian A via Chebyshev interpolation of z -> f(beta z),
    beta = ||Â||_2, evaluated at A / beta."""
    f = as_scalar_function(f)
    if not is_hermitian(A):
        raise PreconditionViolationError("matfun_hermitian needs a Hermitian matrix")
    beta = op_norm_upper(A)
    if beta == 0:
        value = complex(np.asarray(f(np.array([0.0])))[0])
        eye = CStarMatrix.identity(A.n, A.algebra)
        return MatfunResult(eye.scale(value.real if value.imag == 0 else value),
                            "chebyshev", 0, 0.0, 0.0)
    g = f.compose_affine(beta)
    s = cheb_interpolate(g, tol=tol, kmax=kmax, degree=degree)
    s.coeffs = _coeff_cast(A, s.coeffs)
    value = eval_poly_matrix(A.scale(1.0 / beta), s)
    return MatfunResult(value, "chebyshev", s.degree, cheb_tail_bound(s), beta)


def taylor_certificate(M: float, r: float, R: float, k: int) -> float:
    """Taylor-disk truncation bound M(R) / (1 - r/R) * (r/R)^(k+1)."""
    q = r / R
    return M / (1.0 - q) * q ** (k + 1)


def matfun_taylor(A: CStarMatrix, f, R: float, k: Optional[int] = None,
                  tol: float = 1e-14) -> MatfunResult:
    """f(A) as a truncated Taylor series about 0.

    Needs R > r = ||Â||_2 and f analytic on |z| <= R. If ``k`` is omitted the
    smallest degree whose certificate is below ``tol`` is used (at most 256).
    """
    f = as_scalar_function(f)
    r = op_norm_upper(A)
    if not R > r:
        raise InvalidRadiusError(f"need R > ||Â||_2 = {r:.6g}, got R = {R}")
    M = disk_max(f, R)
    if k is None:
        k = 0
        while taylor_certificate(M, r, R, k) >= tol:
            k += 1
            if k > TAYLOR_KMAX:
                raise ApproximationFailureError(
                    f"Taylor degree for tol={tol:g} exceeds {TAYLOR_KMAX}; enlarge R")
    series = taylor_coeffs(f, k, R)
    value = eval_power_series(A, _coeff_cast(A, series.coeffs))
    return MatfunResult(value, "taylor", k, taylor_certificate(M, r, R, k), r)


def _quaternion_series(A, f, k, R, tol):
    r = op_norm_upper(A)
    if callable(f):
        f = as_scalar_function(f)
        if R is None:
            sing = [abs(s) for s in (f.singularities or ())]
            R = 0.5 * (r + min(sing)) if sing else max(2.0 * r, 1.0)
        if not R > r:
            raise InvalidRadiusError(f"series radius {R} does not exceed ||Â||_2 = {r:.6g}")
        M = disk_max(f, R)
        if k is None:
            k = 0
            while taylor_certificate(M, r, R, k) >= tol:
                k += 1
                if k > TAYLOR_KMAX:
                    raise ApproximationFailureError("series degree exceeds 256; enlarge R")
        coeffs = taylor_coeffs(f, k, R).coeffs
        cert = taylor_certificate(M, r, R, k)
    else:
        coeffs = np.asarray(f)
        cert = float("nan")
    coeffs = np.asarray(coeffs)
    if np.iscomplexobj(coeffs):
        if np.any(np.abs(coeffs.imag) > 1e-12 * max(np.abs(coeffs).max(), 1e-300)):
            raise IncompatibleOperandsError("quaternion functions need real power-series coefficients")
        coeffs = coeffs.real
    return coeffs, cert, r


def matfun_quaternion(A: CStarMatrix, f, k: Optional[int] = None, R: Optional[float] = None,
                      tol: float = 1e-14, route: str = "direct") -> MatfunResult:
    """f(A) for a quaternion matrix and a real-coefficient power series.

    ``f`` is either a scalar function (its Taylor coefficients about 0 are
    computed on |z| = R) or an explicit sequence of real coefficients.
    ``route="direct"`` runs Horner's rule in quaternion arithmetic;
    ``route="embedding"`` applies the series to the 2n x 2n complex image and
    maps the result back.
    """
    if not isinstance(A.algebra, Quaternions):
        raise IncompatibleOperandsError("matfun_quaternion needs quaternion entries")
    coeffs, cert, r = _quaternion_series(A, f, k, R, tol)
    if route == "direct":
        value = eval_power_series(A, coeffs)
    elif route == "embedding":
        Z = A.to_complex()
        out = coeffs[-1] * np.eye(Z.shape[0], dtype=complex)
        for a in coeffs[-2::-1]:
            out = Z @ out
            out[np.diag_indices_from(out)] += a
        value = CStarMatrix.from_complex(A.algebra, out)
    else:
        raise ValueError(f"unknown route {route!r}")
    return MatfunResult(value, f"quaternion-{route}", len(coeffs) - 1, cert, r)


def entry_norm_matrix(A: CStarMatrix) -> np.ndarray:
    return matricial_norm(A)


def inverse_unit_triangular(A: CStarMatrix) -> CStarMatrix:
    """Exact inverse of a unit-diagonal triangular matrix: with N = I - A
    nilpotent, A^{-1} = sum_{j<n} N^j."""
    eye = CStarMatrix.identity(A.n, A.algebra)
    N = eye - A
    diag = np.arange(A.n)
    if N.pattern[diag, diag].any() and not N.algebra.is_zero(N.data[diag, diag]).all():
        raise PreconditionViolationError("matrix does not have unit diagonal")
    if np.tril(N.pattern, -1).any() and np.triu(N.pattern, 1).any():
        raise PreconditionViolationError("matrix is not triangular")
    out = eye
    power = eye
    for _ in range(1, A.n):
        power = power @ N
        if not power.pattern.any():
            break
        out = out + power
    return out
