"""Matrices over an entry algebra and their norm/structure metadata."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .algebra import AlgebraElement, EntryAlgebra, Functions
from .errors import (
    IncompatibleOperandsError,
    InvalidIntervalError,
    NumericFailureError,
    PreconditionViolationError,
)

__all__ = [
    "CStarMatrix",
    "Bandwidths",
    "mat_mul",
    "matricial_norm",
    "spectral_norm_2",
    "rho_upper",
    "op_norm_upper",
    "operator_norm",
    "bandwidths",
    "graph_distances",
    "scale_shift_hermitian",
    "is_hermitian",
    "pointwise_invertible",
]

POWER_TOL = 1e-10
POWER_MAXITER = 5000
HERMITIAN_TOL = 1e-12


class CStarMatrix:
    """An n x n matrix with entries in one :class:`EntryAlgebra`.

    ``data`` has shape ``(n, n) + algebra.elem_shape``; ``pattern`` is the
    boolean sparsity mask. Entries outside the mask are forced to zero.
    """

    __slots__ = ("algebra", "data", "pattern")

    def __init__(self, algebra: EntryAlgebra, data, pattern=None):
        data = algebra.validate(data)
        if data.ndim < 2 or data.shape[0] != data.shape[1]:
            raise IncompatibleOperandsError(f"matrix data must be square, got {data.shape}")
        if data.shape[2:] != algebra.elem_shape:
            raise IncompatibleOperandsError(
                f"entry shape {data.shape[2:]} does not match {algebra!r}")
        if pattern is None:
            pattern = ~algebra.is_zero(data)
        else:
            pattern = np.array(pattern, dtype=bool)
            if pattern.shape != data.shape[:2]:
                raise IncompatibleOperandsError("pattern shape does not match matrix order")
            data = data.copy()
            data[~pattern] = 0
        self.algebra = algebra
        self.data = data
        self.pattern = pattern

    # constructors ---------------------------------------------------------
    @classmethod
    def zeros(cls, n, algebra):
        return cls(algebra, algebra.zeros((n, n)), np.zeros((n, n), dtype=bool))

    @classmethod
    def identity(cls, n, algebra):
        data = algebra.zeros((n, n))
        idx = np.arange(n)
        data[idx, idx] = algebra.ones()
        return cls(algebra, data, np.eye(n, dtype=bool))

    @classmethod
    def from_entries(cls, rows):
        """Build from a nested list of elements; ``None`` or 0 means zero."""
        n = len(rows)
        algebra = next(e.algebra for row in rows for e in row
                       if isinstance(e, AlgebraElement))
        data = algebra.zeros((n, n))
        pattern = np.zeros((n, n), dtype=bool)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise IncompatibleOperandsError("rows must all have length n")
            for j, e in enumerate(row):
                if isinstance(e, AlgebraElement):
                    if e.algebra != algebra:
                        raise IncompatibleOperandsError("mixed entry algebras")
                    data[i, j] = e.data
                    pattern[i, j] = True
        return cls(algebra, data, pattern)

    # basic protocol -------------------------------------------------------
    @property
    def n(self) -> int:
        return self.data.shape[0]

    def entry(self, i, j) -> AlgebraElement:
        return self.algebra.element(self.data[i, j])

    def _check(self, other):
        if not isinstance(other, CStarMatrix):
            raise IncompatibleOperandsError(f"expected CStarMatrix, got {type(other).__name__}")
        if other.algebra != self.algebra or other.n != self.n:
            raise IncompatibleOperandsError(
                f"incompatible operands: {self.algebra!r} n={self.n} vs "
                f"{other.algebra!r} n={other.n}")

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __add__(self, other):
        self._check(other)
        return CStarMatrix(self.algebra, self.data + other.data, self.pattern | other.pattern)

    def __sub__(self, other):
        self._check(other)
        return CStarMatrix(self.algebra, self.data - other.data, self.pattern | other.pattern)

    def __neg__(self):
        return CStarMatrix(self.algebra, -self.data, self.pattern)

    def scale(self, alpha):
        return CStarMatrix(self.algebra, self.algebra.scale(self.data, alpha), self.pattern)

    def __mul__(self, alpha):
        if isinstance(alpha, (int, float, complex, np.number)):
            return self.scale(alpha)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, alpha):
        return self.scale(1.0 / alpha)

    def adjoint(self):
        data = self.algebra.adjoint(np.swapaxes(self.data, 0, 1))
        return CStarMatrix(self.algebra, data, self.pattern.T)

    def to_complex(self) -> np.ndarray:
        """Flattened complex matrix (blocks and the quaternion embedding)."""
        return self.algebra.to_complex(self.data)

    @classmethod
    def from_complex(cls, algebra, M, pattern=None):
        return cls(algebra, algebra.from_complex(np.asarray(M)), pattern)

    def __repr__(self):
        return f"CStarMatrix(n={self.n}, algebra={self.algebra!r}, nnz={int(self.pattern.sum())})"


@dataclass(frozen=True)
class Bandwidths:
    m: int
    p: int
    s: int


def mat_mul(A: CStarMatrix, B: CStarMatrix) -> CStarMatrix:
    A._check(B)
    pattern = (A.pattern.astype(np.int64) @ B.pattern.astype(np.int64)) > 0
    return CStarMatrix(A.algebra, A.algebra.matmul(A.data, B.data), pattern)


def matricial_norm(A: CStarMatrix) -> np.ndarray:
    """The real nonnegative matrix of entry norms."""
    out = np.zeros((A.n, A.n))
    if A.pattern.any():
        out[A.pattern] = A.algebra.norm(A.data[A.pattern])
    return out


def _power(B, shift, tol, maxiter, symmetric=False):
    x, value, iters, converged = kernels.power_iteration(
        np.ascontiguousarray(B, dtype=np.float64), float(shift), float(tol), int(maxiter),
        symmetric)
    if not converged:
        raise NumericFailureError(f"power iteration did not converge in {maxiter} steps")
    return value


def spectral_norm_2(M, tol=POWER_TOL, maxiter=POWER_MAXITER) -> float:
    """Largest singular value of a nonnegative matrix.

    Power iteration on M^T M; the returned value is the Collatz-Wielandt upper
    estimate ``max_i (Bx)_i / x_i`` at the final iterate, so it never falls
    below the true norm.
    """
    M = np.asarray(M, dtype=np.float64)
    if M.size == 0 or not M.any():
        return 0.0
    return float(np.sqrt(_power(M.T @ M, 0.0, tol, maxiter, symmetric=True)))


def rho_upper(M, tol=POWER_TOL, maxiter=POWER_MAXITER) -> float:
    """Perron root of a nonnegative matrix (upper Collatz-Wielandt estimate).

    Iterates with M + I so that periodic (e.g. bipartite) patterns converge.
    """
    M = np.asarray(M, dtype=np.float64)
    if np.any(M < 0):
        raise ValueError("rho_upper needs an entrywise nonnegative matrix")
    n = M.shape[0]
    v = np.ones(n)
    for _ in range(n):
        v = M @ v
        if not v.any():
            return 0.0  # nilpotent
    return float(_power(M, 1.0, tol, maxiter))


def op_norm_upper(A: CStarMatrix) -> float:
    """Certified upper bound ``||A|| <= ||Â||_2``."""
    return spectral_norm_2(matricial_norm(A))


def operator_norm(A: CStarMatrix) -> float:
    """The C*-norm of A computed directly, where that is possible.

    Complex, block and quaternion matrices use the dense spectral norm of the
    flattened complex matrix; function matrices use ``max_t ||A(t)||_2`` over
    the sample grid.
    """
    if isinstance(A.algebra, Functions):
        stack = np.moveaxis(A.data, -1, 0)
        return float(np.linalg.norm(stack, ord=2, axis=(-2, -1)).max())
    return float(np.linalg.norm(A.to_complex(), ord=2))


def bandwidths(A: CStarMatrix) -> Bandwidths:
    i, j = np.nonzero(A.pattern)
    p = int(max(0, (i - j).max())) if i.size else 0
    s = int(max(0, (j - i).max())) if i.size else 0
    return Bandwidths(max(p, s), p, s)


def graph_distances(A: CStarMatrix) -> np.ndarray:
    """Directed shortest-path lengths in the sparsity graph; ``inf`` when
    unreachable."""
    return kernels.bfs_distances(np.ascontiguousarray(A.pattern, dtype=np.uint8))


def is_hermitian(A: CStarMatrix, tol=HERMITIAN_TOL) -> bool:
    if not np.array_equal(A.pattern, A.pattern.T):
        return False
    diff = A.data - A.algebra.adjoint(np.swapaxes(A.data, 0, 1))
    scale = matricial_norm(A).max(initial=0.0)
    return bool(A.algebra.norm(diff).max(initial=0.0) <= tol * max(scale, 1e-300))


def scale_shift_hermitian(A: CStarMatrix, alpha: float, beta: float) -> CStarMatrix:
    """Affine map sending a spectrum inside [alpha, beta] into [-1, 1]."""
    if not beta > alpha:
        raise InvalidIntervalError(f"need beta > alpha, got [{alpha}, {beta}]")
    if not is_hermitian(A):
        raise PreconditionViolationError("scale_shift_hermitian needs a Hermitian matrix")
    width = beta - alpha
    out = A.scale(2.0 / width)
    shift = (beta + alpha) / width
    if shift != 0:
        out = out - CStarMatrix.identity(A.n, A.algebra).scale(shift)
    return out


def pointwise_invertible(A: CStarMatrix, tol=1e-12) -> bool:
    """For a matrix over C([a, b]): is A(t) invertible at every grid point?

    A matrix over C(X) is invertible exactly when every A(t) is; this checks
    that the smallest singular value stays above ``tol`` on the sample grid.
    """
    if not isinstance(A.algebra, Functions):
        raise PreconditionViolationError("pointwise_invertible needs function entries")
    stack = np.moveaxis(A.data, -1, 0)
    smin = np.linalg.svd(stack, compute_uv=False)[:, -1]
    return bool(smin.min() > tol)
