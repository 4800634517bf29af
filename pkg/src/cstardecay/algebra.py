"""Entry algebras: complex scalars, k x k complex blocks, sampled functions
on an interval, and quaternions.

Each algebra is a small immutable descriptor that knows how to operate on
NumPy arrays whose trailing axes hold one element (``elem_shape``). Matrix
code stores an n x n matrix as one array of shape ``(n, n) + elem_shape`` and
calls the vectorized methods here. :class:`AlgebraElement` and its subclasses
wrap a single element for the scalar-level API.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import IncompatibleOperandsError, InvalidElementError

__all__ = [
    "EntryAlgebra",
    "ComplexScalars",
    "Blocks",
    "Functions",
    "Quaternions",
    "COMPLEX",
    "QUATERNIONS",
    "AlgebraElement",
    "ComplexScalarElement",
    "BlockElement",
    "FunctionElement",
    "QuaternionElement",
    "elem_norm",
    "elem_mul",
    "quat_to_block",
    "block_to_quat",
    "func_sup_norm",
    "lobatto_nodes",
    "cheb_coeffs_from_lobatto",
]


# ---------------------------------------------------------------------------
# Chebyshev-Lobatto helpers (shared with the approximation module)
# ---------------------------------------------------------------------------

def lobatto_nodes(npts: int) -> np.ndarray:
    """Chebyshev-Lobatto points of [-1, 1] in increasing order."""
    if npts == 1:
        return np.zeros(1)
    return -np.cos(np.pi * np.arange(npts) / (npts - 1))


def cheb_coeffs_from_lobatto(values: np.ndarray) -> np.ndarray:
    """Chebyshev coefficients of the interpolant through Lobatto samples.

    ``values`` holds samples at :func:`lobatto_nodes` (increasing order) along
    the last axis. Uses the even extension and an FFT (a DCT-I).
    """
    values = np.asarray(values)
    N = values.shape[-1] - 1
    if N == 0:
        return values.astype(np.result_type(values, float)).copy()
    # reorder to x_j = cos(pi j / N)
    v = values[..., ::-1]
    ext = np.concatenate([v, v[..., N - 1:0:-1]], axis=-1)
    c = np.fft.fft(ext, axis=-1)[..., : N + 1] / N
    if not np.iscomplexobj(values):
        c = c.real
    c[..., 0] /= 2
    c[..., N] /= 2
    return c


@lru_cache(maxsize=16)
def _refine_matrix(G: int, refine: int) -> np.ndarray:
    """Matrix P (refine x G) mapping G Lobatto samples to `refine` Lobatto
    samples of the same interpolant."""
    D = cheb_coeffs_from_lobatto(np.eye(G))  # row i: coefficients of e_i
    x = lobatto_nodes(refine)
    T = np.cos(np.outer(np.arccos(np.clip(x, -1, 1)), np.arange(G)))
    P = T @ D.T
    P.setflags(write=False)
    return P


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------

class EntryAlgebra:
    """Vectorized operations on arrays of elements of one algebra."""

    elem_shape: tuple = ()
    dtype = np.complex128
    real_only = False

    # construction ---------------------------------------------------------
    def zeros(self, lead=()):
        return np.zeros(tuple(lead) + self.elem_shape, dtype=self.dtype)

    def ones(self, lead=()):
        raise NotImplementedError

    def validate(self, data) -> np.ndarray:
        arr = np.asarray(data)
        if arr.shape[arr.ndim - len(self.elem_shape):] != self.elem_shape:
            raise InvalidElementError(
                f"{self!r} expects trailing shape {self.elem_shape}, got {arr.shape}")
        if self.real_only and np.iscomplexobj(arr):
            if np.any(arr.imag != 0):
                raise InvalidElementError(f"{self!r} components must be real")
            arr = arr.real
        return np.asarray(arr, dtype=self.dtype, order="C")

    # arithmetic -----------------------------------------------------------
    def mul(self, x, y):
        raise NotImplementedError

    def matmul(self, X, Y):
        raise NotImplementedError

    def adjoint(self, x):
        return np.conj(x)

    def scale(self, x, alpha):
        return x * alpha

    def norm(self, x) -> np.ndarray:
        raise NotImplementedError

    def is_zero(self, x) -> np.ndarray:
        axes = tuple(range(x.ndim - len(self.elem_shape), x.ndim))
        return np.all(x == 0, axis=axes) if axes else (x == 0)

    # dense complex representation ----------------------------------------
    def to_complex(self, X) -> np.ndarray:
        """Flatten an (n, m) array of elements to an ordinary complex matrix."""
        raise NotImplementedError(f"{self!r} has no finite complex representation")

    def from_complex(self, M) -> np.ndarray:
        raise NotImplementedError(f"{self!r} has no finite complex representation")

    def element(self, data) -> "AlgebraElement":
        return _wrap(self, self.validate(data))


@dataclass(frozen=True)
class ComplexScalars(EntryAlgebra):
    def ones(self, lead=()):
        return np.ones(tuple(lead), dtype=self.dtype)

    def mul(self, x, y):
        return x * y

    def matmul(self, X, Y):
        return X @ Y

    def norm(self, x):
        return np.abs(x)

    def to_complex(self, X):
        return np.array(X, dtype=complex)

    def from_complex(self, M):
        return np.array(M, dtype=complex)

    def __repr__(self):
        return "ComplexScalars()"


@dataclass(frozen=True)
class Blocks(EntryAlgebra):
    """Dense k x k complex matrices with the spectral norm."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InvalidElementError("block size must be positive")

    @property
    def elem_shape(self):
        return (self.k, self.k)

    def ones(self, lead=()):
        return np.broadcast_to(np.eye(self.k, dtype=self.dtype),
                               tuple(lead) + self.elem_shape).copy()

    def mul(self, x, y):
        return x @ y

    def matmul(self, X, Y):
        return np.einsum("ikab,kjbc->ijac", X, Y, optimize=True)

    def adjoint(self, x):
        return np.conj(np.swapaxes(x, -1, -2))

    def norm(self, x):
        x = np.asarray(x)
        if x.size == 0:
            return np.zeros(x.shape[:-2])
        return np.linalg.norm(x, ord=2, axis=(-2, -1))

    def to_complex(self, X):
        n, m, k, _ = X.shape
        return X.transpose(0, 2, 1, 3).reshape(n * k, m * k).copy()

    def from_complex(self, M):
        k = self.k
        n, m = M.shape[0] // k, M.shape[1] // k
        return M.reshape(n, k, m, k).transpose(0, 2, 1, 3).astype(complex)


@dataclass(frozen=True)
class Functions(EntryAlgebra):
    """Continuous complex functions on [a, b], stored as samples at G
    Chebyshev-Lobatto points; products are pointwise on the shared grid."""

    a: float
    b: float
    G: int = 201
    refine: int = 0  # 0 means 10 * (G - 1) + 1

    def __post_init__(self):
        if not self.b > self.a:
            raise InvalidElementError("function interval must satisfy a < b")
        if self.G < 2:
            raise InvalidElementError("grid needs at least two points")
        if self.refine and self.refine < self.G:
            raise InvalidElementError("refine must be at least G")

    @property
    def elem_shape(self):
        return (self.G,)

    @property
    def refine_points(self):
        return self.refine or 10 * (self.G - 1) + 1

    def nodes(self) -> np.ndarray:
        x = lobatto_nodes(self.G)
        return 0.5 * (self.a + self.b) + 0.5 * (self.b - self.a) * x

    def sample(self, func) -> np.ndarray:
        return self.validate(np.asarray(func(self.nodes()), dtype=complex)
                             * np.ones(self.G))

    def ones(self, lead=()):
        return np.ones(tuple(lead) + self.elem_shape, dtype=self.dtype)

    def mul(self, x, y):
        return x * y

    def matmul(self, X, Y):
        Xg = np.moveaxis(X, -1, 0)
        Yg = np.moveaxis(Y, -1, 0)
        return np.ascontiguousarray(np.moveaxis(Xg @ Yg, 0, -1))

    def norm(self, x, refine=None):
        x = np.asarray(x)
        lead = x.shape[:-1]
        flat = x.reshape(-1, self.G)
        out = np.zeros(flat.shape[0])
        live = np.flatnonzero(np.any(flat != 0, axis=1))
        if live.size:
            P = _refine_matrix(self.G, refine or self.refine_points)
            for start in range(0, live.size, 256):
                idx = live[start:start + 256]
                vals = flat[idx] @ P.T
                out[idx] = np.maximum(np.abs(vals).max(axis=1),
                                      np.abs(flat[idx]).max(axis=1))
        return out.reshape(lead)

    def __repr__(self):
        return f"Functions(a={self.a}, b={self.b}, G={self.G})"


@dataclass(frozen=True)
class Quaternions(EntryAlgebra):
    """Real quaternions a + b i + c j + d k, stored as 4 real components.

    A real algebra: only real scalars act on it.
    """

    elem_shape = (4,)
    dtype = np.float64
    real_only = True

    def ones(self, lead=()):
        out = np.zeros(tuple(lead) + (4,))
        out[..., 0] = 1.0
        return out

    def mul(self, x, y):
        a0, a1, a2, a3 = np.moveaxis(np.asarray(x), -1, 0)
        b0, b1, b2, b3 = np.moveaxis(np.asarray(y), -1, 0)
        return np.stack([
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ], axis=-1)

    def matmul(self, X, Y):
        return kernels.quat_matmul(np.ascontiguousarray(X, dtype=np.float64),
                                   np.ascontiguousarray(Y, dtype=np.float64))

    def adjoint(self, x):
        out = np.array(x, dtype=np.float64)
        out[..., 1:] *= -1
        return out

    def scale(self, x, alpha):
        alpha = complex(alpha)
        if alpha.imag != 0:
            raise IncompatibleOperandsError("quaternions admit only real scalars")
        return x * alpha.real

    def norm(self, x):
        return np.sqrt(np.sum(np.asarray(x) ** 2, axis=-1))

    def to_complex(self, X):
        n, m = X.shape[:2]
        return quat_to_block_array(X).transpose(0, 2, 1, 3).reshape(2 * n, 2 * m)

    def from_complex(self, M):
        n, m = M.shape[0] // 2, M.shape[1] // 2
        B = M.reshape(n, 2, m, 2).transpose(0, 2, 1, 3)
        return block_to_quat_array(B)

    def __repr__(self):
        return "Quaternions()"


COMPLEX = ComplexScalars()
QUATERNIONS = Quaternions()


def quat_to_block_array(q) -> np.ndarray:
    """phi applied elementwise: (..., 4) real -> (..., 2, 2) complex."""
    q = np.asarray(q, dtype=np.float64)
    a, b, c, d = np.moveaxis(q, -1, 0)
    out = np.empty(q.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = a + 1j * b
    out[..., 0, 1] = c + 1j * d
    out[..., 1, 0] = -c + 1j * d
    out[..., 1, 1] = a - 1j * b
    return out


def block_to_quat_array(B) -> np.ndarray:
    """Inverse of :func:`quat_to_block_array`; reads the first block row."""
    B = np.asarray(B)
    return np.stack([B[..., 0, 0].real, B[..., 0, 0].imag,
                     B[..., 0, 1].real, B[..., 0, 1].imag], axis=-1)


# ---------------------------------------------------------------------------
# Single elements
# ---------------------------------------------------------------------------

class AlgebraElement:
    """One element of an entry algebra. Immutable by convention."""

    __slots__ = ("algebra", "data")

    def __init__(self, algebra: EntryAlgebra, data):
        self.algebra = algebra
        self.data = np.array(algebra.validate(data))  # private copy, frozen below
        if self.data.shape != algebra.elem_shape:
            raise InvalidElementError(
                f"expected element shape {algebra.elem_shape}, got {self.data.shape}")
        self.data.setflags(write=False)

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra != self.algebra:
            raise IncompatibleOperandsError(
                f"cannot combine {self.algebra!r} with "
                f"{getattr(other, 'algebra', type(other).__name__)!r}")

    def norm(self) -> float:
        return float(self.algebra.norm(self.data))

    def adjoint(self):
        return _wrap(self.algebra, self.algebra.adjoint(self.data))

    def scale(self, alpha):
        return _wrap(self.algebra, self.algebra.scale(self.data, alpha))

    def zero(self):
        return _wrap(self.algebra, self.algebra.zeros())

    def one(self):
        return _wrap(self.algebra, self.algebra.ones())

    def __add__(self, other):
        self._check(other)
        return _wrap(self.algebra, self.data + other.data)

    def __sub__(self, other):
        self._check(other)
        return _wrap(self.algebra, self.data - other.data)

    def __neg__(self):
        return _wrap(self.algebra, -self.data)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return _wrap(self.algebra, self.algebra.mul(self.data, other.data))
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        return NotImplemented

    def allclose(self, other, atol=1e-12) -> bool:
        self._check(other)
        return bool(np.allclose(self.data, other.data, rtol=0, atol=atol))

    def __repr__(self):
        return f"{type(self).__name__}({self.data!r})"


class ComplexScalarElement(AlgebraElement):
    __slots__ = ()

    def __init__(self, value=0.0):
        super().__init__(COMPLEX, np.asarray(value, dtype=complex))

    @property
    def value(self) -> complex:
        return complex(self.data)


class BlockElement(AlgebraElement):
    __slots__ = ()

    def __init__(self, entries):
        arr = np.asarray(entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise InvalidElementError(f"block entries must be square, got {arr.shape}")
        super().__init__(Blocks(arr.shape[0]), arr)

    @property
    def k(self) -> int:
        return self.algebra.k


class FunctionElement(AlgebraElement):
    __slots__ = ()

    def __init__(self, interval, samples, refine=0):
        samples = np.asarray(samples, dtype=complex)
        if samples.ndim != 1:
            raise InvalidElementError("function samples must be one-dimensional")
        a, b = interval
        super().__init__(Functions(float(a), float(b), samples.size, refine), samples)

    @classmethod
    def from_function(cls, func, interval, G=201):
        alg = Functions(float(interval[0]), float(interval[1]), G)
        return cls(interval, alg.sample(func))

    @property
    def interval(self):
        return (self.algebra.a, self.algebra.b)

    @property
    def samples(self):
        return self.data


class QuaternionElement(AlgebraElement):
    __slots__ = ()

    def __init__(self, a=0.0, b=0.0, c=0.0, d=0.0):
        super().__init__(QUATERNIONS, np.array([a, b, c, d], dtype=np.float64))

    @property
    def components(self):
        return tuple(float(v) for v in self.data)


_ELEMENT_CLASS = {
    ComplexScalars: ComplexScalarElement,
    Blocks: BlockElement,
    Functions: FunctionElement,
    Quaternions: QuaternionElement,
}


def _wrap(algebra, data):
    cls = _ELEMENT_CLASS.get(type(algebra), AlgebraElement)
    obj = object.__new__(cls)
    obj.algebra = algebra
    obj.data = np.array(data, dtype=algebra.dtype, order="C")
    if obj.data.shape != algebra.elem_shape:
        raise InvalidElementError(
            f"expected element shape {algebra.elem_shape}, got {obj.data.shape}")
    obj.data.setflags(write=False)
    return obj


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------

def elem_norm(x: AlgebraElement) -> float:
    return x.norm()


def elem_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def quat_to_block(q: QuaternionElement) -> BlockElement:
    """The embedding q -> [[a+bi, c+di], [-c+di, a-bi]]."""
    return BlockElement(quat_to_block_array(q.data))


def block_to_quat(B: BlockElement) -> QuaternionElement:
    if B.k != 2:
        raise InvalidElementError("only 2x2 blocks represent quaternions")
    return QuaternionElement(*block_to_quat_array(B.data))


def func_sup_norm(x: FunctionElement, refine: int | None = None) -> float:
    """Max modulus of the Chebyshev interpolant of ``x`` on ``refine``
    Lobatto points (never less than the max over the stored samples)."""
    if refine is not None and refine < x.algebra.G:
        raise InvalidElementError("refine must be at least G")
    return float(x.algebra.norm(x.data, refine=refine))
