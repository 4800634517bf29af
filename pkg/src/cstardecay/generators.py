"""Test matrices for the decay experiments, with a portable seeded RNG.

Random entries come from a 64-bit linear congruential generator so that the
same seed yields bit-identical matrices on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import COMPLEX, QUATERNIONS, Blocks, Functions
from .matrix import CStarMatrix

__all__ = ["LCG", "EXAMPLES", "ExampleInfo", "generate", "bidiagonal_c"]

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK = (1 << 64) - 1


class LCG:
    """x <- (a x + c) mod 2**64; uniforms use the top 53 bits."""

    def __init__(self, seed: int):
        self.state = (int(seed) * LCG_MULTIPLIER + LCG_INCREMENT) & _MASK

    def next_u64(self) -> int:
        self.state = (LCG_MULTIPLIER * self.state + LCG_INCREMENT) & _MASK
        return self.state

    def random(self, size=None):
        """Uniform on [0, 1)."""
        if size is None:
            return (self.next_u64() >> 11) * 2.0 ** -53
        count = int(np.prod(size))
        out = np.fromiter(((self.next_u64() >> 11) for _ in range(count)),
                          dtype=np.float64, count=count)
        return (out * 2.0 ** -53).reshape(size)

    def uniform(self, low=0.0, high=1.0, size=None):
        return low + (high - low) * self.random(size)


@dataclass(frozen=True)
class ExampleInfo:
    description: str
    hermitian: bool
    random: bool


EXAMPLES = {
    "ex1": ExampleInfo("unit upper bidiagonal Toeplitz over C([1,2]), superdiagonal exp(-t)",
                       False, False),
    "ex2": ExampleInfo("C C^T for the ex1 matrix C, over C([1,2])", True, False),
    "ex3": ExampleInfo("same tridiagonal Hermitian matrix as ex2 (used with exp)", True, False),
    "ex4": ExampleInfo("tridiagonal Toeplitz over C([0,1]), diagonal 1, off-diagonals exp(-t)",
                       True, False),
    "ex4bis": ExampleInfo("tridiagonal Hermitian over C([0,1]) with 1 / t / t^2-1 couplings",
                          True, False),
    "ex6": ExampleInfo("5x5-block matrix, lower bandwidth 2, upper bandwidth 1, "
                       "entries uniform on [-1,1]", False, True),
    "ex7a": ExampleInfo("Hermitian tridiagonal Toeplitz quaternion matrix, "
                        "entries uniform on [-5,5]", True, True),
    "ex7b": ExampleInfo("Hermitian quaternion matrix with a random sparsity pattern",
                        True, True),
}


def _func_matrix(alg, n, diag, couplings, symmetric):
    """couplings[j] is the function at (j, j+1), 0-based; None means zero."""
    data = alg.zeros((n, n))
    idx = np.arange(n)
    data[idx, idx] = alg.sample(diag)
    for j, g in enumerate(couplings):
        if g is None:
            continue
        v = alg.sample(g)
        data[j, j + 1] = v
        if symmetric:
            data[j + 1, j] = v
    return CStarMatrix(alg, data)


def bidiagonal_c(n: int, G: int = 201) -> CStarMatrix:
    alg = Functions(1.0, 2.0, G)
    return _func_matrix(alg, n, lambda t: np.ones_like(t), [lambda t: np.exp(-t)] * (n - 1),
                        symmetric=False)


def _ex4bis_coupling(j):
    # j is the 1-based row index of the (j, j+1) coupling
    if j % 2 == 1 and j >= 3:
        return lambda t: np.ones_like(t)
    if j % 4 == 2:
        return lambda t: t
    if j % 4 == 0:
        return lambda t: t ** 2 - 1
    return None


def _quaternion_hermitian(n, rng, pattern, low, high):
    data = QUATERNIONS.zeros((n, n))
    for i in range(n):
        data[i, i, 0] = rng.uniform(low, high)
    iu, ju = np.nonzero(np.triu(pattern, 1))
    for i, j in zip(iu, ju):
        q = rng.uniform(low, high, 4)
        data[i, j] = q
        data[j, i] = q * np.array([1.0, -1.0, -1.0, -1.0])
    return CStarMatrix(QUATERNIONS, data, pattern | np.eye(n, dtype=bool))


def generate(example_id: str, n: int, seed: int = 0, G: int = 201) -> CStarMatrix:
    """Build test matrix ``example_id`` of order n.

    ``seed`` only matters for the random examples (ex6, ex7a, ex7b); ``G`` is
    the sample grid for the function-valued ones.
    """
    if example_id not in EXAMPLES:
        raise KeyError(f"unknown example {example_id!r}; choose from {sorted(EXAMPLES)}")
    if n < 2:
        raise ValueError("n must be at least 2")
    ones = lambda t: np.ones_like(t)  # noqa: E731
    if example_id == "ex1":
        return bidiagonal_c(n, G)
    if example_id in ("ex2", "ex3"):
        C = bidiagonal_c(n, G)
        return C @ C.adjoint()
    if example_id == "ex4":
        alg = Functions(0.0, 1.0, G)
        return _func_matrix(alg, n, ones, [lambda t: np.exp(-t)] * (n - 1), symmetric=True)
    if example_id == "ex4bis":
        alg = Functions(0.0, 1.0, G)
        return _func_matrix(alg, n, ones, [_ex4bis_coupling(j) for j in range(1, n)],
                            symmetric=True)

    rng = LCG(seed)
    if example_id == "ex6":
        k = 5
        alg = Blocks(k)
        off = np.subtract.outer(np.arange(n), np.arange(n))
        pattern = (off <= 2) & (off >= -1)
        data = np.zeros((n, n, k, k), dtype=complex)
        for i, j in zip(*np.nonzero(pattern)):
            data[i, j] = rng.uniform(-1.0, 1.0, (k, k))
        return CStarMatrix(alg, data, pattern)
    if example_id == "ex7a":
        a = rng.uniform(-5.0, 5.0)
        q = rng.uniform(-5.0, 5.0, 4)
        data = QUATERNIONS.zeros((n, n))
        idx = np.arange(n)
        data[idx, idx, 0] = a
        data[idx[:-1], idx[1:]] = q
        data[idx[1:], idx[:-1]] = q * np.array([1.0, -1.0, -1.0, -1.0])
        return CStarMatrix(QUATERNIONS, data)
    # ex7b: each row links to about two random columns, symmetrized
    pattern = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for _ in range(2):
            j = int(rng.random() * n)
            if j != i:
                pattern[i, j] = pattern[j, i] = True
    return _quaternion_hermitian(n, rng, pattern, -1.0, 1.0)


def scalar_example(n: int, seed: int = 0) -> CStarMatrix:
    """Dense complex matrix with entries uniform on [-1,1] + i[-1,1]."""
    rng = LCG(seed)
    re = rng.uniform(-1.0, 1.0, (n, n))
    im = rng.uniform(-1.0, 1.0, (n, n))
    return CStarMatrix(COMPLEX, re + 1j * im)
