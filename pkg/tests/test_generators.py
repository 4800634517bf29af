import numpy as np
import pytest

from cstardecay import LCG, generate, is_hermitian, matricial_norm
from cstardecay.generators import EXAMPLES, LCG_INCREMENT, LCG_MULTIPLIER


def test_lcg_recurrence_and_range():
    g = LCG(42)
    state = (42 * LCG_MULTIPLIER + LCG_INCREMENT) % 2 ** 64
    for _ in range(5):
        state = (LCG_MULTIPLIER * state + LCG_INCREMENT) % 2 ** 64
        assert g.next_u64() == state
    u = LCG(1).uniform(-5, 5, 1000)
    assert u.min() >= -5 and u.max() < 5 and abs(u.mean()) < 0.5


def test_lcg_frozen_stream():
    # frozen so that reports stay reproducible across releases
    g = LCG(0)
    assert [g.next_u64() for _ in range(3)] == [
        1876011003808476466, 11166244414315200793, 7401132627792533940]
    assert LCG(2024).uniform(-1, 1, 3).tolist() == [
        -0.3918553675235801, 0.4206634222723431, -0.48975537374952216]


def test_ex1_structure():
    A = generate("ex1", 20)
    t = A.algebra.nodes()
    assert (A.algebra.a, A.algebra.b) == (1.0, 2.0)
    assert np.allclose(A.data[np.arange(20), np.arange(20)], 1.0)
    assert np.allclose(A.data[np.arange(19), np.arange(1, 20)], np.exp(-t))
    assert A.pattern.sum() == 39


def test_ex4_structure():
    A = generate("ex4", 20)
    t = A.algebra.nodes()
    assert (A.algebra.a, A.algebra.b) == (0.0, 1.0)
    assert is_hermitian(A)
    assert np.allclose(A.data[np.arange(1, 20), np.arange(19)], np.exp(-t))
    assert A.pattern.sum() == 58


def test_ex4bis_couplings():
    A = generate("ex4bis", 20)
    t = A.algebra.nodes()
    expect = {2: t, 3: 1.0, 4: t ** 2 - 1, 5: 1.0, 6: t, 19: 1.0, 18: t, 16: t ** 2 - 1}
    for j, v in expect.items():  # 1-based (j, j+1)
        assert np.allclose(A.data[j - 1, j], v)
        assert np.allclose(A.data[j, j - 1], v)
    assert not A.pattern[0, 1]
    assert is_hermitian(A)


def test_ex6_blocks():
    A = generate("ex6", 20, seed=5)
    off = np.subtract.outer(np.arange(20), np.arange(20))
    assert A.algebra.k == 5
    assert np.array_equal(A.pattern, (off <= 2) & (off >= -1))
    vals = A.data[A.pattern]
    assert np.abs(vals.imag).max() == 0 and np.abs(vals.real).max() <= 1


def test_quaternion_examples():
    A = generate("ex7a", 12, seed=3)
    assert is_hermitian(A)
    assert np.allclose(A.data[1:, 1:], A.data[:-1, :-1])  # Toeplitz
    assert np.all(A.data[np.arange(12), np.arange(12), 1:] == 0)
    assert np.abs(A.data).max() <= 5
    B = generate("ex7b", 15, seed=3)
    assert is_hermitian(B)
    assert B.pattern.sum() > 15


@pytest.mark.parametrize("ex", sorted(EXAMPLES))
def test_generation_is_deterministic(ex):
    A, B = generate(ex, 8, seed=11), generate(ex, 8, seed=11)
    assert np.array_equal(A.data, B.data) and np.array_equal(A.pattern, B.pattern)
    if EXAMPLES[ex].random:
        assert not np.array_equal(matricial_norm(A), matricial_norm(generate(ex, 8, seed=12)))


def test_generate_errors():
    with pytest.raises(KeyError):
        generate("ex5", 10)
    with pytest.raises(ValueError):
        generate("ex1", 1)
