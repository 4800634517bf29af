import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given
from hypothesis import strategies as st

from cstardecay import (
    COMPLEX,
    FUNCTIONS,
    QUATERNIONS,
    Blocks,
    ChebyshevSeries,
    CStarMatrix,
    Functions,
    IncompatibleOperandsError,
    InvalidRadiusError,
    PreconditionViolationError,
    entry_norm_matrix,
    eval_poly_matrix,
    generate,
    inverse_unit_triangular,
    matfun_hermitian,
    matfun_quaternion,
    matfun_taylor,
    matricial_norm,
    op_norm_upper,
)

from conftest import hermitian_part, random_matrix

EXP = FUNCTIONS["exp"]
seeds = st.integers(0, 2 ** 32 - 1)


@given(seeds, st.sampled_from([COMPLEX, Blocks(2), QUATERNIONS]))
def test_hermitian_exp_matches_expm(seed, alg):
    rng = np.random.default_rng(seed)
    A = hermitian_part(random_matrix(alg, 4, rng, density=0.5))
    res = matfun_hermitian(A, EXP)
    ref = sla.expm(A.to_complex())
    assert np.allclose(res.matrix.to_complex(), ref, atol=1e-10 * np.abs(ref).max())


def test_hermitian_log_matches_logm(rng):
    H = hermitian_part(random_matrix(COMPLEX, 5, rng, scale=0.4))
    res = matfun_hermitian(H, FUNCTIONS["log_shift5"])
    ref = sla.logm(H.to_complex() + 5 * np.eye(5))
    assert np.allclose(res.matrix.to_complex(), ref, atol=1e-12)


def test_hermitian_exp_over_functions_is_pointwise():
    A = generate("ex4", 6, G=17)
    res = matfun_hermitian(A, EXP)
    for g in range(A.algebra.G):
        ref = sla.expm(A.data[..., g])
        assert np.allclose(res.matrix.data[..., g], ref, atol=1e-12)


def test_chebyshev_certificate_bounds_error(rng):
    H = hermitian_part(random_matrix(COMPLEX, 6, rng))
    ref = sla.expm(H.to_complex())
    for k in (3, 6, 9):
        res = matfun_hermitian(H, EXP, degree=k)
        err = np.linalg.norm(res.matrix.to_complex() - ref, 2)
        assert err <= res.certificate * (1 + 1e-8) + 1e-12


def test_hermitian_route_rejects_nonhermitian(rng):
    with pytest.raises(PreconditionViolationError):
        matfun_hermitian(random_matrix(COMPLEX, 3, rng), EXP)


@given(seeds, st.sampled_from([COMPLEX, Blocks(3), QUATERNIONS]))
def test_taylor_exp_matches_expm(seed, alg):
    rng = np.random.default_rng(seed)
    A = random_matrix(alg, 4, rng, density=0.5, scale=0.5)
    r = op_norm_upper(A)
    res = matfun_taylor(A, EXP, R=r + 2)
    ref = sla.expm(A.to_complex())
    assert np.allclose(res.matrix.to_complex(), ref, atol=1e-10 * max(1, np.abs(ref).max()))


def test_taylor_certificate_bounds_error(rng):
    A = random_matrix(COMPLEX, 5, rng, scale=0.3)
    ref = sla.expm(A.to_complex())
    r = op_norm_upper(A)
    for k in (2, 5, 8):
        res = matfun_taylor(A, EXP, R=2 * r, k=k)
        err = np.linalg.norm(res.matrix.to_complex() - ref, 2)
        assert res.degree == k
        assert err <= res.certificate


def test_taylor_radius_must_exceed_norm(rng):
    A = random_matrix(COMPLEX, 3, rng)
    r = op_norm_upper(A)
    with pytest.raises(InvalidRadiusError):
        matfun_taylor(A, EXP, R=r)


def test_quaternion_routes_agree(rng):
    A = random_matrix(QUATERNIONS, 5, rng, density=0.5, scale=0.5)
    direct = matfun_quaternion(A, EXP)
    embed = matfun_quaternion(A, EXP, route="embedding")
    ref = sla.expm(A.to_complex())
    assert np.allclose(direct.matrix.data, embed.matrix.data, atol=1e-12)
    assert np.allclose(direct.matrix.to_complex(), ref, atol=1e-10)


def test_quaternion_explicit_coefficients(rng):
    A = random_matrix(QUATERNIONS, 3, rng)
    res = matfun_quaternion(A, [1.0, 2.0, 0.0, -1.0])
    Z = A.to_complex()
    ref = np.eye(6) + 2 * Z - Z @ Z @ Z
    assert np.allclose(res.matrix.to_complex(), ref, atol=1e-10)
    with pytest.raises(IncompatibleOperandsError):
        matfun_quaternion(A, [1.0, 1j])
    with pytest.raises(IncompatibleOperandsError):
        matfun_quaternion(random_matrix(COMPLEX, 3, rng), EXP)


def test_eval_poly_matrix_uses_chebyshev_basis(rng):
    A = random_matrix(COMPLEX, 4, rng)
    Z = A.to_complex()
    out = eval_poly_matrix(A, ChebyshevSeries(np.array([0.5, 0.0, 0.0, 2.0])))
    T3 = 4 * Z @ Z @ Z - 3 * Z
    assert np.allclose(out.to_complex(), 0.5 * np.eye(4) + 2 * T3)


def test_inverse_of_bidiagonal_function_matrix():
    C = generate("ex1", 7, G=33)
    Ci = inverse_unit_triangular(C)
    prod = C @ Ci
    eye = CStarMatrix.identity(7, C.algebra)
    assert np.allclose(prod.data, eye.data, atol=1e-14)
    # [C^-1]_{ij} = (-e^-t)^(j-i): sup norm e^-(j-i) on [1, 2]
    i, j = np.triu_indices(7)
    assert np.allclose(entry_norm_matrix(Ci)[i, j], np.exp(-(j - i).astype(float)))
    assert not np.tril(Ci.pattern, -1).any()


def test_inverse_rejects_bad_input(rng):
    with pytest.raises(PreconditionViolationError):
        inverse_unit_triangular(CStarMatrix(COMPLEX, np.array([[2.0, 1.0], [0.0, 1.0]])))
    with pytest.raises(PreconditionViolationError):
        inverse_unit_triangular(CStarMatrix(COMPLEX, np.array([[1.0, 1.0], [1.0, 1.0]])))


def test_zero_matrix_function():
    Z = CStarMatrix.zeros(3, Functions(0.0, 1.0, 9))
    res = matfun_hermitian(Z, EXP)
    assert np.allclose(matricial_norm(res.matrix), np.eye(3))


def test_cct_exp_degree8_decays_and_certificate():
    A = generate("ex3", 20)
    res = matfun_hermitian(A, FUNCTIONS["exp"], degree=8)
    row = matricial_norm(res.matrix)[0]
    assert np.all(np.diff(row[:10]) < 0)
    # g(z) = exp(beta z) with beta = 1.863 has a degree-8 tail of 3.5e-6
    assert res.certificate < 1e-5


@pytest.mark.xfail(strict=True, reason="below 1e-6 holds for the coefficients of e^z, "
                                       "not of e^(beta z) with beta = ||Â||_2 = 1.863")
def test_cct_exp_degree8_certificate_below_1e6():
    res = matfun_hermitian(generate("ex3", 20), FUNCTIONS["exp"], degree=8)
    assert res.certificate < 1e-6
