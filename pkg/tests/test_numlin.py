import mpmath
import numpy as np
import pytest
import scipy.linalg

from liekit.errors import BranchError, DimensionError, SingularityError, SymmetryError
from liekit.numlin import (
    commutator,
    frobenius_real_inner,
    herm_eig,
    mat_exp,
    mat_log_principal,
)


def skew3(xi):
    a, b, c = xi
    return np.array([[0, -c, b], [c, 0, -a], [-b, a, 0]], dtype=float)


def naive_mul(A, B):
    n = len(A)
    C = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                C[i, j] += A[i, k] * B[k, j]
    return C


def random_complex(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def test_commutator_self_is_zero(rng):
    A = random_complex(rng, 5)
    assert np.all(commutator(A, A) == 0)


def test_commutator_so3_cross_product(rng):
    for _ in range(5):
        xi, eta = rng.normal(size=(2, 3))
        assert np.allclose(commutator(skew3(xi), skew3(eta)), skew3(np.cross(xi, eta)), atol=1e-14)


def test_commutator_against_triple_loop(rng):
    A, B = random_complex(rng, 4), random_complex(rng, 4)
    ref = naive_mul(A, B) - naive_mul(B, A)
    assert np.abs(commutator(A, B) - ref).max() < 1e-12


def test_commutator_size_mismatch():
    with pytest.raises(DimensionError):
        commutator(np.eye(2), np.eye(3))
    with pytest.raises(DimensionError):
        commutator(np.ones((2, 3)), np.ones((2, 3)))


def test_frobenius_inner():
    A = np.array([[1j, 2], [0, 1]])
    assert frobenius_real_inner(A, A) == pytest.approx(6.0)
    assert frobenius_real_inner(A, 1j * A) == pytest.approx(0.0)


def test_exp_zero_is_identity():
    assert np.array_equal(mat_exp(np.zeros((4, 4))), np.eye(4))


def test_exp_rotation_about_z():
    theta = 0.731
    R = mat_exp(skew3([0, 0, theta]))
    c, s = np.cos(theta), np.sin(theta)
    assert np.allclose(R, [[c, -s, 0], [s, c, 0], [0, 0, 1]], atol=1e-14)


def test_exp_skew_hermitian_is_unitary(rng):
    for n in (2, 5, 9):
        A = random_complex(rng, n)
        X = A - A.conj().T
        U = mat_exp(X)
        assert np.abs(U.conj().T @ U - np.eye(n)).max() < 1e-12
        assert abs(abs(np.linalg.det(U)) - 1) < 1e-12


@pytest.mark.parametrize("scale", [1e-3, 0.5, 3.0, 10.0])
def test_exp_against_mpmath(rng, scale):
    A = random_complex(rng, 4)
    A *= scale / np.linalg.norm(A, 2)
    with mpmath.workdps(40):
        ref = mpmath.expm(mpmath.matrix(A.tolist()))
        ref = np.array([[complex(ref[i, j]) for j in range(4)] for i in range(4)])
    rel = np.linalg.norm(mat_exp(A) - ref) / np.linalg.norm(ref)
    assert rel < 1e-12


def test_exp_real_stays_real(rng):
    E = mat_exp(rng.normal(size=(3, 3)))
    assert not np.iscomplexobj(E)


def test_exp_rejects_nan():
    with pytest.raises(DimensionError):
        mat_exp(np.array([[np.nan]]))


def test_log_identity_is_zero():
    assert np.abs(mat_log_principal(np.eye(3))).max() < 1e-15


def test_log_inverts_exp_near_identity(rng):
    A = random_complex(rng, 4)
    A *= 0.8 / np.linalg.norm(A, 2)
    assert np.abs(mat_log_principal(mat_exp(A)) - A).max() < 1e-12


def test_log_branch_and_singular():
    with pytest.raises(BranchError):
        mat_log_principal(np.diag([-1.0, 1.0]))
    with pytest.raises(SingularityError):
        mat_log_principal(np.diag([0.0, 1.0]))


def test_herm_eig_matches_numpy(rng):
    for n in (1, 2, 7, 16):
        A = random_complex(rng, n)
        H = A + A.conj().T
        res = herm_eig(H)
        assert np.allclose(res.eigenvalues, np.linalg.eigvalsh(H), atol=1e-10)
        V, w = res.eigenvectors, res.eigenvalues
        assert np.linalg.norm(H - V @ np.diag(w) @ V.conj().T) <= 1e-10 * (1 + np.linalg.norm(H))
        assert np.abs(V.conj().T @ V - np.eye(n)).max() < 1e-10


def test_herm_eig_degenerate_and_diagonal():
    res = herm_eig(np.eye(4) * 2.0)
    assert np.allclose(res.eigenvalues, 2.0)
    D = np.diag([3.0, -1.0, 2.0])
    assert np.allclose(herm_eig(D).eigenvalues, [-1, 2, 3])


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(SymmetryError):
        herm_eig(np.array([[0, 1], [0, 0]]))


def test_herm_eig_large_reconstruction(rng):
    A = rng.normal(size=(60, 60))
    H = A + A.T
    res = herm_eig(H)
    V = res.eigenvectors
    assert np.linalg.norm(H - V @ np.diag(res.eigenvalues) @ V.conj().T) < 1e-10 * np.linalg.norm(H)
    assert np.allclose(res.eigenvalues, scipy.linalg.eigvalsh(H), atol=1e-10)
