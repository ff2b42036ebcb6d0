import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boundfilter import linalg
from boundfilter.errors import (
    DimensionMismatchError,
    NonSquareError,
    NotHermitianError,
)
from boundfilter.tolerances import TOL_RECON, TOL_RESID

from .oracles import brute_eigvals, kron_loops, random_herm


def test_eigh_identity(kernel_path):
    w, v = linalg.eigh(np.eye(3))
    assert np.allclose(w, [1, 1, 1], atol=1e-14)
    assert np.abs(v.conj().T @ v - np.eye(3)).max() < 1e-12


def test_eigh_pauli_x(kernel_path):
    w, _ = linalg.eigh(np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.allclose(w, [-1, 1], atol=1e-14)


def test_eigh_degenerate_spectrum(kernel_path):
    d = np.diag([1.0, 5 / 8, 5 / 8])
    w, v = linalg.eigh((d @ d).astype(complex))
    assert np.allclose(w, [25 / 64, 25 / 64, 1.0], atol=1e-13)
    assert np.abs(v.conj().T @ v - np.eye(3)).max() < 1e-12


def test_eigh_random_contracts(kernel_path):
    rng = np.random.default_rng(11)
    for n in (2, 3, 4, 9):
        for _ in range(10):
            h = random_herm(rng, n)
            w, v = linalg.eigh(h)
            assert np.all(np.diff(w) >= 0)
            # per-column residual and orthonormality
            for k in range(n):
                assert np.linalg.norm(h @ v[:, k] - w[k] * v[:, k]) < TOL_RESID
            assert np.abs(v.conj().T @ v - np.eye(n)).max() < 1e-12
            recon = (v * w) @ v.conj().T
            assert np.abs(recon - h).max() < TOL_RECON
            assert abs(w.sum() - np.trace(h).real) < 1e-8


def test_eigh_matches_charpoly_roots(kernel_path):
    rng = np.random.default_rng(12)
    for n in (2, 3, 4):
        h = random_herm(rng, n)
        assert np.abs(linalg.eigh(h)[0] - brute_eigvals(h)).max() < 1e-8


def test_eigh_rejects_nonhermitian():
    with pytest.raises(NotHermitianError):
        linalg.eigh(np.array([[0, 1], [0, 0]], dtype=complex))


def test_eigh_rejects_nonsquare():
    with pytest.raises(NonSquareError):
        linalg.eigh(np.zeros((2, 3)))


def test_min_eigenvalue():
    assert abs(linalg.min_eigenvalue(np.diag([3.0, -2.0, 1.0])) + 2.0) < 1e-14


def test_svd_identity(kernel_path):
    res = linalg.svd(np.eye(4))
    assert np.allclose(res.d, 1.0, atol=1e-14)
    assert np.abs(res.reconstruct() - np.eye(4)).max() < TOL_RECON


def test_svd_diagonal_example(kernel_path):
    res = linalg.svd(np.diag([1.0, 5 / 8, 5 / 8]))
    assert np.allclose(res.d, [1.0, 5 / 8, 5 / 8], atol=1e-13)
    assert res.sigma_max == pytest.approx(1.0, abs=1e-13)
    assert res.sigma_min == pytest.approx(5 / 8, abs=1e-13)


def test_svd_rotation_is_isometric(kernel_path):
    s = 1 / np.sqrt(2)
    rot = np.array([[s, 0, -s], [0, 1, 0], [s, 0, s]])
    res = linalg.svd(rot)
    assert np.allclose(res.d, 1.0, atol=1e-13)
    assert np.abs(res.reconstruct() - rot).max() < TOL_RECON


def test_svd_random_reconstruction(kernel_path):
    rng = np.random.default_rng(13)
    for n in (2, 3, 5):
        for _ in range(10):
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            res = linalg.svd(a)
            assert np.all(np.diff(res.d) <= 1e-13)
            assert np.all(res.d >= 0)
            assert np.abs(res.reconstruct() - a).max() < TOL_RECON
            assert np.abs(res.u.conj().T @ res.u - np.eye(n)).max() < 1e-10
            assert np.abs(res.v @ res.v.conj().T - np.eye(n)).max() < 1e-10


def test_svd_singular_matrix_completion(kernel_path):
    # one exactly-zero singular value: u must still come out unitary
    a = np.diag([2.0, 0.0, 1.0])
    res = linalg.svd(a)
    assert np.allclose(res.d, [2.0, 1.0, 0.0], atol=1e-12)
    assert np.abs(res.u.conj().T @ res.u - np.eye(3)).max() < 1e-10
    assert np.abs(res.reconstruct() - a).max() < TOL_RECON


def test_svd_rejects_nonsquare():
    with pytest.raises(NonSquareError):
        linalg.svd(np.zeros((2, 3)))


def test_kron_agrees_with_loops():
    rng = np.random.default_rng(14)
    a = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    b = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    assert np.abs(linalg.kron(a, b) - kron_loops(a, b)).max() < 1e-14


def test_kron_indexing_convention():
    # composite row index i * dimB + k
    a = np.array([[0.0, 1.0], [0.0, 0.0]])
    b = np.eye(2)
    out = linalg.kron(a, b)
    assert out[0, 2] == 1.0 and out[1, 3] == 1.0
    assert out.sum() == 2.0


@settings(max_examples=30, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    na=st.integers(1, 3),
    nb=st.integers(1, 3),
)
def test_kron_mixed_product_property(seed, na, nb):
    rng = np.random.default_rng(seed)
    a, c = (rng.standard_normal((na, na)) for _ in range(2))
    b, d = (rng.standard_normal((nb, nb)) for _ in range(2))
    lhs = linalg.kron(a, b) @ linalg.kron(c, d)
    rhs = linalg.kron(a @ c, b @ d)
    assert np.abs(lhs - rhs).max() < 1e-10


def test_matmul_shape_guard():
    with pytest.raises(DimensionMismatchError):
        linalg.matmul(np.zeros((2, 3)), np.zeros((2, 3)))


def test_trace_and_adjoint():
    m = np.array([[1 + 2j, 3], [4, 5 - 1j]])
    assert linalg.trace(m) == pytest.approx(6 + 1j)
    assert np.array_equal(linalg.adjoint(m), m.conj().T)
    with pytest.raises(NonSquareError):
        linalg.trace(np.zeros((2, 3)))


def test_herm_defect():
    assert linalg.herm_defect(np.eye(2)) == 0.0
    assert linalg.herm_defect(np.array([[0, 1], [0, 0]])) == 1.0
