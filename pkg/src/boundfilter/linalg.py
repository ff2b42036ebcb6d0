"""Dense complex matrix layer shared by everything above it.

Matrices are plain numpy arrays of complex128.  The eigensolver dispatches
between the JIT Jacobi kernel and LAPACK depending on BF_DISABLE_NUMBA; the
SVD is built on top of the eigensolver (positive-semidefinite route via
a^dag a) so both backends honor the same reconstruction contracts.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NonSquareError, NotHermitianError
from .kernels import jacobi_eigh, numba_enabled
from .tolerances import TOL_HERM, TOL_RANK


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex128 array (copies only if needed)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-d array, got ndim={m.ndim}")
    return m


def require_square(a: np.ndarray, what: str = "matrix") -> int:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquareError(f"{what} must be square, got shape {a.shape}")
    return a.shape[0]


def adjoint(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def herm_defect(a: np.ndarray) -> float:
    """Max absolute entrywise deviation from a == a^dag."""
    return float(np.abs(a - a.conj().T).max())


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(
            f"cannot multiply shapes {a.shape} and {b.shape}"
        )
    return a @ b


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the composite row index is i * b.shape[0] + k."""
    return np.kron(a, b)


def trace(a: np.ndarray) -> complex:
    require_square(a, "trace argument")
    return complex(np.trace(a))


def sandwich(s: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """s @ rho @ s^dag."""
    return s @ rho @ s.conj().T


def eigh(h: np.ndarray, tol_herm: float = TOL_HERM):
    """Eigendecomposition of a Hermitian matrix.

    Returns (w, v), w real ascending, columns of v orthonormal with
    h @ v ~= v @ diag(w).  Raises NotHermitianError when the Hermiticity
    defect exceeds tol_herm; the (sub-tolerance) skew part is discarded by
    symmetrizing before factorization so both backends see the same input.
    """
    h = as_matrix(h)
    require_square(h, "eigh argument")
    defect = herm_defect(h)
    if defect > tol_herm:
        raise NotHermitianError(
            f"matrix is not Hermitian: max |a - a^dag| = {defect:.3e}"
        )
    hs = 0.5 * (h + h.conj().T)
    if numba_enabled():
        w, v = jacobi_eigh(hs)
    else:
        w, v = np.linalg.eigh(hs)
    return w, v


def eigvalsh(h: np.ndarray) -> np.ndarray:
    return eigh(h)[0]


def min_eigenvalue(h: np.ndarray) -> float:
    return float(eigh(h)[0][0])


@dataclass(frozen=True, eq=False)
class SVDResult:
    """Factorization a = u @ diag(d) @ v.

    u, v are unitary (v is the already-conjugated right factor, i.e. what
    LAPACK calls vh) and d is real, non-negative, descending.  In protocol
    language the rows of v act first and u acts last.
    """

    u: np.ndarray
    d: np.ndarray
    v: np.ndarray

    @property
    def sigma_max(self) -> float:
        return float(self.d[0])

    @property
    def sigma_min(self) -> float:
        return float(self.d[-1])

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.d) @ self.v


def svd(a: np.ndarray) -> SVDResult:
    """Singular value decomposition of a square matrix.

    Route: eigendecompose a^dag a (Hermitian PSD), take d = sqrt(spectrum)
    descending, u columns a v_i / d_i.  Columns belonging to singular values
    at or below TOL_RANK cannot be recovered that way and are completed to an
    orthonormal basis by Gram-Schmidt against the ones already placed.
    """
    a = as_matrix(a)
    n = require_square(a, "svd argument")
    w, vecs = eigh(a.conj().T @ a)
    order = np.argsort(w)[::-1]
    d = np.sqrt(np.clip(w[order], 0.0, None))
    vh = vecs[:, order].conj().T
    u = np.zeros((n, n), dtype=np.complex128)
    deficient = []
    for i in range(n):
        if d[i] > TOL_RANK:
            u[:, i] = (a @ vecs[:, order[i]]) / d[i]
        else:
            deficient.append(i)
    # complete the deficient columns from the canonical basis
    for i in deficient:
        for k in range(n):
            cand = np.zeros(n, dtype=np.complex128)
            cand[k] = 1.0
            cand -= u @ (u.conj().T @ cand)
            nrm = np.linalg.norm(cand)
            if nrm > 1e-6:
                u[:, i] = cand / nrm
                break
    return SVDResult(u=u, d=d, v=vh)


def singular_values(a: np.ndarray) -> np.ndarray:
    return svd(a).d
