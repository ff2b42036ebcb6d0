"""Independent reference routes used to check the package's answers.

Nothing here calls back into the package's numerical code paths (the one
exception is raw_density, which builds a DensityOperator while bypassing
its validation so tests can probe how downstream code treats bad input).
"""

import numpy as np

from boundfilter.states import DensityOperator

MASK64 = (1 << 64) - 1


def faddeev_leverrier(h):
    """Characteristic polynomial coefficients [1, c1, ..., cn] via the
    trace recursion (no eigensolver involved)."""
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    m = np.zeros_like(h)
    for k in range(1, n + 1):
        m = h @ m + coeffs[k - 1] * np.eye(n)
        coeffs[k] = -np.trace(h @ m) / k
    return coeffs


def brute_eigvals(h):
    """Eigenvalues of a Hermitian matrix as roots of its characteristic
    polynomial, sorted ascending."""
    roots = np.roots(faddeev_leverrier(h))
    return np.sort(roots.real)


def kron_loops(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def pt_b_loops(m, da, db):
    """Partial transpose on side B, written as explicit block loops."""
    m = np.asarray(m)
    out = np.zeros_like(m, dtype=complex)
    for i in range(da):
        for k in range(da):
            block = m[i * db : (i + 1) * db, k * db : (k + 1) * db]
            out[i * db : (i + 1) * db, k * db : (k + 1) * db] = block.T
    return out


def one_sided_phi_loops(rho, side, db_or_da):
    """Kraus-style route for the first Choi map on one side of a 3 x d or
    d x 3 state: phi = (1/2)(-id + 2 Pi_diag + Pi_shift) where Pi_diag
    sandwiches with E_ii and Pi_shift with E_{i, i-1 mod 3}."""
    return _one_sided_choi(rho, side, db_or_da, shift=-1)


def one_sided_psi_loops(rho, side, db_or_da):
    """Same construction for the second Choi map (shift +1)."""
    return _one_sided_choi(rho, side, db_or_da, shift=+1)


def _one_sided_choi(rho, side, other_dim, shift):
    rho = np.asarray(rho, dtype=complex)
    eye_other = np.eye(other_dim)
    acc = -rho.copy()
    for i in range(3):
        e_diag = np.zeros((3, 3))
        e_diag[i, i] = 1.0
        e_shift = np.zeros((3, 3))
        e_shift[i, (i + shift) % 3] = 1.0
        if side == "A":
            kd = np.kron(e_diag, eye_other)
            ks = np.kron(e_shift, eye_other)
        else:
            kd = np.kron(eye_other, e_diag)
            ks = np.kron(eye_other, e_shift)
        acc += 2.0 * kd @ rho @ kd.conj().T
        acc += ks @ rho @ ks.conj().T
    return 0.5 * acc


def raw_density(mat, da, db) -> DensityOperator:
    """DensityOperator without invariant validation (tests only)."""
    obj = object.__new__(DensityOperator)
    object.__setattr__(obj, "dim_a", da)
    object.__setattr__(obj, "dim_b", db)
    object.__setattr__(obj, "mat", np.asarray(mat, dtype=complex))
    return obj


def splitmix64_py(seed, n):
    """The n-th (0-based) output of splitmix64 in pure Python integers."""
    z = (seed + (n + 1) * 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return (z ^ (z >> 31)) & MASK64


def uniform_py(seed, n):
    return (splitmix64_py(seed, n) >> 11) / float(1 << 53)


def random_herm(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


def random_psd(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return g @ g.conj().T


def random_density_mat(rng, n):
    m = random_psd(rng, n)
    return m / np.trace(m).real


def random_unitary(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))
