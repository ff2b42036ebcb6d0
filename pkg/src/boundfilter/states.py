"""Bipartite quantum states and the basic tests on them.

A state on dimA x dimB uses the composite index k = i * dimB + j, so side-A
blocks of the density matrix are contiguous dimB x dimB tiles.  Density
operators validate their physical invariants on construction; anything that
wants an unchecked matrix works with raw arrays and normalizes at the end.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatchError,
    InvariantViolationError,
    NotHermitianError,
    NotPSDError,
    ParseError,
    ZeroTraceError,
)
from .formats import matrix_to_pairs, pairs_to_matrix, require_key
from .tolerances import TOL_HERM, TOL_NEG, TOL_RANK, TOL_RECON


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A validated bipartite density matrix.

    Invariants checked on construction: square with side dim_a * dim_b,
    Hermitian within TOL_HERM, unit trace within 1e-9, and no eigenvalue
    below -TOL_NEG.  The stored array is made read-only.
    """

    dim_a: int
    dim_b: int
    mat: np.ndarray

    def __post_init__(self):
        m = linalg.as_matrix(self.mat)
        n = self.dim_a * self.dim_b
        if self.dim_a < 1 or self.dim_b < 1:
            raise InvariantViolationError(
                f"invalid local dimensions ({self.dim_a}, {self.dim_b})"
            )
        if m.shape != (n, n):
            raise InvariantViolationError(
                f"dimension invariant failed: shape {m.shape} does not match "
                f"dim_a * dim_b = {n}"
            )
        defect = linalg.herm_defect(m)
        if defect > TOL_HERM:
            raise NotHermitianError(
                f"hermiticity invariant failed: max |a - a^dag| = {defect:.3e}"
            )
        tr = np.trace(m).real
        if abs(tr - 1.0) > 1e-9:
            raise InvariantViolationError(
                f"trace invariant failed: trace = {tr!r}"
            )
        wmin = linalg.min_eigenvalue(m)
        if wmin < -TOL_NEG:
            raise NotPSDError(
                f"positivity invariant failed: min eigenvalue = {wmin:.6e}"
            )
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def dims(self) -> tuple:
        return (self.dim_a, self.dim_b)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized ket on dimA x dimB (unit norm within TOL_RECON)."""

    dim_a: int
    dim_b: int
    amps: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=np.complex128).reshape(-1)
        n = self.dim_a * self.dim_b
        if a.shape != (n,):
            raise InvariantViolationError(
                f"amplitude vector has length {a.shape[0]}, expected {n}"
            )
        nrm = float(np.linalg.norm(a))
        if abs(nrm - 1.0) > TOL_RECON:
            raise InvariantViolationError(
                f"norm invariant failed: |psi| = {nrm!r}"
            )
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    @property
    def dims(self) -> tuple:
        return (self.dim_a, self.dim_b)

    def projector(self) -> DensityOperator:
        return DensityOperator(self.dim_a, self.dim_b, np.outer(self.amps, self.amps.conj()))

    def coefficient_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to (dim_a, dim_b): row e, column f of |ef>."""
        return self.amps.reshape(self.dim_a, self.dim_b)


def pure(amps, dim_a: int, dim_b: int, normalize_input: bool = False) -> PureState:
    a = np.asarray(amps, dtype=np.complex128).reshape(-1)
    if normalize_input:
        nrm = np.linalg.norm(a)
        if nrm <= TOL_RANK:
            raise ZeroTraceError("cannot normalize a ~zero amplitude vector")
        a = a / nrm
    return PureState(dim_a, dim_b, a)


def partial_transpose_b(rho, dim_a: int = None, dim_b: int = None) -> np.ndarray:
    """Transpose on the B factor only.

    Accepts a DensityOperator (dims implied) or a raw matrix with explicit
    dims.  Index shuffle: out[i*dB+l, k*dB+j] = in[i*dB+j, k*dB+l].
    """
    if isinstance(rho, DensityOperator):
        m, da, db = rho.mat, rho.dim_a, rho.dim_b
    else:
        if dim_a is None or dim_b is None:
            raise DimensionMismatchError(
                "partial transpose of a raw matrix needs explicit dims"
            )
        m, da, db = linalg.as_matrix(rho), dim_a, dim_b
        if m.shape != (da * db, da * db):
            raise DimensionMismatchError(
                f"shape {m.shape} does not match dims ({da}, {db})"
            )
    return (
        m.reshape(da, db, da, db).transpose(0, 3, 2, 1).reshape(da * db, da * db)
    )


@dataclass(frozen=True)
class PptVerdict:
    """PPT yes/no plus the minimum eigenvalue of the partial transpose."""

    ppt: bool
    min_eigenvalue: float

    def __bool__(self):
        return self.ppt


def is_ppt(rho: DensityOperator, tol_neg: float = TOL_NEG) -> PptVerdict:
    """Whether the partial transpose has no eigenvalue below -tol_neg."""
    wmin = linalg.min_eigenvalue(partial_transpose_b(rho))
    return PptVerdict(ppt=wmin >= -tol_neg, min_eigenvalue=wmin)


def schmidt_rank(psi: PureState) -> int:
    """Number of singular values of the coefficient matrix above TOL_RANK.

    Uses LAPACK's SVD directly: a rank cut at 1e-12 needs the small
    singular values resolved to machine precision, and any route through
    the Gram matrix floors their resolution at sqrt(eps) ~ 1e-8 (a product
    state pushed through a dense filter would come back as rank 2).
    """
    sv = np.linalg.svd(psi.coefficient_matrix(), compute_uv=False)
    return int(np.count_nonzero(sv > TOL_RANK))


def normalize(mat, dim_a: int, dim_b: int):
    """Turn an unnormalized PSD matrix into (DensityOperator, weight).

    weight is the trace divided out; callers use it as the filtering yield.
    Raises NotPSDError / ZeroTraceError when the input cannot be a state.
    """
    m = linalg.as_matrix(mat)
    n = dim_a * dim_b
    if m.shape != (n, n):
        raise DimensionMismatchError(
            f"shape {m.shape} does not match dims ({dim_a}, {dim_b})"
        )
    tr = np.trace(m).real
    if tr <= TOL_RANK:
        raise ZeroTraceError(f"cannot normalize: trace = {tr!r}")
    # hermiticity and positivity are re-checked by the constructor and
    # surface as NotHermitianError / NotPSDError from here
    return DensityOperator(dim_a, dim_b, m / tr), float(tr)


# ---------------------------------------------------------------------------
# JSON exchange
# ---------------------------------------------------------------------------


def state_to_json_dict(rho: DensityOperator) -> dict:
    return {
        "dimA": rho.dim_a,
        "dimB": rho.dim_b,
        "matrix": matrix_to_pairs(rho.mat),
    }


def state_from_json_dict(obj) -> DensityOperator:
    dim_a = require_key(obj, "dimA", "state")
    dim_b = require_key(obj, "dimB", "state")
    if not isinstance(dim_a, int) or not isinstance(dim_b, int):
        raise ParseError("state: dimA and dimB must be integers")
    m = pairs_to_matrix(require_key(obj, "matrix", "state"), "state matrix")
    n = dim_a * dim_b
    if m.shape != (n, n):
        raise ParseError(
            f"state matrix: shape {m.shape} does not match "
            f"dimA * dimB = {n}"
        )
    return DensityOperator(dim_a, dim_b, m)
