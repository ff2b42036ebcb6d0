"""Measurement-based realization of diagonal filters.

A diagonal filter D = diag(d), 0 < d_j <= 1, is implemented by attaching a
qubit ancilla in |0> and measuring the doubled-dimension projector

    P = [[D, Delta], [Delta, I - D]],   Delta = sqrt(D (I - D)),

whose blocks are ordered ancilla-first: coordinates [0, n) are ancilla |0>,
[n, 2n) are ancilla |1>.  Sandwiching |0><0| x rho with P and postselecting
the ancilla on |0> leaves D rho D up to normalization; the success
probability is tr(D rho D).  A general invertible filter L = U D V runs V
first, then the rescaled diagonal measurement with d = diag(D)/sigma_max,
then U, so the whole protocol implements L/sigma_max.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import BadDiagonalError, DimensionMismatchError, NotPSDError
from .filters import LocalFilter
from .states import DensityOperator, normalize
from .tolerances import TOL_HERM, TOL_NEG


@dataclass(frozen=True, eq=False)
class FilterProjector:
    """The 2n x 2n projector realizing a diagonal filter."""

    d: np.ndarray
    mat: np.ndarray

    @property
    def n(self) -> int:
        return self.d.shape[0]


def _check_diag(d) -> np.ndarray:
    d = np.asarray(d, dtype=np.float64).reshape(-1)
    if d.size == 0:
        raise BadDiagonalError("empty diagonal")
    for j, val in enumerate(d):
        if not np.isfinite(val) or val <= 0.0 or val > 1.0:
            raise BadDiagonalError(
                f"diagonal entry {j} = {val!r} is outside (0, 1]"
            )
    return d


def build_projector(d) -> FilterProjector:
    """Assemble P = [[D, Delta], [Delta, I - D]] for d in (0, 1]^n."""
    d = _check_diag(d)
    n = d.size
    dm = np.diag(d)
    delta = np.diag(np.sqrt(d * (1.0 - d)))
    p = np.zeros((2 * n, 2 * n))
    p[:n, :n] = dm
    p[:n, n:] = delta
    p[n:, :n] = delta
    p[n:, n:] = np.eye(n) - dm
    return FilterProjector(d=d, mat=p)


def rank_one_projectors(d) -> list:
    """P as a sum of rank-one projectors, one per diagonal entry.

    Term j is the projector onto sqrt(d_j)|0, j> + sqrt(1 - d_j)|1, j>;
    the terms are mutually orthogonal and sum to the block matrix of
    build_projector.
    """
    d = _check_diag(d)
    n = d.size
    out = []
    for j in range(n):
        vec = np.zeros(2 * n)
        vec[j] = np.sqrt(d[j])
        vec[n + j] = np.sqrt(1.0 - d[j])
        out.append(np.outer(vec, vec))
    return out


def embed_with_ancilla(rho: np.ndarray) -> np.ndarray:
    """|0><0| x rho on the doubled space (ancilla coordinates first)."""
    rho = linalg.as_matrix(rho)
    n = linalg.require_square(rho, "state to embed")
    out = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    out[:n, :n] = rho
    return out


def postselect_intermediate(d, rho: np.ndarray) -> np.ndarray:
    """The full 2n x 2n matrix P (|0><0| x rho) P before postselection.

    Debug accessor: the four n x n blocks are D rho D, D rho Delta,
    Delta rho D and Delta rho Delta.
    """
    p = build_projector(d)
    rho = linalg.as_matrix(rho)
    if rho.shape != (p.n, p.n):
        raise DimensionMismatchError(
            f"state shape {rho.shape} does not match diagonal length {p.n}"
        )
    return linalg.sandwich(p.mat, embed_with_ancilla(rho))


def postselect_diag(d, rho: np.ndarray):
    """Measure the projector and keep the ancilla-|0> outcome.

    Returns (unnormalized post-measurement block, success probability).
    The block equals D rho D; the probability is its trace.  Input must be
    PSD Hermitian (a bare matrix, not necessarily unit trace).
    """
    rho = linalg.as_matrix(rho)
    n = linalg.require_square(rho, "postselection input")
    defect = linalg.herm_defect(rho)
    if defect > TOL_HERM:
        raise NotPSDError(
            f"postselection input not Hermitian: defect {defect:.3e}"
        )
    wmin = linalg.min_eigenvalue(rho)
    if wmin < -TOL_NEG:
        raise NotPSDError(
            f"postselection input not PSD: min eigenvalue {wmin:.6e}"
        )
    full = postselect_intermediate(d, rho)
    block = full[:n, :n]
    return block, float(np.trace(block).real)


def rescaled_diag(svdres: linalg.SVDResult):
    """Singular values scaled into (0, 1] by sigma_max; returns (d, scale)."""
    smax = svdres.sigma_max
    if smax <= 0.0:
        raise BadDiagonalError("cannot rescale an all-zero singular spectrum")
    return svdres.d / smax, smax


def protocol_analytic(f: LocalFilter, rho: DensityOperator, bob_first: bool = False):
    """Run the three-step measurement protocol in closed form.

    Steps: local unitaries V1 x V2 from the filter SVDs, both diagonal
    postselections with rescaled singular values, local unitaries U1 x U2.
    Returns (output DensityOperator, total success probability); the output
    equals the filtered state and the probability is
    yield / (sigma_max(L) sigma_max(M))^2.  bob_first only changes the
    order in which the two commuting postselections are applied.
    """
    if f.dims != rho.dims:
        raise DimensionMismatchError(
            f"filter dims {f.dims} do not match state dims {rho.dims}"
        )
    da, db = rho.dims
    d1, _ = rescaled_diag(f.svd_l)
    d2, _ = rescaled_diag(f.svd_m)
    state = linalg.sandwich(np.kron(f.svd_l.v, f.svd_m.v), rho.mat)
    steps = [
        np.kron(np.diag(d1), np.eye(db)),
        np.kron(np.eye(da), np.diag(d2)),
    ]
    if bob_first:
        steps.reverse()
    for s in steps:
        state = linalg.sandwich(s, state)
    prob = float(np.trace(state).real)
    state = linalg.sandwich(np.kron(f.svd_l.u, f.svd_m.u), state)
    out, _ = normalize(state, da, db)
    return out, prob
