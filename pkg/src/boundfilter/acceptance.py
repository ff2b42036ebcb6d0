"""The eight reproduction checks behind `verify-paper`.

Each check returns a CheckResult row (name, expected, observed, pass); the
suite is deterministic, uses fixed seeds, and prints no timings, so two
runs with the same build produce byte-identical reports.  The witness
negativity threshold is injectable so a harness can verify that loosening
it really does break the detection checks.
"""

from dataclasses import dataclass

import numpy as np

from . import catalog, linalg, measure, mcsim
from .filters import apply_filter, filtered_pure, make_filter
from .formats import fmt_num
from .states import (
    DensityOperator,
    PureState,
    is_ppt,
    normalize,
    partial_transpose_b,
    schmidt_rank,
)
from .tolerances import TOL_NEG
from .witness import (
    Side,
    Witness,
    WitnessKind,
    apply_witness,
    choi_phi,
    choi_psi,
    detect,
)

# frozen on the first verified run; the filtered tile state's negative
# eigenvalue under (choi-psi, side B)
UPB_FILTERED_MIN_EIG = -0.008806706057633812

# window edges as printed (rederived: 0.6044284958305746, 0.6554730509561605)
WINDOW_LO = 0.6044
WINDOW_HI = 0.6554


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: str
    observed: str
    passed: bool


def _random_density(rng, dim_a, dim_b) -> DensityOperator:
    n = dim_a * dim_b
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = g @ g.conj().T
    return normalize(m, dim_a, dim_b)[0]


def _random_pure(rng, dim_a, dim_b, rank=None) -> PureState:
    """Haar-ish random ket of prescribed Schmidt rank (full rank if None)."""
    r = rank if rank is not None else min(dim_a, dim_b)
    ua = _random_unitary(rng, dim_a)
    ub = _random_unitary(rng, dim_b)
    coef = np.sort(rng.uniform(0.2, 1.0, size=r))[::-1]
    coef = coef / np.linalg.norm(coef)
    amps = np.zeros(dim_a * dim_b, dtype=np.complex128)
    for i in range(r):
        amps += coef[i] * np.kron(ua[:, i], ub[:, i])
    return PureState(dim_a, dim_b, amps)


def _random_unitary(rng, n) -> np.ndarray:
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _random_invertible(rng, n) -> np.ndarray:
    while True:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        if linalg.svd(g).sigma_min > 1e-3:
            return g


def _random_separable(rng, dim_a, dim_b, terms=4) -> DensityOperator:
    n = dim_a * dim_b
    m = np.zeros((n, n), dtype=np.complex128)
    weights = rng.uniform(0.2, 1.0, size=terms)
    weights /= weights.sum()
    for w in weights:
        ga = rng.standard_normal((dim_a, dim_a)) + 1j * rng.standard_normal(
            (dim_a, dim_a)
        )
        gb = rng.standard_normal((dim_b, dim_b)) + 1j * rng.standard_normal(
            (dim_b, dim_b)
        )
        pa = ga @ ga.conj().T
        pb = gb @ gb.conj().T
        m += w * np.kron(pa / np.trace(pa).real, pb / np.trace(pb).real)
    return normalize(m, dim_a, dim_b)[0]


# ---------------------------------------------------------------------------
# the eight checks
# ---------------------------------------------------------------------------


def check_choi_window(neg_tol: float = TOL_NEG) -> CheckResult:
    """Filtered detection window of the two-parameter family at t = 1/20.

    Interior sampling: the printed left endpoint is a rounded-down edge (the
    exact filtered crossing is at x ~ 0.60442850), so the 50 probe points
    live strictly inside the open interval.
    """
    t = 0.05
    f = catalog.choi_example_filter()
    w = Witness(WitnessKind.CHOI_PHI, Side.A, 3)
    xs = np.linspace(WINDOW_LO, WINDOW_HI, 52)[1:-1]
    unf_floor = np.inf
    fil_ceil = -np.inf
    for x in xs:
        rho = catalog.rho_xt(float(x), t)
        unf = linalg.min_eigenvalue(apply_witness(w, rho))
        fil = linalg.min_eigenvalue(
            apply_witness(w, apply_filter(f, rho)[0])
        )
        unf_floor = min(unf_floor, unf)
        fil_ceil = max(fil_ceil, fil)
    window_ok = unf_floor >= -neg_tol and fil_ceil < -neg_tol

    grid = np.linspace(0.58, 0.68, 1000)
    unf_vals = np.empty(grid.size)
    fil_vals = np.empty(grid.size)
    for i, x in enumerate(grid):
        rho = catalog.rho_xt(float(x), t)
        unf_vals[i] = linalg.min_eigenvalue(apply_witness(w, rho))
        fil_vals[i] = linalg.min_eigenvalue(
            apply_witness(w, apply_filter(f, rho)[0])
        )

    def crossings(vals):
        s = np.sign(vals)
        idx = np.nonzero(s[:-1] != s[1:])[0]
        return [(grid[i] + grid[i + 1]) / 2 for i in idx]

    # the filtered column crosses zero at the lower edge, the unfiltered
    # one at the upper edge
    lo_edges = crossings(fil_vals)
    hi_edges = crossings(unf_vals)
    edges_ok = (
        len(lo_edges) == 1
        and len(hi_edges) == 1
        and abs(lo_edges[0] - WINDOW_LO) <= 0.002
        and abs(hi_edges[0] - WINDOW_HI) <= 0.002
    )
    passed = window_ok and edges_ok
    observed = (
        f"unfiltered floor {fmt_num(unf_floor)}, "
        f"filtered ceil {fmt_num(fil_ceil)}, "
        f"edges {fmt_num(lo_edges[0]) if lo_edges else 'none'} / "
        f"{fmt_num(hi_edges[0]) if hi_edges else 'none'}"
    )
    return CheckResult(
        name="choi-window",
        expected=(
            f"unfiltered >= {fmt_num(-neg_tol)} and filtered < "
            f"{fmt_num(-neg_tol)} across 50 interior points; edges within "
            f"0.002 of {WINDOW_LO} and {WINDOW_HI}"
        ),
        observed=observed,
        passed=passed,
    )


def check_upb(neg_tol: float = TOL_NEG) -> CheckResult:
    """Tile state: PPT, invisible to choi-psi:B, visible after the rotation."""
    rho = catalog.rho_upb()
    verdict = is_ppt(rho)
    w = Witness(WitnessKind.CHOI_PSI, Side.B, 3)
    before = detect(w, rho, "rho-upb", tol_neg=neg_tol)
    filtered, _ = apply_filter(catalog.upb_rotation_filter(), rho)
    after = detect(w, filtered, "rho-upb-filtered", tol_neg=neg_tol)
    regression_ok = abs(after.min_eigenvalue - UPB_FILTERED_MIN_EIG) <= 1e-10
    passed = (
        verdict.ppt
        and not before.detected
        and after.detected
        and regression_ok
    )
    observed = (
        f"pt min {fmt_num(verdict.min_eigenvalue)}, "
        f"before {fmt_num(before.min_eigenvalue)}, "
        f"after {fmt_num(after.min_eigenvalue)}"
    )
    return CheckResult(
        name="upb-filter",
        expected=(
            f"PPT; undetected before; detected after with min eig within "
            f"1e-10 of {fmt_num(UPB_FILTERED_MIN_EIG)}"
        ),
        observed=observed,
        passed=passed,
    )


def check_schmidt_invariance() -> CheckResult:
    """Filtering never changes the Schmidt rank of a pure state."""
    rng = np.random.default_rng(20240811)
    bad = 0
    cases = 0
    for da, db in ((2, 2), (3, 3)):
        for _ in range(100):
            rank = int(rng.integers(1, min(da, db) + 1))
            psi = _random_pure(rng, da, db, rank=rank)
            f = make_filter(
                _random_invertible(rng, da), _random_invertible(rng, db)
            )
            before = schmidt_rank(psi)
            after = schmidt_rank(filtered_pure(f, psi))
            cases += 1
            if before != rank or after != before:
                bad += 1
    return CheckResult(
        name="schmidt-invariance",
        expected="rank preserved in 200/200 filtered pure states",
        observed=f"{cases - bad}/{cases} preserved",
        passed=bad == 0,
    )


def check_ppt_invariance() -> CheckResult:
    """Filtering preserves PPT, and the partial transpose of the filtered
    state equals the conjugated-filter sandwich of the partial transpose."""
    rng = np.random.default_rng(20240812)
    bad = 0
    worst = 0.0
    for _ in range(100):
        rho = _random_separable(rng, 3, 3)
        if not is_ppt(rho):
            bad += 1
            continue
        f = make_filter(
            _random_invertible(rng, 3), _random_invertible(rng, 3)
        )
        filtered, weight = apply_filter(f, rho)
        if not is_ppt(filtered):
            bad += 1
        lhs = partial_transpose_b(filtered) * weight
        conj = np.kron(f.l, f.m.conj())
        rhs = linalg.sandwich(conj, partial_transpose_b(rho))
        dev = float(np.abs(lhs - rhs).max())
        worst = max(worst, dev)
        if dev > 1e-10:
            bad += 1
    return CheckResult(
        name="ppt-invariance",
        expected=(
            "100/100 PPT mixtures stay PPT; conjugation identity within "
            "1e-10 entrywise"
        ),
        observed=f"{100 - bad}/100 clean, worst identity deviation "
        f"{fmt_num(worst)}",
        passed=bad == 0,
    )


def check_measurement_equivalence() -> CheckResult:
    """Closed-form protocol output equals direct filtering; ancilla
    postselection block equals the diagonal sandwich."""
    rng = np.random.default_rng(20240813)
    worst_state = 0.0
    worst_prob = 0.0
    cases = []
    for label, f in catalog.paper_filters().items():
        cases.append((label, f))
    cases.append(("identity", catalog.resolve_filter("identity", (3, 3))))
    bad = 0
    for label, f in cases:
        da, db = f.dims
        for _ in range(20):
            rho = _random_density(rng, da, db)
            direct, weight = apply_filter(f, rho)
            via_protocol, prob = measure.protocol_analytic(f, rho)
            scale = (f.svd_l.sigma_max * f.svd_m.sigma_max) ** 2
            dev = float(np.abs(direct.mat - via_protocol.mat).max())
            pdev = abs(prob - weight / scale)
            worst_state = max(worst_state, dev)
            worst_prob = max(worst_prob, pdev)
            if dev > 1e-10 or pdev > 1e-10:
                bad += 1
    worst_block = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 5))
        d = rng.uniform(0.05, 1.0, size=n)
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        block, _ = measure.postselect_diag(d, rho)
        oracle = np.diag(d) @ rho @ np.diag(d)
        worst_block = max(worst_block, float(np.abs(block - oracle).max()))
    passed = bad == 0 and worst_block <= 1e-12
    return CheckResult(
        name="measurement-equivalence",
        expected=(
            "protocol state within 1e-10 of filtered state for every "
            "catalog filter x 20 states; postselected block within 1e-12 "
            "of the diagonal sandwich"
        ),
        observed=(
            f"worst state dev {fmt_num(worst_state)}, worst prob dev "
            f"{fmt_num(worst_prob)}, worst block dev {fmt_num(worst_block)}"
        ),
        passed=passed,
    )


def check_projector_algebra() -> CheckResult:
    """P is a Hermitian projector of trace n with orthogonal rank-1 terms."""
    rng = np.random.default_rng(20240814)
    diags = []
    for f in catalog.paper_filters().values():
        diags.append(measure.rescaled_diag(f.svd_l)[0])
        diags.append(measure.rescaled_diag(f.svd_m)[0])
    for _ in range(50):
        n = int(rng.integers(2, 6))
        diags.append(rng.uniform(0.02, 1.0, size=n))
    worst = 0.0
    for d in diags:
        p = measure.build_projector(d)
        n = p.n
        worst = max(worst, float(np.abs(p.mat @ p.mat - p.mat).max()))
        worst = max(worst, float(np.abs(p.mat - p.mat.T.conj()).max()))
        worst = max(worst, abs(float(np.trace(p.mat)) - n))
        terms = measure.rank_one_projectors(d)
        total = np.zeros_like(p.mat)
        for i, ti in enumerate(terms):
            total += ti
            for j in range(i + 1, n):
                worst = max(worst, float(np.abs(ti @ terms[j]).max()))
        worst = max(worst, float(np.abs(total - p.mat).max()))
    return CheckResult(
        name="projector-algebra",
        expected=(
            f"P^2 = P, P = P^dag, tr P = n, orthogonal rank-1 terms for "
            f"{len(diags)} diagonals, all within 1e-10"
        ),
        observed=f"worst deviation {fmt_num(worst)}",
        passed=worst <= 1e-10,
    )


def check_monte_carlo() -> CheckResult:
    """Acceptance rates concentrate on the analytic probability and the
    accepted branch state matches the filtered state."""
    f = catalog.choi_example_filter()
    rho = catalog.rho_xt(0.63, 0.05)
    reference, _ = apply_filter(f, rho)
    shots = 10_000
    within = 0
    worst_state = 0.0
    p = None
    for seed in range(1, 21):
        run = mcsim.run_protocol(f, rho, shots, seed)
        p = run.total_prob
        se = np.sqrt(p * (1 - p) / shots)
        if abs(run.acceptance_rate - p) <= 4 * se:
            within += 1
        worst_state = max(
            worst_state,
            float(np.abs(run.estimated_state - reference.mat).max()),
        )
    passed = within >= 19 and worst_state <= 1e-10
    return CheckResult(
        name="monte-carlo",
        expected=(
            "acceptance within 4 binomial SE of analytic prob in >= 19/20 "
            "seeds at 10^4 shots; branch state within 1e-10 of filtered"
        ),
        observed=(
            f"{within}/20 seeds within band around p = {fmt_num(p)}, worst "
            f"branch dev {fmt_num(worst_state)}"
        ),
        passed=passed,
    )


def check_positive_not_cp(neg_tol: float = TOL_NEG) -> CheckResult:
    """One-sided Choi maps push the maximally entangled state negative but
    keep every plain PSD input positive."""
    amps = np.zeros(9)
    amps[[0, 4, 8]] = 1.0 / np.sqrt(3.0)
    omega = DensityOperator(3, 3, np.outer(amps, amps))
    negs = []
    for kind in (WitnessKind.CHOI_PHI, WitnessKind.CHOI_PSI):
        w = Witness(kind, Side.A, 3)
        negs.append(linalg.min_eigenvalue(apply_witness(w, omega)))
    entangled_seen = all(v < -neg_tol for v in negs)
    rng = np.random.default_rng(20240815)
    worst = np.inf
    for _ in range(200):
        g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        psd = g @ g.conj().T
        for mapf in (choi_phi, choi_psi):
            worst = min(worst, linalg.min_eigenvalue(mapf(psd)))
    positivity_ok = worst >= -1e-10
    return CheckResult(
        name="positive-not-cp",
        expected=(
            "both maps negative on the maximally entangled state; "
            "200 random PSD inputs stay PSD within 1e-10"
        ),
        observed=(
            f"entangled-state min eigs {fmt_num(negs[0])} / "
            f"{fmt_num(negs[1])}, PSD floor {fmt_num(worst)}"
        ),
        passed=entangled_seen and positivity_ok,
    )


ALL_CHECKS = (
    check_choi_window,
    check_upb,
    check_schmidt_invariance,
    check_ppt_invariance,
    check_measurement_equivalence,
    check_projector_algebra,
    check_monte_carlo,
    check_positive_not_cp,
)


def run_all(neg_tol: float = TOL_NEG) -> list:
    """Run the whole suite; neg_tol reaches the checks that use a witness
    threshold (the others ignore it)."""
    results = []
    for chk in ALL_CHECKS:
        if chk in (check_choi_window, check_upb, check_positive_not_cp):
            results.append(chk(neg_tol))
        else:
            results.append(chk())
    return results
