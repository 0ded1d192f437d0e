"""Cross-back-end validation suites.

Each check pits two independent routes to the same quantity against each
other and records the worst deviation.  The "fast" level covers the
closed forms against the Fock oracle; "full" adds the Gaussian
conditioning pipeline and the N-photon-subtraction family.
"""

from dataclasses import asdict, dataclass

import numpy as np

from . import analytic
from .couplers import BS, NOPA, CouplerParams
from .fock import (
    cat_target_fock,
    fidelity_fock,
    psas_fock,
    squeezed_vacuum_fock,
    subtract_photons_fock,
    three_mode_click_experiment,
    tpss_fock,
)
from .gaussian import DetectorModel, build_experiment, condition_two_clicks, mixture_to_grid
from .targets import CatTarget
from .wigner import (
    NpssParams,
    fock_wigner_grid,
    grid_axes,
    wigner_npss,
    wigner_psas,
    wigner_sscs,
    wigner_tpss,
)


@dataclass
class CheckResult:
    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_error <= self.tolerance)


def _fock_dim(alpha: float, r_prime: float) -> int:
    mean_n = alpha**2 * np.exp(-2.0 * min(r_prime, 0.0)) + np.sinh(r_prime) ** 2
    return int(np.clip(4 * mean_n + 40, 64, 224))


def _analytic_grid(n_per_axis: int) -> CheckResult:
    rs = np.linspace(-1.2, -0.1, n_per_axis)
    alphas = np.linspace(0.0, 3.0, n_per_axis)
    rps = np.linspace(-1.0, 0.5, n_per_axis)
    worst = 0.0
    for r in rs:
        dim = max(_fock_dim(a, rp) for a in alphas for rp in rps)
        t_state = tpss_fock(r, dim)
        p_state = psas_fock(r, dim)
        for alpha in alphas:
            for rp in rps:
                target = CatTarget(float(alpha), float(rp))
                cat = cat_target_fock(target, dim)
                worst = max(worst, abs(analytic.fidelity_tpss(r, target) - fidelity_fock(t_state, cat)))
                worst = max(worst, abs(analytic.fidelity_psas(r, target) - fidelity_fock(p_state, cat)))
    return CheckResult(f"analytic-vs-fock-{n_per_axis}x{n_per_axis}x{n_per_axis}", worst, 1e-8)


def _xrep_consistency() -> CheckResult:
    worst = 0.0
    for r in (-0.9, -0.4):
        for alpha, rp in ((0.8, -0.3), (1.7, 0.2)):
            target = CatTarget(alpha, rp)
            for state in (analytic.IdealSubtractAddState.tpss(r),
                          analytic.IdealSubtractAddState.psas(r)):
                closed = analytic._two_component_fidelity(state, target)
                worst = max(worst, abs(closed - analytic.fidelity_via_xrep(state, target)))
    return CheckResult("xrep-vs-closed-form", worst, 1e-8)


def _closed_form_wigner() -> CheckResult:
    x, p = grid_axes(9.0, 161)
    worst = 0.0
    for r in (-0.7, -0.4):
        oracle = fock_wigner_grid(tpss_fock(r, 72), x, p)
        worst = max(worst, float(np.max(np.abs(
            wigner_tpss(x[:, None], p[None, :], r) - oracle.values))))
        oracle = fock_wigner_grid(psas_fock(r, 72), x, p)
        worst = max(worst, float(np.max(np.abs(
            wigner_psas(x[:, None], p[None, :], r) - oracle.values))))
    for target in (CatTarget(1.26, -0.425), CatTarget(1.0, 0.3, "odd")):
        oracle = fock_wigner_grid(cat_target_fock(target, 72), x, p)
        worst = max(worst, float(np.max(np.abs(
            wigner_sscs(x[:, None], p[None, :], target) - oracle.values))))
    return CheckResult("closed-form-wigner-vs-fock", worst, 1e-6)


_GAUSSIAN_CONFIGS = (
    ((CouplerParams(BS, 0.99), CouplerParams(BS, 0.99)), 1.0),
    ((CouplerParams(BS, 0.99), CouplerParams(NOPA, 1.01)), 1.0),
    ((CouplerParams(BS, 0.97), CouplerParams(BS, 0.97)), 1.0),
    ((CouplerParams(BS, 0.99), CouplerParams(BS, 0.99)), 0.6),
    ((CouplerParams(BS, 0.99), CouplerParams(NOPA, 1.01)), 0.6),
    ((CouplerParams(BS, 0.95), CouplerParams(NOPA, 1.03)), 0.8),
)


def _gaussian_vs_fock(configs=_GAUSSIAN_CONFIGS) -> list:
    r = -0.7
    worst_w = 0.0
    worst_p = 0.0
    for stages, eta in configs:
        pipe = build_experiment(r, stages, DetectorModel(eta))
        mix = condition_two_clicks(pipe)
        rho, prob = three_mode_click_experiment(r, stages, eta, dim_signal=48, dim_ancilla=8)
        grid = mixture_to_grid(mix, extent=6.0, n_points=81)
        oracle = fock_wigner_grid(rho, grid.x_axis, grid.p_axis)
        worst_w = max(worst_w, float(np.max(np.abs(grid.values - oracle.values))))
        worst_p = max(worst_p, abs(mix.success - prob) / prob)
    return [
        CheckResult("gaussian-vs-fock-wigner", worst_w, 1e-4),
        CheckResult("gaussian-vs-fock-probability", worst_p, 1e-5),
    ]


def _npss_cross_checks() -> list:
    x, p = grid_axes(9.0, 161)
    # near-unit transmissivity: two-photon subtraction collapses onto a^2 S(r)|0>
    r = -0.7
    big_r = (1.0 - 1e-9) * abs(np.tanh(r))
    w_npss = wigner_npss(x[:, None], p[None, :], NpssParams(2, big_r))
    err_tpss = float(np.max(np.abs(w_npss - wigner_tpss(x[:, None], p[None, :], r))))
    # finite transmissivity against the beam-splitter-and-counter oracle
    t_bs, r2 = 0.9, -0.8
    state, _ = subtract_photons_fock(3, t_bs, r2, dim_signal=72)
    oracle = fock_wigner_grid(state, x, p)
    w_form = wigner_npss(x[:, None], p[None, :], NpssParams(3, t_bs * abs(np.tanh(r2))))
    err_oracle = float(np.max(np.abs(w_form - oracle.values)))
    return [
        CheckResult("npss-vs-tpss-limit", err_tpss, 1e-6),
        CheckResult("npss-vs-fock-subtraction", err_oracle, 1e-6),
    ]


def _ideal_limit() -> CheckResult:
    r = -0.7
    t = 1.0 - 1e-6
    pipe = build_experiment(r, (CouplerParams(BS, t), CouplerParams(BS, t)))
    mix = condition_two_clicks(pipe)
    from .gaussian import mixture_fidelity_vs_sscs

    worst = 0.0
    for alpha in (0.5, 1.26, 2.0):
        target = CatTarget(alpha, -0.425)
        worst = max(worst, abs(mixture_fidelity_vs_sscs(mix, target)
                               - analytic.fidelity_tpss(r, target)))
    return CheckResult("gaussian-ideal-limit", worst, 1e-3)


def run_checks(level: str = "fast", parallel_map=map) -> dict:
    """Run the cross-validation suite; returns a JSON-ready report."""
    if level not in ("fast", "full"):
        raise ValueError(f"unknown level {level!r}")
    tasks = [lambda: _analytic_grid(3), _xrep_consistency, _closed_form_wigner]
    if level == "full":
        tasks += [lambda: _analytic_grid(4), _gaussian_vs_fock, _npss_cross_checks, _ideal_limit]
    checks: list[CheckResult] = []
    for res in parallel_map(lambda fn: fn(), tasks):
        if isinstance(res, list):
            checks.extend(res)
        else:
            checks.append(res)
    return {
        "level": level,
        "passed": all(c.passed for c in checks),
        "checks": [dict(asdict(c), passed=c.passed) for c in checks],
    }
