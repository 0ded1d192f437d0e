"""Fidelity-landscape exploration: per-alpha optimal squeezing and sweeps.

The line search is a 21-point coarse scan followed by golden-section
refinement inside the bracketing interval.  If the coarse scan shows
several local maxima, each bracket is refined and the best result wins;
if it is flat to machine precision, the midpoint is returned with the
boundary flag set.
"""

import json
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid

from .errors import QuadratureWarning
from .targets import EVEN, ODD, CatTarget
from .wigner import (
    NpssParams,
    evaluate_on_grid,
    npss_grid_extent,
    overlap_fidelity,
    wigner_npss,
    wigner_sscs,
)

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0

#: Fixed cat squeezing for the N-photon-subtraction family (the published
#: magnitude 0.44; negative in this package's sign convention, see
#: wigner.NpssParams).
NPSS_TARGET_RPRIME = -0.44


@dataclass(frozen=True)
class LineSearchResult:
    x_opt: float
    f_opt: float
    boundary_hit: bool = False


def _golden_section(objective, lo: float, hi: float, tol: float) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = objective(c), objective(d)
    while abs(b - a) > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = objective(d)
    x = (a + b) / 2.0
    return x, objective(x)


def optimize_rprime(objective, bounds: tuple[float, float] = (-1.5, 1.5),
                    tol: float = 1e-4, coarse_points: int = 21) -> LineSearchResult:
    """Maximize a continuous objective(r') over a bounded interval.

    Coarse scan, then golden-section refinement around every coarse local
    maximum.  The boundary flag is set when the optimum lands within tol of
    a bound, and for a flat objective (midpoint returned).
    """
    lo, hi = bounds
    xs = np.linspace(lo, hi, coarse_points)
    fs = np.array([objective(x) for x in xs])
    if np.max(fs) - np.min(fs) < 1e-15 * max(1.0, abs(float(np.max(fs)))):
        mid = (lo + hi) / 2.0
        return LineSearchResult(mid, float(objective(mid)), boundary_hit=True)

    peaks = [i for i in range(coarse_points)
             if (i == 0 or fs[i] >= fs[i - 1]) and (i == coarse_points - 1 or fs[i] >= fs[i + 1])]
    best = None
    for i in peaks:
        a = xs[max(i - 1, 0)]
        b = xs[min(i + 1, coarse_points - 1)]
        if a == b:
            x, f = float(xs[i]), float(fs[i])
        else:
            x, f = _golden_section(objective, a, b, tol)
        if best is None or f > best[1]:
            best = (x, f)
    x_opt, f_opt = best
    return LineSearchResult(float(x_opt), float(f_opt),
                            boundary_hit=bool(min(x_opt - lo, hi - x_opt) < tol))


@dataclass(frozen=True)
class SweepSpec:
    """A one-parameter family of per-alpha line searches.

    objective(alpha, r_prime) -> fidelity, plus the alpha grid and the
    r' search window.  fixed_rprime pins r' (no line search), reproducing
    the "regular cat" curves.
    """

    objective: object
    alpha_lo: float = 0.0
    alpha_hi: float = 3.5
    alpha_steps: int = 71
    rprime_bounds: tuple[float, float] = (-1.5, 1.5)
    fixed_rprime: float | None = None
    tol: float = 1e-4
    warm_start: bool = True
    warm_window: float = 0.6

    def alphas(self) -> np.ndarray:
        return np.linspace(self.alpha_lo, self.alpha_hi, self.alpha_steps)


@dataclass
class SweepRow:
    alpha: float
    f_opt: float
    rprime_opt: float
    boundary_hit: bool = False
    error: str | None = None


@dataclass
class SweepResult:
    rows: list = field(default_factory=list)

    @property
    def best(self) -> SweepRow:
        ok = [r for r in self.rows if r.error is None]
        return max(ok, key=lambda r: r.f_opt)

    def to_csv(self) -> str:
        lines = ["alpha,F_opt,rprime_opt"]
        for r in self.rows:
            if r.error is None:
                lines.append(f"{r.alpha:.12g},{r.f_opt:.12g},{r.rprime_opt:.12g}")
            else:
                lines.append(f"{r.alpha:.12g},nan,nan")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        best = self.best
        return json.dumps(
            {
                "rows": [
                    {
                        "alpha": r.alpha,
                        "F_opt": r.f_opt,
                        "rprime_opt": r.rprime_opt,
                        "boundary_hit": r.boundary_hit,
                        "error": r.error,
                    }
                    for r in self.rows
                ],
                "best": {"alpha": best.alpha, "F_opt": best.f_opt, "rprime_opt": best.rprime_opt},
            },
            sort_keys=True,
            separators=(",", ":"),
        )


def sweep(spec: SweepSpec) -> SweepResult:
    """Per-alpha optimization of r'; warm-starts the window from the last optimum."""
    result = SweepResult()
    last_opt = None
    for alpha in spec.alphas():
        try:
            if spec.fixed_rprime is not None:
                f = spec.objective(alpha, spec.fixed_rprime)
                result.rows.append(SweepRow(float(alpha), float(f), spec.fixed_rprime))
                continue
            bounds = spec.rprime_bounds
            if spec.warm_start and last_opt is not None:
                bounds = (
                    max(bounds[0], last_opt - spec.warm_window),
                    min(bounds[1], last_opt + spec.warm_window),
                )
            res = optimize_rprime(lambda rp: spec.objective(alpha, rp), bounds, spec.tol)
            if res.boundary_hit and bounds != spec.rprime_bounds:
                # warm window too tight; redo on the full interval
                res = optimize_rprime(lambda rp: spec.objective(alpha, rp),
                                      spec.rprime_bounds, spec.tol)
            result.rows.append(SweepRow(float(alpha), res.f_opt, res.x_opt, res.boundary_hit))
            last_opt = res.x_opt
        except Exception as exc:  # row-level failure should not kill the sweep
            result.rows.append(SweepRow(float(alpha), float("nan"), float("nan"), error=str(exc)))
    return result


def npss_fidelity_curve(params: NpssParams, alphas, rprime: float = NPSS_TARGET_RPRIME,
                        n_points: int = 501):
    """Overlap fidelity of the N-photon-subtracted state vs cats, per alpha.

    The target parity follows the parity of the subtracted photon count.
    The subtracted-state grid is computed once; each alpha only needs a
    fresh closed-form cat grid.
    """
    parity = EVEN if params.n_subtract % 2 == 0 else ODD
    extent = npss_grid_extent(params)
    state_grid = evaluate_on_grid(lambda x, p: wigner_npss(x, p, params), extent, n_points,
                                  {"state": f"npss N={params.n_subtract} R={params.big_r}"})
    out = []
    for alpha in alphas:
        cat = evaluate_on_grid(
            lambda x, p: wigner_sscs(x, p, CatTarget(float(alpha), rprime, parity)),
            extent, n_points,
        )
        out.append(overlap_fidelity(state_grid, cat))
    return np.asarray(out)


def npss_optimal_alpha(params: NpssParams, rprime: float = NPSS_TARGET_RPRIME,
                       alpha_bounds: tuple[float, float] = (0.3, 3.4),
                       tol: float = 1e-4, n_points: int = 501) -> LineSearchResult:
    """Maximize the grid-overlap fidelity over the cat amplitude (r' fixed)."""
    parity = EVEN if params.n_subtract % 2 == 0 else ODD
    extent = npss_grid_extent(params)
    state_grid = evaluate_on_grid(lambda x, p: wigner_npss(x, p, params), extent, n_points)
    if state_grid.boundary_max() > 1e-10:
        warnings.warn("subtracted-state grid leaks at the boundary; widen it",
                      QuadratureWarning, stacklevel=2)

    def objective(alpha: float) -> float:
        cat = evaluate_on_grid(
            lambda x, p: wigner_sscs(x, p, CatTarget(alpha, rprime, parity)),
            extent, n_points,
        )
        return overlap_fidelity(state_grid, cat)

    return optimize_rprime(objective, alpha_bounds, tol)
