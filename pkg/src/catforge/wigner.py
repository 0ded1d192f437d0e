"""Phase-space back-end: closed-form Wigner functions and grid overlaps.

All evaluators take canonical quadratures (x, p) with vacuum Wigner
exp(-x^2 - p^2)/pi (see conventions.py).  The published closed forms for
the subtracted/added states are written in a scaled variable; matching
them against the Fock-basis Wigner transform pins the scaling to
beta_r = x/sqrt(2), beta_i = p/sqrt(2) for the two-component states and
to plain (x, p) for the N-photon-subtracted family.  Those scalings are
hard-coded here and enforced by the oracle-equivalence tests.
"""

import io
import json
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import trapezoid
from scipy.linalg import expm

from .errors import (
    BoundaryLeakWarning,
    GridMismatch,
    InvalidParam,
    OverflowGuard,
    SingularParameter,
)
from .fock import FockVector
from .targets import CatTarget

#: Above this boundary weight, overlap integrals warn about truncation.
BOUNDARY_TOL = 1e-10


# ---------------------------------------------------------------------------
# Grids
# ---------------------------------------------------------------------------

@dataclass
class WignerGrid:
    """Wigner function sampled on a uniform rectangular grid.

    values[i, j] = W(x_axis[i], p_axis[j]).
    """

    x_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def integral(self) -> float:
        return float(trapezoid(trapezoid(self.values, self.p_axis, axis=1), self.x_axis))

    def purity(self) -> float:
        """2 pi * integral of W^2, equal to 1 for a pure state."""
        return float(2.0 * np.pi * trapezoid(trapezoid(self.values**2, self.p_axis, axis=1), self.x_axis))

    def boundary_max(self) -> float:
        edges = [self.values[0, :], self.values[-1, :], self.values[:, 0], self.values[:, -1]]
        return float(max(np.max(np.abs(e)) for e in edges))

    def same_axes(self, other: "WignerGrid") -> bool:
        return (
            self.values.shape == other.values.shape
            and np.array_equal(self.x_axis, other.x_axis)
            and np.array_equal(self.p_axis, other.p_axis)
        )

    # -- serialization ------------------------------------------------------

    def to_csv(self) -> str:
        """CSV matrix with a one-line header describing axes and state."""
        x, p = self.x_axis, self.p_axis
        desc = self.meta.get("state", "")
        head = (
            f"# state={desc} x_min={x[0]:.12g} x_max={x[-1]:.12g} x_n={len(x)}"
            f" p_min={p[0]:.12g} p_max={p[-1]:.12g} p_n={len(p)}"
            f" layout=rows-x-cols-p"
        )
        buf = io.StringIO()
        buf.write(head + "\n")
        for row in self.values:
            buf.write(",".join(f"{v:.12g}" for v in row) + "\n")
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "x_axis": [float(v) for v in self.x_axis],
                "p_axis": [float(v) for v in self.p_axis],
                "values": [[float(v) for v in row] for row in self.values],
                "meta": self.meta,
            },
            indent=None,
            separators=(",", ":"),
            sort_keys=True,
        )


def grid_axes(extent: float, n_points: int) -> tuple[np.ndarray, np.ndarray]:
    ax = np.linspace(-extent, extent, n_points)
    return ax, ax.copy()


def evaluate_on_grid(fn, extent: float = 10.0, n_points: int = 401, meta: dict | None = None) -> WignerGrid:
    """Fill a WignerGrid from a vectorized pointwise evaluator fn(x, p)."""
    x, p = grid_axes(extent, n_points)
    values = fn(x[:, None], p[None, :])
    return WignerGrid(x, p, np.asarray(values, dtype=float), meta or {})


# ---------------------------------------------------------------------------
# Closed forms for the two-component ideal states
# ---------------------------------------------------------------------------

def _two_component_wigner(x, p, r: float, kappa: float):
    """Wigner function of N S(r)(|0> + sqrt(2) kappa |2>), normalized.

    Written in the scaled variable beta = (x + i p)/sqrt(2); the overall
    constant kappa-dependent normalization 1/(pi (1 + 2 kappa^2)) makes the
    function integrate to 1 exactly (the value at the origin is 1/pi for
    any parameters, as it must be for an even pure state).
    """
    br2 = x * x / 2.0
    bi2 = p * p / 2.0
    big_z = np.exp(2.0 * r) * br2 + np.exp(-2.0 * r) * bi2
    big_zp = -4.0 * np.exp(2.0 * r) * br2 + 4.0 * np.exp(-2.0 * r) * bi2
    c = -kappa  # the published bracket multiplies Z' by -kappa (tanh or coth)
    norm = 1.0 / (np.pi * (1.0 + 2.0 * kappa**2))
    return norm * np.exp(-2.0 * big_z) * (
        1.0 + 2.0 * c * (big_zp + c * (1.0 + 8.0 * big_z * (big_z - 1.0)))
    )


def wigner_tpss(x, p, r: float):
    """Wigner function of the two-photon-subtracted squeezed vacuum."""
    return _two_component_wigner(x, p, r, -np.tanh(r))


def wigner_psas(x, p, r: float):
    """Wigner function of the photon-subtracted-then-added squeezed vacuum."""
    if r == 0.0:
        raise SingularParameter("coth(r) diverges at r = 0")
    return _two_component_wigner(x, p, r, -1.0 / np.tanh(r))


def wigner_sscs(x, p, target: CatTarget):
    """Wigner function of a (squeezed) cat state.

    Two displaced Gaussian lobes along x plus an interference term whose
    sign is the cat parity; gp = exp(-2 r') stretches x and compresses p.
    """
    gp = np.exp(-2.0 * target.r_prime)
    sign = target.parity_sign
    n2 = target.norm_constant**2
    lobe = np.exp(-((x - np.sqrt(2.0 * gp) * target.alpha) ** 2) / gp) + np.exp(
        -((x + np.sqrt(2.0 * gp) * target.alpha) ** 2) / gp
    )
    fringe = 2.0 * np.exp(-(x**2) / gp) * np.cos(2.0 * np.sqrt(2.0 * gp) * target.alpha * p)
    return n2 * np.exp(-gp * p**2) / np.pi * (lobe + sign * fringe)


# ---------------------------------------------------------------------------
# Hermite polynomials and the N-photon-subtracted family
# ---------------------------------------------------------------------------

def hermite_complex(n: int, z):
    """Physicists' Hermite polynomial H_n(z) for complex z, by recursion."""
    if n < 0:
        raise InvalidParam("Hermite order must be >= 0")
    z = np.asarray(z)
    h_prev = np.ones_like(z)
    if n == 0:
        return h_prev
    h = 2.0 * z
    for k in range(1, n):
        h, h_prev = 2.0 * z * h - 2.0 * k * h_prev, h
    return h


def _hermite_ladder(n_max: int, z) -> list:
    hs = [np.ones_like(z), 2.0 * z]
    for k in range(1, n_max):
        hs.append(2.0 * z * hs[k] - 2.0 * k * hs[k - 1])
    return hs[: n_max + 1]


@dataclass(frozen=True)
class NpssParams:
    """Parameters of the N-photon-subtracted squeezed vacuum.

    n_subtract  number of photons counted in the tap (1..15)
    big_r       effective parameter R = T |tanh r|, in (0, 1)

    lam = (1 - R)/(1 + R) in (0, 1).  The resulting state is exactly the
    N-photon-subtracted squeezed vacuum of a momentum-squeezed source with
    |tanh r_eff| = R (cats along x); its best-matching cat targets
    therefore carry negative r'.
    """

    n_subtract: int
    big_r: float

    def __post_init__(self):
        if not 1 <= self.n_subtract:
            raise InvalidParam("n_subtract must be >= 1")
        if self.n_subtract > 15:
            raise OverflowGuard(
                "n_subtract > 15 refused: the Hermite terms grow past the point "
                "where the plain recursion keeps full precision"
            )
        if not 0.0 < self.big_r < 1.0:
            raise InvalidParam(f"big_r must be in (0, 1), got {self.big_r}")

    @property
    def lam(self) -> float:
        return (1.0 - self.big_r) / (1.0 + self.big_r)


def _wigner_npss_raw(x, p, params: NpssParams):
    """Unnormalized N-photon-subtracted Wigner function.

    Gaussian envelope exp(-lam x^2 - p^2/lam) times a sum of squared
    complex-argument Hermite polynomials; evaluated in plain (x, p).
    """
    n, big_r, lam = params.n_subtract, params.big_r, params.lam
    z = 1j * np.sqrt(big_r * lam) * (x + 1j * p / lam)
    hs = _hermite_ladder(n, z)
    total = 0.0
    for k in range(n + 1):
        coeff = (-2.0 * big_r) ** k / (math.factorial(k) * math.factorial(n - k) ** 2)
        total = total + coeff * np.abs(hs[n - k]) ** 2
    return np.exp(-lam * x**2 - p**2 / lam) * total


@lru_cache(maxsize=64)
def _npss_norm(n_subtract: int, big_r: float) -> float:
    """Normalization by wide quadrature; the closed-form constant is not trusted."""
    params = NpssParams(n_subtract, big_r)
    lam = params.lam
    extent = (6.0 + 2.5 * np.sqrt(n_subtract)) / np.sqrt(min(lam, 1.0 / lam))
    x = np.linspace(-extent, extent, 801)
    p = x
    raw = _wigner_npss_raw(x[:, None], p[None, :], params)
    return float(trapezoid(trapezoid(raw, p, axis=1), x))


def wigner_npss(x, p, params: NpssParams):
    """Normalized Wigner function of the N-photon-subtracted squeezed vacuum."""
    return _wigner_npss_raw(x, p, params) / _npss_norm(params.n_subtract, float(params.big_r))


def npss_grid_extent(params: NpssParams) -> float:
    """Grid half-width that keeps boundary weight below the leak threshold."""
    lam = params.lam
    return float((6.0 + 2.5 * np.sqrt(params.n_subtract)) / np.sqrt(min(lam, 1.0 / lam)))


# ---------------------------------------------------------------------------
# Overlap fidelity
# ---------------------------------------------------------------------------

def overlap_fidelity(a: WignerGrid, b: WignerGrid) -> float:
    """2 pi * integral of W_a W_b; equals |<psi_a|psi_b>|^2 for pure states."""
    if not a.same_axes(b):
        raise GridMismatch("overlap requires identical grid axes")
    leak = max(a.boundary_max(), b.boundary_max())
    if leak > BOUNDARY_TOL:
        warnings.warn(
            f"grid boundary weight {leak:.2e} exceeds {BOUNDARY_TOL:.0e}; widen the grid",
            BoundaryLeakWarning,
            stacklevel=2,
        )
    return float(2.0 * np.pi * trapezoid(trapezoid(a.values * b.values, a.p_axis, axis=1), a.x_axis))


# ---------------------------------------------------------------------------
# Fock-basis Wigner transforms (oracle side)
# ---------------------------------------------------------------------------

def _as_density_matrix(state) -> np.ndarray:
    if isinstance(state, FockVector):
        return np.outer(state.amps, state.amps.conj())
    rho = np.asarray(state, dtype=complex)
    if rho.ndim == 1:
        return np.outer(rho, rho.conj())
    return rho


def fock_wigner_point(state, x: float, p: float) -> float:
    """Displaced-parity Wigner value at one point, by brute force.

    W(x, p) = (1/pi) Tr[ D^dag(alpha) rho D(alpha) (-1)^n ] with
    alpha = (x + i p)/sqrt(2) and D built as a dense matrix exponential.
    Slow but direct; used to validate the grid algorithm.
    """
    rho = _as_density_matrix(state)
    dim = rho.shape[0]
    alpha = (x + 1j * p) / np.sqrt(2.0)
    a = np.diag(np.sqrt(np.arange(1, dim)), 1)
    disp = expm(alpha * a.conj().T - np.conj(alpha) * a)
    parity = (-1.0) ** np.arange(dim)
    return float(np.sum(parity * np.diag(disp.conj().T @ rho @ disp).real) / np.pi)


def fock_wigner_grid(state, x_axis: np.ndarray, p_axis: np.ndarray,
                     meta: dict | None = None) -> WignerGrid:
    """Wigner function of a Fock-basis state on a grid.

    Sums the displaced-parity kernel over the density-matrix diagonals,
    evaluating each diagonal's normalized-Laguerre series with a downward
    Clenshaw recurrence.  Stable for the truncations used here, unlike the
    naive upward recurrence, and validated pointwise against
    fock_wigner_point in the tests.
    """
    rho = _as_density_matrix(state)
    dim = rho.shape[0]
    x_axis = np.asarray(x_axis, dtype=float)
    p_axis = np.asarray(p_axis, dtype=float)
    xg, pg = np.meshgrid(x_axis, p_axis, indexing="ij")
    a2 = np.sqrt(2.0) * (xg + 1j * pg)
    b = np.abs(a2) ** 2
    total = np.zeros_like(b, dtype=complex)
    pow_l = np.ones_like(a2)
    for off in range(dim):
        coeffs = np.diag(rho, off).copy() * (-1.0) ** np.arange(dim - off)
        if off > 0:
            coeffs = 2.0 * coeffs
            pow_l = pow_l * a2 / np.sqrt(off)
        y1 = np.zeros_like(b, dtype=complex)
        y2 = np.zeros_like(b, dtype=complex)
        for m in range(len(coeffs) - 1, -1, -1):
            alpha_m = (2 * m + off + 1 - b) / np.sqrt((m + 1) * (m + off + 1))
            beta_m1 = -np.sqrt((m + 1) * (m + 1 + off) / ((m + 2) * (m + 2 + off)))
            y1, y2 = coeffs[m] + alpha_m * y1 + beta_m1 * y2, y1
        total += pow_l * y1
    values = np.exp(-b / 2.0) / np.pi * total.real
    return WignerGrid(x_axis, p_axis, values, meta or {})
