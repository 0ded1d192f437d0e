"""Truncated Fock-basis states and operators.

This is the numerically exact (up to truncation) back-end: states are
complex amplitude vectors indexed by photon number, operators act as
matrices, and click conditioning produces density matrices.  The closed
forms and the Gaussian pipeline elsewhere in the package are validated
against this module.

Truncation is explicit everywhere: constructors check the weight stored
in the last entries of the vector against a leakage tolerance and raise
TruncationError when the requested dimension is too small.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .conventions import DEFAULT_DIM, LEAK_TOL
from .couplers import BS, CouplerParams
from .errors import DegenerateState, DimensionMismatch, TruncationError, ZeroProbability
from .targets import CatTarget


@dataclass(frozen=True)
class FockVector:
    """Pure single-mode state: amps[n] is the amplitude of |n>."""

    amps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amps", np.asarray(self.amps, dtype=complex))

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "FockVector":
        n = self.norm
        if n < 1e-300:
            raise DegenerateState("cannot normalize a zero vector")
        return FockVector(self.amps / n)

    def leakage(self) -> float:
        """Probability weight on the last two entries.

        Two entries, not one: even- or odd-parity states have every other
        amplitude identically zero, so the very last entry alone can be
        blind to truncation pressure.
        """
        return float(np.sum(np.abs(self.amps[-2:]) ** 2))

    def mean_photon_number(self) -> float:
        return float(np.sum(np.arange(self.dim) * np.abs(self.amps) ** 2)) / self.norm**2


@dataclass(frozen=True)
class TwoModeFockState:
    """Pure two-mode state: amps[n1, n2]."""

    amps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amps", np.asarray(self.amps, dtype=complex))

    @property
    def dims(self) -> tuple[int, int]:
        return self.amps.shape

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "TwoModeFockState":
        return TwoModeFockState(self.amps / self.norm)


def _check_leakage(vec: FockVector, leak_tol: float, what: str) -> FockVector:
    if vec.leakage() >= leak_tol:
        raise TruncationError(
            f"{what}: truncation leakage {vec.leakage():.3e} >= {leak_tol:.1e}; "
            f"increase dim (currently {vec.dim})"
        )
    return vec


def vacuum_fock(dim: int = DEFAULT_DIM) -> FockVector:
    amps = np.zeros(dim, dtype=complex)
    amps[0] = 1.0
    return FockVector(amps)


def number_state_fock(n: int, dim: int = DEFAULT_DIM) -> FockVector:
    amps = np.zeros(dim, dtype=complex)
    amps[n] = 1.0
    return FockVector(amps)


def squeezed_vacuum_fock(r: float, dim: int = DEFAULT_DIM, leak_tol: float = LEAK_TOL) -> FockVector:
    """Squeezed vacuum S(r)|0> from its even-photon-number expansion.

    amps[2k] = sqrt(sech r) * sqrt((2k)!)/k! * (-tanh(r)/2)^k, odd entries zero.
    """
    if dim < 2:
        raise TruncationError("squeezed vacuum needs dim >= 2")
    amps = np.zeros(dim, dtype=complex)
    amps[0] = 1.0
    half_tanh = -np.tanh(r) / 2.0
    for k in range(1, (dim - 1) // 2 + 1):
        amps[2 * k] = amps[2 * (k - 1)] * half_tanh * np.sqrt((2 * k) * (2 * k - 1)) / k
    amps *= np.sqrt(1.0 / np.cosh(r))
    return _check_leakage(FockVector(amps), leak_tol, f"squeezed_vacuum_fock(r={r})")


def coherent_fock(alpha: complex, dim: int = DEFAULT_DIM, leak_tol: float = LEAK_TOL) -> FockVector:
    """Coherent state |alpha> with Poissonian amplitudes."""
    amps = np.zeros(dim, dtype=complex)
    amps[0] = 1.0
    for n in range(1, dim):
        amps[n] = amps[n - 1] * alpha / np.sqrt(n)
    amps *= np.exp(-abs(alpha) ** 2 / 2.0)
    return _check_leakage(FockVector(amps), leak_tol, f"coherent_fock(alpha={alpha})")


def squeezed_coherent_fock(alpha: float, r: float, dim: int = DEFAULT_DIM,
                           leak_tol: float = LEAK_TOL) -> FockVector:
    """S(r)|alpha> for real alpha, built from a three-term recurrence.

    The amplitudes c_n = <n|S(r)|alpha> satisfy
    cosh(r) sqrt(n+1) c_{n+1} = alpha c_n - sinh(r) sqrt(n) c_{n-1},
    seeded by c_0 = sqrt(sech r) exp(-alpha^2 / (1 + e^{2r})).  This is an
    independent route to the same state as squeeze_fock(coherent_fock(...))
    and is used to cross-check the squeeze unitary.
    """
    c, s = np.cosh(r), np.sinh(r)
    amps = np.zeros(dim, dtype=complex)
    amps[0] = np.sqrt(1.0 / c) * np.exp(-(alpha**2) / (1.0 + np.exp(2.0 * r)))
    if dim > 1:
        amps[1] = alpha * amps[0] / c
    for n in range(1, dim - 1):
        amps[n + 1] = (alpha * amps[n] - s * np.sqrt(n) * amps[n - 1]) / (c * np.sqrt(n + 1))
    return _check_leakage(FockVector(amps), leak_tol, f"squeezed_coherent_fock({alpha}, {r})")


def apply_annihilation(state: FockVector) -> FockVector:
    """a |psi>, unnormalized: out[n] = sqrt(n+1) amps[n+1]."""
    out = np.zeros_like(state.amps)
    n = np.arange(1, state.dim)
    out[:-1] = np.sqrt(n) * state.amps[1:]
    return FockVector(out)


def apply_creation(state: FockVector, leak_tol: float = LEAK_TOL) -> FockVector:
    """a^dag |psi>, unnormalized: out[n] = sqrt(n) amps[n-1].

    Raises TruncationError when the top entry carries non-negligible
    amplitude, since its image would fall outside the truncated space.
    """
    if abs(state.amps[-1]) ** 2 >= leak_tol:
        raise TruncationError("apply_creation would push amplitude past the truncation edge")
    out = np.zeros_like(state.amps)
    n = np.arange(1, state.dim)
    out[1:] = np.sqrt(n) * state.amps[:-1]
    return FockVector(out)


@lru_cache(maxsize=64)
def _squeeze_matrix(r: float, dim: int) -> np.ndarray:
    a = np.diag(np.sqrt(np.arange(1, dim)), 1)
    gen = (r / 2.0) * (a @ a - a.T @ a.T)
    return expm(gen)


def squeeze_fock(state: FockVector, r: float) -> FockVector:
    """Apply the squeeze unitary S(r) = exp[(r/2)(a^2 - a^dag^2)].

    Uses the exponential of the truncated generator, which is exactly
    unitary on the truncated space; truncation error shows up only near
    the edge of the vector and is controlled by the caller's leakage
    checks.
    """
    return FockVector(_squeeze_matrix(float(r), state.dim) @ state.amps)


def cat_target_fock(target: CatTarget, dim: int = DEFAULT_DIM,
                    leak_tol: float = LEAK_TOL) -> FockVector:
    """Normalized (squeezed) cat state N S(r')(|alpha> +- |-alpha>)."""
    plus = coherent_fock(target.alpha, dim, leak_tol=np.inf)
    minus = coherent_fock(-target.alpha, dim, leak_tol=np.inf)
    superposed = FockVector(plus.amps + target.parity_sign * minus.amps)
    if superposed.norm < 1e-150:
        raise DegenerateState("cat superposition vanishes")
    out = squeeze_fock(superposed.normalized(), target.r_prime)
    out = FockVector(out.amps / out.norm)
    return _check_leakage(out, leak_tol, f"cat_target_fock({target})")


def inner_product(a: FockVector, b: FockVector) -> complex:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dims {a.dim} != {b.dim}")
    return complex(np.vdot(a.amps, b.amps))


def fidelity_fock(a: FockVector, b: FockVector) -> float:
    """|<a|b>|^2 for normalized pure states, clipped to [0, 1]."""
    return float(np.clip(abs(inner_product(a, b)) ** 2, 0.0, 1.0))


def tpss_fock(r: float, dim: int = DEFAULT_DIM) -> FockVector:
    """Normalized two-photon-subtracted squeezed vacuum, a^2 S(r)|0>."""
    sv = squeezed_vacuum_fock(r, dim)
    return apply_annihilation(apply_annihilation(sv)).normalized()


def psas_fock(r: float, dim: int = DEFAULT_DIM) -> FockVector:
    """Normalized photon-subtracted-then-added squeezed vacuum, a^dag a S(r)|0>."""
    if r == 0.0:
        raise DegenerateState("a^dag a S(0)|0> is the zero vector")
    sv = squeezed_vacuum_fock(r, dim)
    return apply_creation(apply_annihilation(sv)).normalized()


# ---------------------------------------------------------------------------
# Two- and three-mode oracle machinery
# ---------------------------------------------------------------------------

def product_state(a: FockVector, b: FockVector) -> TwoModeFockState:
    return TwoModeFockState(np.outer(a.amps, b.amps))


@lru_cache(maxsize=32)
def _coupler_unitary(kind: str, strength: float, d1: int, d2: int) -> np.ndarray:
    """Two-mode unitary whose Heisenberg action matches CouplerParams.matrix().

    Beam splitter: exp[theta (a^dag b - a b^dag)], cos(theta) = sqrt(T).
    NOPA:          exp[s (a^dag b^dag - a b)], cosh(s) = sqrt(G).
    """
    a1 = np.kron(np.diag(np.sqrt(np.arange(1, d1)), 1), np.eye(d2))
    a2 = np.kron(np.eye(d1), np.diag(np.sqrt(np.arange(1, d2)), 1))
    if kind == BS:
        theta = np.arccos(min(np.sqrt(strength), 1.0))
        gen = theta * (a1.T @ a2 - a1 @ a2.T)
    else:
        s = np.arccosh(np.sqrt(strength))
        gen = s * (a1.T @ a2.T - a1 @ a2)
    return expm(gen)


def oracle_coupler_fock(state: TwoModeFockState, coupler: CouplerParams) -> TwoModeFockState:
    """Apply a beam splitter or NOPA unitary in the truncated Fock basis."""
    d1, d2 = state.dims
    u = _coupler_unitary(coupler.kind, float(coupler.strength), d1, d2)
    return TwoModeFockState((u @ state.amps.reshape(-1)).reshape(d1, d2))


def _click_weights(dim: int, eta: float) -> np.ndarray:
    """Diagonal POVM weights of a click on an on/off detector of efficiency eta.

    A detector preceded by a loss beam splitter of transmissivity eta misses
    all n photons with probability (1 - eta)^n, so the click element is
    diagonal with weights 1 - (1 - eta)^n.  For eta = 1 this is the
    projector onto "at least one photon".
    """
    return 1.0 - (1.0 - eta) ** np.arange(dim)


def oracle_click_condition(state: TwoModeFockState, ancilla_mode: int = 1,
                           eta: float = 1.0) -> tuple[np.ndarray, float]:
    """Condition on a click in one mode of a pure two-mode state.

    Returns the unnormalized conditional density matrix of the surviving
    mode together with the click probability (its trace).  The output is a
    matrix, not a vector: conditioning a pure two-mode state on a coarse
    detection event generally leaves a mixed state.
    """
    amps = state.amps if ancilla_mode == 1 else state.amps.T
    w = _click_weights(amps.shape[1], eta)
    rho = np.einsum("ia,ja,a->ij", amps, amps.conj(), w)
    prob = float(np.trace(rho).real)
    if prob < 1e-14:
        raise ZeroProbability(f"click probability {prob:.3e} below 1e-14")
    return rho, prob


def three_mode_click_experiment(
    r: float,
    stages: tuple[CouplerParams, CouplerParams],
    eta: float = 1.0,
    dim_signal: int = 48,
    dim_ancilla: int = 8,
) -> tuple[np.ndarray, float]:
    """Full Fock-basis simulation of the two-coupler, two-click experiment.

    The signal mode starts in S(r)|0>, interacts with vacuum ancilla A
    (first stage) and vacuum ancilla B (second stage), and both ancillas
    are measured by on/off detectors of efficiency eta.  Returns the
    normalized conditional density matrix of the signal and the joint
    click probability.
    """
    d1, da, db = dim_signal, dim_ancilla, dim_ancilla
    psi = np.zeros((d1, da, db), dtype=complex)
    psi[:, 0, 0] = squeezed_vacuum_fock(r, d1).amps

    u_a = _coupler_unitary(stages[0].kind, float(stages[0].strength), d1, da)
    psi = (u_a @ psi.reshape(d1 * da, db)).reshape(d1, da, db)

    u_b = _coupler_unitary(stages[1].kind, float(stages[1].strength), d1, db)
    psi = np.transpose(psi, (0, 2, 1)).reshape(d1 * db, da)
    psi = np.transpose((u_b @ psi).reshape(d1, db, da), (0, 2, 1))

    wa = _click_weights(da, eta)
    wb = _click_weights(db, eta)
    rho = np.einsum("iab,jab,a,b->ij", psi, psi.conj(), wa, wb)
    prob = float(np.trace(rho).real)
    if prob < 1e-14:
        raise ZeroProbability(f"joint click probability {prob:.3e} below 1e-14")
    return rho / prob, prob


def subtract_photons_fock(n_subtract: int, transmissivity: float, r: float,
                          dim_signal: int = 64) -> tuple[FockVector, float]:
    """Exactly n photons tapped off by a beam splitter and counted.

    S(r)|0> passes a beam splitter of the given transmissivity; the
    reflected mode is projected onto |n_subtract>.  Returns the normalized
    conditional signal state and the outcome probability.
    """
    da = n_subtract + 4
    st = product_state(squeezed_vacuum_fock(r, dim_signal), vacuum_fock(da))
    st = oracle_coupler_fock(st, CouplerParams(BS, transmissivity))
    out = FockVector(st.amps[:, n_subtract])
    prob = out.norm**2
    if prob < 1e-14:
        raise ZeroProbability(f"subtraction outcome probability {prob:.3e} below 1e-14")
    return out.normalized(), float(prob)
