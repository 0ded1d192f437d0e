"""Two-mode couplers: beam splitters and two-mode squeezers (NOPA).

Both are described by one 4x4 symplectic matrix acting on the quadrature
vector (x1, p1, x2, p2):

    [ t    0    r    0 ]
    [ 0    t    0   chi]
    [-chi  0    t    0 ]
    [ 0   -r    0    t ]

with t = sqrt(T), r = chi = sqrt(1 - T) for a beam splitter of
transmissivity T, and t = sqrt(G), r = -chi = sqrt(G - 1) for a
noncollinear parametric amplifier of gain G.  The beam-splitter phase
convention is fixed by the single-photon action
BS |1, 0> = sqrt(T) |1, 0> - sqrt(1-T) |0, 1>, which the Fock-space
implementation reproduces (tests enforce this).  For the amplifier the
matrix above is the symmetric two-mode squeezer generated by
s (a^dag b^dag - a b) with cosh^2 s = G; it preserves the symplectic form,
which pins the placement of r and chi in the lower rows.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParam

BS = "bs"
NOPA = "nopa"


@dataclass(frozen=True)
class CouplerParams:
    """A beam splitter (kind="bs", strength=T) or NOPA (kind="nopa", strength=G)."""

    kind: str
    strength: float

    def __post_init__(self):
        if self.kind not in (BS, NOPA):
            raise InvalidParam(f"unknown coupler kind {self.kind!r}")
        if self.kind == BS and not 0.0 < self.strength <= 1.0:
            raise InvalidParam(f"beam-splitter transmissivity must be in (0, 1], got {self.strength}")
        if self.kind == NOPA and self.strength < 1.0:
            raise InvalidParam(f"NOPA gain must be >= 1, got {self.strength}")

    @property
    def t(self) -> float:
        return float(np.sqrt(self.strength))

    @property
    def r(self) -> float:
        if self.kind == BS:
            return float(np.sqrt(1.0 - self.strength))
        return float(np.sqrt(self.strength - 1.0))

    @property
    def chi(self) -> float:
        return self.r if self.kind == BS else -self.r

    def matrix(self) -> np.ndarray:
        """4x4 symplectic quadrature transformation for (x1, p1, x2, p2)."""
        t, r, chi = self.t, self.r, self.chi
        return np.array(
            [
                [t, 0.0, r, 0.0],
                [0.0, t, 0.0, chi],
                [-chi, 0.0, t, 0.0],
                [0.0, -r, 0.0, t],
            ]
        )

    def embedded(self, pair: tuple[int, int], n_modes: int) -> np.ndarray:
        """Embed the 4x4 matrix into a 2*n_modes symplectic acting on `pair`."""
        m4 = self.matrix()
        out = np.eye(2 * n_modes)
        idx = [2 * pair[0], 2 * pair[0] + 1, 2 * pair[1], 2 * pair[1] + 1]
        for i, ii in enumerate(idx):
            for j, jj in enumerate(idx):
                out[ii, jj] = m4[i, j]
        return out


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal [[0, 1], [-1, 0]] form in (x1, p1, x2, p2, ...) ordering."""
    j2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        out[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = j2
    return out
