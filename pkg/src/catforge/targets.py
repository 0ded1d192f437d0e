"""Target states: superpositions of coherent states, optionally squeezed."""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateState, InvalidParam

EVEN = "even"
ODD = "odd"


@dataclass(frozen=True)
class CatTarget:
    """A (squeezed) superposition of coherent states N S(r') (|a> +- |-a>).

    alpha    coherent amplitude, real and >= 0
    r_prime  squeezing applied to the superposition (see conventions.py
             for the sign convention; 0 gives a regular cat state)
    parity   "even" for the + superposition, "odd" for the - one
    """

    alpha: float
    r_prime: float = 0.0
    parity: str = EVEN

    def __post_init__(self):
        if self.alpha < 0:
            raise InvalidParam(f"alpha must be >= 0, got {self.alpha}")
        if self.parity not in (EVEN, ODD):
            raise InvalidParam(f"parity must be 'even' or 'odd', got {self.parity!r}")
        if self.parity == ODD and self.alpha == 0:
            raise DegenerateState("odd cat with alpha = 0 is the zero vector")

    @property
    def parity_sign(self) -> int:
        return 1 if self.parity == EVEN else -1

    @property
    def norm_constant(self) -> float:
        """Normalization N of the superposition, [2 +- 2 exp(-2 alpha^2)]^(-1/2)."""
        return (2.0 + self.parity_sign * 2.0 * np.exp(-2.0 * self.alpha**2)) ** -0.5
