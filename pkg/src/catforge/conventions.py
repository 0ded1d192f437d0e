"""Quadrature and squeezing conventions used throughout the package.

Every module imports these definitions instead of restating them, so there
is exactly one place where the sign of the squeezing parameter is fixed.

Conventions (tested in tests/test_fock.py::test_squeezing_sign_convention):

* Quadratures X = (a + a^dag)/sqrt(2), P = (a - a^dag)/(i sqrt(2)),
  commutator [X, P] = i, vacuum variance Var(X) = Var(P) = 1/2.
* Vacuum Wigner function W(x, p) = exp(-x^2 - p^2)/pi, normalized so that
  the integral over dx dp is 1.
* Squeezing operator S(r) = exp[(r/2)(a^2 - a^dag^2)] with r real.
  Acting on vacuum it gives Var(X) = exp(-2r)/2 and Var(P) = exp(+2r)/2,
  i.e. r < 0 produces a momentum-squeezed state (wide along x).
* Wigner transformation under squeezing:
  W_{S(r) psi}(x, p) = W_psi(x * e^r, p * e^{-r}).

A coherent state |alpha> with real alpha sits at <X> = sqrt(2) * alpha.
"""

import numpy as np

VACUUM_VARIANCE = 0.5

#: Default Fock-space truncation, adequate for |r| <= 1 and alpha <= 3.
DEFAULT_DIM = 64

#: Default truncation-leakage tolerance for state constructors.
LEAK_TOL = 1e-10


def x_variance(r: float) -> float:
    """Position variance of the squeezed vacuum S(r)|0>."""
    return np.exp(-2.0 * r) / 2.0


def p_variance(r: float) -> float:
    """Momentum variance of the squeezed vacuum S(r)|0>."""
    return np.exp(2.0 * r) / 2.0


def squeeze_scale(r: float) -> float:
    """Factor multiplying x inside a Wigner function squeezed by S(r).

    W_{S(r) psi}(x, p) = W_psi(x * squeeze_scale(r), p / squeeze_scale(r)).
    """
    return np.exp(r)
