"""catforge: photon addition/subtraction on squeezed vacuum, three ways.

Three mutually validating back-ends for the same physics:

* fock      truncated Fock-space linear algebra (the numerical oracle)
* analytic  closed-form fidelities against (squeezed) cat states
* gaussian  covariance-matrix pipeline with click conditioning

plus phase-space machinery (wigner), landscape exploration (optimize) and
a CLI (cli).
"""

from .analytic import IdealSubtractAddState, fidelity_psas, fidelity_tpss
from .couplers import CouplerParams
from .gaussian import (
    DetectorModel,
    SignedGaussianMixture,
    build_experiment,
    condition_two_clicks,
    mixture_fidelity_vs_sscs,
    mixture_to_grid,
    success_probability,
)
from .targets import CatTarget
from .wigner import NpssParams, WignerGrid, overlap_fidelity

__version__ = "0.1.0"

__all__ = [
    "CatTarget",
    "CouplerParams",
    "DetectorModel",
    "IdealSubtractAddState",
    "NpssParams",
    "SignedGaussianMixture",
    "WignerGrid",
    "build_experiment",
    "condition_two_clicks",
    "fidelity_psas",
    "fidelity_tpss",
    "mixture_fidelity_vs_sscs",
    "mixture_to_grid",
    "overlap_fidelity",
    "success_probability",
    "__version__",
]
