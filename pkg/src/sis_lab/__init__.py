"""
Squared-amplitude Schrodinger intelligent states in a truncated Fock space.

The eigenstates of u a^2 + v a^dag^2, the cat states they contain, their
squeezing and photon statistics, and the uncertainty-matrix transformations
that organize them. Every closed-form result has a brute-force counterpart
in :mod:`sis_lab.fock`.
"""

from .analysis import (
    MomentReport,
    QuasiSpin,
    even_odd_cs_moments_closed,
    moment_report,
    perelomov_relative_squeezing,
    quasi_spin,
    sis_moments_closed,
    squeezed_even_moments_closed,
    superpoissonian_condition,
)
from .errors import (
    DegenerateState,
    InadmissibleParams,
    NonConvergence,
    NotPositiveDefinite,
    SisLabError,
    TruncationLeak,
)
from .evolution import EvolutionTrack, evolve_params, evolve_state, relative_variances
from .fock import FockVector, apply, covariance, expectation, inner, mandel_q, variance
from .specialfn import hermite, kummer_1f1, pochhammer, principal_root4, principal_sqrt
from .states import (
    SisParams,
    SqueezeParams,
    coherent,
    even_odd_cs,
    kummer_state,
    sis,
    sis_combination,
    squeeze_apply,
    squeeze_fock,
    squeezed_even_cs,
    yurke_stoler,
)
from .transforms import (
    UncertaintyMatrix,
    congruence,
    diagonalize_2x2,
    k_uncertainty_3x3,
    symplectic_matrix,
    uncertainty_matrix,
)

__version__ = "0.1.0"
