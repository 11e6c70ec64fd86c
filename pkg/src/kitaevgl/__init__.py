"""Kitaev chain with balanced gain and loss.

Construction, diagonalization and analysis of the non-Hermitian Kitaev
chain: BdG and Majorana single-particle matrices, complex spectra,
Majorana zero-mode detection, spectral-reality phase maps and parameter
sweeps.  A FastAPI service (``kitaevgl.service``) wraps the library and the
``kitaevgl`` CLI is a thin client of that service.
"""

__version__ = "0.1.0"

from .analysis import (
    PhaseLabel,
    RealityClass,
    RealityTag,
    ZeroModeReport,
    classify_phase,
    classify_reality,
    detect_zero_modes,
    find_critical,
    scalar_offset_energy,
)
from .eigen import SpectrumResult, eig, max_imag
from .errors import (
    AmbiguousCrossingError,
    ChainError,
    InvalidBasisError,
    InvalidMatrixError,
    InvalidParameterError,
    InvalidSiteError,
    InvalidSizeError,
    InvalidSpecError,
    PersistenceError,
    SolverFailureError,
)
from .hamiltonian import (
    Basis,
    BdgMatrix,
    build_bdg,
    bulk_gap,
    detect_unpaired_majoranas,
    dispersion,
    majorana_transform,
    to_majorana_basis,
)
from .model import (
    ChainSpec,
    GainProfile,
    alternating_profile,
    is_pt_symmetric_nonhermitian_part,
    random_balanced_profile,
    two_impurity_profile,
    zero_profile,
)
from .sweep import (
    EnsembleSummary,
    ProfileSpec,
    SweepAxis,
    SweepConfig,
    SweepRecord,
    run_random_ensemble,
    run_sweep,
)
