"""Nonorthogonality as a computable quantity.

Pair measures for qubit states, the family of two-state nonorthogonal
decompositions of a diagonal density matrix, the classical-information cost
of unlocking what those decompositions hide, and intercept-resend detection
simulators expressed through the linear measure.
"""

from .crypto import (
    B92Spec,
    BB84Spec,
    DetectionStats,
    EveStrategy,
    b92_detection_analytic,
    bb84_cross_nonortho,
    bb84_detection_analytic,
    exact_enumeration,
    simulate,
)
from .hidden import (
    IDEAL_P,
    DecompositionParams,
    Decomposition,
    DegenerateDecompositionError,
    decompose,
    ensemble_nonortho,
    hidden_overlap,
    ideal_rho,
    max_ensemble,
    max_ensemble_branch,
    max_pair_z,
    pair_nonortho,
    z_of_alpha,
)
from .measures import (
    BipartiteState,
    N2Result,
    N2SearchConfig,
    binary_entropy,
    local_measurement_entropy,
    n0,
    n1,
    n2,
    schmidt_basis,
    schmidt_xi,
    selective_info,
)
from .qstate import (
    Basis2,
    Density2,
    DiagonalDensity,
    DomainError,
    InvariantError,
    KET_DOWN,
    KET_UP,
    PureState2,
    ValidationError,
    basis_from_state,
    density_from_p,
    format_state_literal,
    from_bloch,
    inner,
    measure_in_basis,
    orthogonal_complement,
    overlap2,
    parse_state_literal,
)
from .unlock import (
    SweepGrid,
    SweepResult,
    UnlockReport,
    conjecture_sweep,
    excess_info,
    orthogonal_info,
    unlock_info,
    unlock_report,
)

__version__ = "0.1.0"
