"""Sharp John-Nirenberg constants on (0,1), the Bellman-function machinery
behind them, explicit extremal functions, and an independent verification
engine."""

from .constants import (
    DEFAULT_TOL,
    DomainParams,
    K_SUP,
    Tolerance,
    bp_threshold,
    dist_lower_bound,
    eps0,
    hilbert_lower_bound,
    jn_bound_p1,
    jn_sharp_C,
    k_inverse,
    k_of_C,
    omega,
    solve_xi,
    weak_type_bound,
)
from .domain import (
    FourRegion,
    Point,
    ThreeRegion,
    abs_mean_region,
    in_domain,
    segment_in_domain,
    solve_u,
    solve_v,
    tail_region,
)
from .candidates import (
    max_exp_mean,
    max_square_mean,
    max_tail_measure,
    min_abs_mean,
    min_power_mean,
    tail_measure_envelope,
)
from .errors import (
    BelowThresholdWarning,
    ConvergenceError,
    DegenerateSecantError,
    DomainError,
    RangeError,
)
from .optimizers import (
    AbsPower,
    AverageTriple,
    ConstantPiece,
    ExpScale,
    Indicator,
    LogRampPiece,
    PiecewiseLogStep,
    averages,
    cutoff,
    indicator_optimizer,
    measure_above,
    measure_below,
    optimizer_minus,
    optimizer_plus,
    scaled_log,
    step_optimizer,
)
from .verify import (
    ScanConfig,
    StepFunction2,
    VerificationReport,
    bellman_induct,
    find_split,
    run_suite,
    scan_ainfty,
    scan_bmo_norm,
)

__version__ = "0.1.0"
