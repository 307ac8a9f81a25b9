"""Verification laboratory for induced arithmetics, probability
regraduation, qubit calibration geometry, and Bell/CHSH analysis."""

from .bell import (
    ChshScenario,
    JointModel,
    LhvBound,
    LocalDeterministicStrategy,
    OPTIMAL_SINGLET_SETTINGS,
    TSIRELSON_BOUND,
    UnderdeterminationReport,
    chsh_value,
    correlation_of_joint,
    enumerate_strategies,
    frechet_bounds,
    joint_from_marginals,
    lhv_chsh_bound,
    marginals_of,
    singlet_correlation,
    singlet_scenario,
    underdetermination_demo,
)
from .errors import (
    AdmissibilityError,
    DomainError,
    FrechetError,
    JoinError,
    MonotonicityError,
    NoExtensionError,
    NumericalError,
    RangeError,
    RegradlabError,
    ValidationError,
)
from .genarith import (
    BUILTIN_BIJECTIONS,
    BijectionSpec,
    ClosureReport,
    Interval,
    PartialResult,
    ResultKind,
    closure_probe,
    compose,
    get_bijection,
    induced_add,
    induced_mul,
    invert,
    transport,
    verify_bijection,
)
from .quantum import (
    DensityOperator,
    Effect,
    Povm,
    QubitPureState,
    bloch_angle,
    born_probability,
    bures_angle,
    context_distribution,
    fidelity,
    fs_distance,
    povm_probability,
    validate_povm,
)
from .regraduation import (
    AdmissibilityReport,
    RegraduationMap,
    ThetaParametrization,
    alt_inner,
    builtin_maps,
    catalog,
    certify,
    check_admissibility,
    extend_from_half,
    fixed_point_check,
    format_plot_csv,
    from_table,
    g_alt,
    g_czachor,
    g_from_theta,
    g_identity,
    g_poly,
)

__version__ = "0.1.0"
