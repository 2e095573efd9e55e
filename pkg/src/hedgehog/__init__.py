"""Resonances and scattering for compact manifolds with halfline leads.

A "hedgehog" system is a compact manifold (interval, disc, or ball) with
finitely many semi-infinite leads attached through a unitary junction
coupling.  The package computes the regularized Green's function of the
compact part, the on-shell scattering matrix, resonance locations by
contour root counting, resonance-counting asymptotics (including the
non-Weyl regimes), and the half-flux disc system that has no true
resonances.
"""

from .errors import (
    AccuracyLossError,
    BranchCutError,
    ConfigError,
    DecoupledError,
    DomainError,
    HedgehogError,
    NonUnitaryError,
    NotSupportedError,
    OnContourSingularityError,
    PoleError,
    SingularMomentumError,
    SingularSystemError,
    UnresolvedCellError,
)
from .model import (
    CouplingMatrix,
    HedgehogSystem,
    effective_coupling,
    effective_coupling_term,
    preset_coupling,
)
from .geometry import (
    GeometryBackend,
    f1_eval,
    f1_poles_in_disc,
    f1_series_eval,
    make_geometry,
)
from .contour import Contour, ContourCount, RootRecord, find_roots, winding_count
from .resonance import (
    Resonance,
    StripReport,
    counting_report,
    find_resonances,
    resonance_function,
    strip_bound,
)
from .scattering import (
    ScatteringSolve,
    s_identities_check,
    s_matrix,
    s_pole_search,
)
from .abflux import (
    ABSystem,
    ChannelSolution,
    make_ab_system,
    persistent_eigenvalues,
    solve_channel,
    true_resonance_scan,
)
from .fields import (
    PhaseField,
    compute_phase_field,
    count_phase_jumps,
    count_phase_jumps_segment,
    write_phase_csv,
    write_phase_pgm,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # errors
    "HedgehogError",
    "DomainError",
    "PoleError",
    "BranchCutError",
    "AccuracyLossError",
    "NonUnitaryError",
    "SingularMomentumError",
    "DecoupledError",
    "SingularSystemError",
    "OnContourSingularityError",
    "UnresolvedCellError",
    "NotSupportedError",
    "ConfigError",
    # model
    "CouplingMatrix",
    "HedgehogSystem",
    "preset_coupling",
    "effective_coupling",
    "effective_coupling_term",
    # geometry
    "GeometryBackend",
    "make_geometry",
    "f1_eval",
    "f1_series_eval",
    "f1_poles_in_disc",
    # contour
    "Contour",
    "ContourCount",
    "RootRecord",
    "winding_count",
    "find_roots",
    # resonance
    "Resonance",
    "StripReport",
    "resonance_function",
    "find_resonances",
    "counting_report",
    "strip_bound",
    # scattering
    "ScatteringSolve",
    "s_matrix",
    "s_identities_check",
    "s_pole_search",
    # abflux
    "ABSystem",
    "ChannelSolution",
    "make_ab_system",
    "solve_channel",
    "true_resonance_scan",
    "persistent_eigenvalues",
    # fields
    "PhaseField",
    "compute_phase_field",
    "write_phase_csv",
    "write_phase_pgm",
    "count_phase_jumps",
    "count_phase_jumps_segment",
]
