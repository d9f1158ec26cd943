"""Two interacting particles on concentric rings.

A plane-wave (Rayleigh-Ritz) eigensolver for the two-ring Schroedinger
problem with Coulomb or harmonic interaction, together with independent
relative-angle and Mathieu reference solutions, profile/node analysis and
a reproduction CLI.
"""

from .analysis import (
    ComparisonReport,
    ConvergenceRow,
    DegenerateProfileError,
    NotSeparableError,
    ReferenceSolution,
    compare,
    convergence_sweep,
    count_nodes,
    periodic_grid,
    profile_from_pair_coeffs,
    relative_profile,
)
from .eigen import (
    EigenPairs,
    EigenState,
    eigensolve,
    excited_states,
    ground_state,
    spectrum,
    spectrum_by_sectors,
)
from .hamiltonian import (
    HermitianMatrix,
    QuadratureConvergenceError,
    QuadratureSpec,
    SingularIntegrandError,
    assemble,
    coulomb_fourier,
    dump_matrix,
    interaction_element,
    kinetic_element,
    momentum_blocks,
    potential_fourier,
    sector_block,
)
from .model import (
    BasisSpec,
    Interaction,
    ModePair,
    RingGeometry,
    distance,
    index_of,
    mode_of,
    reduced_radius_sq,
)
from .reference import (
    CaseSpec,
    MathieuQuery,
    Profile,
    harmonic_benchmark_case,
    harmonic_energy,
    mathieu_char,
    mathieu_profile,
    quasi_exact_coulomb_case,
    relative_matrix,
    relative_spectrum,
    sector_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "BasisSpec",
    "CaseSpec",
    "ComparisonReport",
    "ConvergenceRow",
    "DegenerateProfileError",
    "EigenPairs",
    "EigenState",
    "HermitianMatrix",
    "Interaction",
    "MathieuQuery",
    "ModePair",
    "NotSeparableError",
    "Profile",
    "QuadratureConvergenceError",
    "QuadratureSpec",
    "ReferenceSolution",
    "RingGeometry",
    "SingularIntegrandError",
    "assemble",
    "compare",
    "convergence_sweep",
    "coulomb_fourier",
    "count_nodes",
    "distance",
    "dump_matrix",
    "eigensolve",
    "excited_states",
    "ground_state",
    "harmonic_benchmark_case",
    "harmonic_energy",
    "index_of",
    "interaction_element",
    "kinetic_element",
    "mathieu_char",
    "mathieu_profile",
    "mode_of",
    "momentum_blocks",
    "periodic_grid",
    "potential_fourier",
    "profile_from_pair_coeffs",
    "quasi_exact_coulomb_case",
    "reduced_radius_sq",
    "relative_matrix",
    "relative_profile",
    "relative_spectrum",
    "sector_block",
    "sector_spectrum",
    "spectrum",
    "spectrum_by_sectors",
    "__version__",
]
