"""Critical topology of quantum ensemble control landscapes ``J(U) = tr(U ρ U† θ)``.

The critical submanifolds are labelled by contingency tables whose margins are
the eigenvalue multiplicities of ρ and θ; see :func:`analyze`.
"""
from .errors import (
    BruteForceCapExceeded,
    ClusterOverlap,
    EnumerationBudgetExceeded,
    InternalInvariantViolation,
    InvalidSpectrum,
    LandscapeError,
    MarginMismatch,
    PerturbationTooLarge,
)
from .spectra import DegeneracyProfile, Spectrum, build_spectrum, degeneracy_profile, perturbed_spectrum
from .tables import (
    ContingencyTable,
    Permutation,
    count_tables,
    enumerate_tables,
    permutation_of_table,
    table_of_permutation,
)
from .topology import (
    LandscapeReport,
    SubmanifoldRecord,
    analyze,
    classify,
    closed_form_counts,
    dimension,
    landscape_value,
    max_submanifold_dimension_molecular,
    signature,
)

__version__ = "0.1.0"

__all__ = [
    "BruteForceCapExceeded",
    "ClusterOverlap",
    "ContingencyTable",
    "DegeneracyProfile",
    "EnumerationBudgetExceeded",
    "InternalInvariantViolation",
    "InvalidSpectrum",
    "LandscapeError",
    "LandscapeReport",
    "MarginMismatch",
    "Permutation",
    "PerturbationTooLarge",
    "Spectrum",
    "SubmanifoldRecord",
    "analyze",
    "build_spectrum",
    "classify",
    "closed_form_counts",
    "count_tables",
    "degeneracy_profile",
    "dimension",
    "enumerate_tables",
    "landscape_value",
    "max_submanifold_dimension_molecular",
    "perturbed_spectrum",
    "permutation_of_table",
    "signature",
    "table_of_permutation",
]
