"""Temporal correlators and Leggett-Garg tests for bound quantum systems.

Quasi-probabilities for coarse-grained position measurements are built
from partial eigenfunction overlaps (Wronskian identity), assembled into
two-time moments, and fed to the complete two-, three- and four-time
Leggett-Garg inequality families.  Harmonic-oscillator and Morse-well
eigensystems ship built in; any bound system with a known spectrum plugs
in through the BoundSystem interface.
"""

from .correlators import (
    EXACT_MAX_STATE,
    MEAN_SIGN_01,
    MomentData,
    SeriesKernel,
    TruncationTargetError,
    classical_correlator,
    exact_qho_correlator,
    region_quasiprob,
    series_correlator,
    series_quasiprob,
    superposition_correlator,
    superposition_moments,
    three_term_correlator,
)
from .eigensystems import (
    BoundSystem,
    MorseSystem,
    QhoSystem,
    SuperpositionState,
    hermite_eval,
    laguerre_eval,
)
from .lg import (
    LG4_QUANTUM_BOUND,
    LUDERS_BOUND,
    VIOLATION_TOL,
    LGReport,
    build_report,
    lg2_set,
    lg3_set,
    lg4_set,
    lgn_kernel,
    regime_classify,
)
from .overlaps import (
    FULL_LINE,
    NEGATIVE_HALF,
    POSITIVE_HALF,
    Region,
    TruncationWarning,
    diagonal_overlap,
    overlap,
    overlap_table,
    region_overlap,
    smoothed_overlap,
    smoothed_overlap_row,
    truncation_error,
    wronskian_overlap,
)
from .parity import GaussianState, parity_kernel, parity_lg2, parity_min
from .scans import (
    Axis,
    ScanResult,
    classicalization_delta,
    classicalization_scan,
    scan_eigenstate_violation,
    scan_morse,
    scan_region,
    scan_smoothing,
    scan_superposition,
)

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "BoundSystem",
    "EXACT_MAX_STATE",
    "FULL_LINE",
    "GaussianState",
    "LG4_QUANTUM_BOUND",
    "LGReport",
    "LUDERS_BOUND",
    "MEAN_SIGN_01",
    "MomentData",
    "MorseSystem",
    "NEGATIVE_HALF",
    "POSITIVE_HALF",
    "QhoSystem",
    "Region",
    "ScanResult",
    "SeriesKernel",
    "SuperpositionState",
    "TruncationTargetError",
    "TruncationWarning",
    "VIOLATION_TOL",
    "build_report",
    "classical_correlator",
    "classicalization_delta",
    "classicalization_scan",
    "diagonal_overlap",
    "exact_qho_correlator",
    "hermite_eval",
    "laguerre_eval",
    "lg2_set",
    "lg3_set",
    "lg4_set",
    "lgn_kernel",
    "overlap",
    "overlap_table",
    "parity_kernel",
    "parity_lg2",
    "parity_min",
    "regime_classify",
    "region_overlap",
    "region_quasiprob",
    "scan_eigenstate_violation",
    "scan_morse",
    "scan_region",
    "scan_smoothing",
    "scan_superposition",
    "series_correlator",
    "series_quasiprob",
    "smoothed_overlap",
    "smoothed_overlap_row",
    "superposition_correlator",
    "superposition_moments",
    "three_term_correlator",
    "truncation_error",
    "wronskian_overlap",
]
