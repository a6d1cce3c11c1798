"""Eigenvalues and spectral radii of weighted uniform hypertrees.

The complete eigenvalue set of the adjacency tensor of a weighted
k-uniform hypertree (k >= 3) consists of the vertex weights plus the
roots of the matching polynomials of its subtrees; each root eigenvalue
is certified by an explicitly constructed eigenvector. Degree-based
weightings give the Laplacian and signless-Laplacian spectra.
"""

from .errors import (
    DomainError,
    NonConvergenceError,
    NotARootError,
    NotATreeError,
    NumericError,
    PoleError,
    SingularConstructionError,
    StructuralError,
)
from .hypertree import (
    Hypergraph,
    PrunedComponent,
    Subtree,
    TreeCertificate,
    WeightedGraph,
    WeightedHypertree,
    Weighting,
    corollary_weighting,
    degrees,
    delete_edge,
    enumerate_subtrees,
    extract_subgraph,
    peel_sequence,
    pendant_edges,
    prune_zero_edges,
    subtree_graph,
    validate,
)
from .matching import (
    Matching,
    enumerate_matchings,
    eval_mu_tilde,
    matching_polynomial,
    matching_polynomial_dp,
    phi_polynomial,
)
from .normal import (
    NormalReport,
    WeightedIncidenceMatrix,
    build_normal_matrix,
    check_consistent,
    check_normal,
    eigenvector_from_normal,
    normal_from_eigenpair,
)
from .poly import Polynomial, find_roots, largest_real_root
from .spectra import (
    RadiusResult,
    RootEntry,
    SpectrumReport,
    TrivialEntry,
    VerificationSummary,
    corollary_spectrum,
    eigenvalues,
    spectral_radius,
    verify_report,
)
from .tensor import (
    Eigenpair,
    PowerIterationResult,
    apply,
    lift_eigenpair,
    power_spectral_radius,
    residual,
    restrict_eigenpair,
    unit_eigenpair,
)

__version__ = "0.1.0"
