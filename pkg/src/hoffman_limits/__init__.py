"""Smallest eigenvalues of regular graphs, Hoffman graphs and their limit points."""

from .canon import canonical_form, canonical_graph, canonical_labeling, is_isomorphic
from .constructions import (
    ConstructionReport,
    SemiregularBipartite,
    TriplePartition,
    build_gk,
    build_gk_wn,
    build_triangle_free,
    compute_threshold_N,
    default_partitions,
    limit_sequence,
    remark_partitions,
    semiregular_bipartite,
)
from .errors import (
    CapacityError,
    ConstructionError,
    DomainError,
    HoffmanLimitsError,
    InputError,
    ParseError,
    PreconditionError,
    SearchBudgetExceeded,
    ValidityError,
)
from .graph import (
    PatternKind,
    SimpleGraph,
    find_induced,
    induced_subgraph,
    is_cocktail_party,
    is_connected,
    is_regular,
    make_graph,
    standard_graph,
)
from .graph_io import graph6_decode, graph6_encode, read_graph
from .hoffman import (
    HoffmanGraph,
    SumSpec,
    catalog,
    clique_extension,
    hlambda_min,
    hsum,
    make_hoffman,
    slim_graph,
    verify_decomposition,
)
from .linalg import lambda_min, spectrum
from .linegraph import cubic_line_check, is_line_graph, krausz_partition
from .poly import IntPolynomial, char_poly, min_root, poly_divides
from .search import SearchConfig, SearchResult, certify_beta, export_tree, prune_test, search_eta3
from .spectra import constant, spectral_report

__version__ = "0.1.0"
