"""Journal citation network toolkit.

From raw journal-to-journal citation counts to seed-journal environments,
cosine similarity graphs, centrality reports, and graph exports.
"""

from .centrality import (
    CentralityReport,
    CentralityRow,
    Graph,
    betweenness_centrality,
    brute_force_betweenness,
    build_report,
    closeness_centrality,
    degree_centrality,
    eigenvector_centrality,
    geodesic_ledger,
    weighted_degree_centrality,
)
from .environment import (
    Direction,
    SeedEnvironment,
    environment_totals,
    extract_environment,
)
from .errors import (
    CitenetError,
    ConvergenceError,
    EdgeListParseError,
    IsolatedSeedError,
    UndefinedSimilarityError,
    UnknownJournalError,
    UnknownNodeError,
    YearMismatchError,
    ZeroVarianceError,
)
from .export import (
    EdgeStroke,
    NodeGlyph,
    export_dot,
    export_json,
    export_pajek,
    make_glyphs,
    make_strokes,
    parse_pajek,
    report_table,
)
from .matrix import (
    CitationMatrix,
    Journal,
    JournalId,
    SourceIndex,
    col_profile,
    merge_indices,
    parse_citation_csv,
    read_matrix,
    read_registry,
    row_profile,
    serialize_matrix,
    totals,
    write_matrix,
)
from .metrics import (
    ImpactRecord,
    YearlyCounts,
    YearRecord,
    h_index,
    impact_factor,
    impact_record,
    quasi_impact_factor,
    self_citation_rate,
)
from .similarity import SimilarityGraph, cosine, pearson, similarity_graph

__version__ = "0.1.0"

__all__ = [
    "CentralityReport",
    "CentralityRow",
    "CitationMatrix",
    "CitenetError",
    "ConvergenceError",
    "Direction",
    "EdgeListParseError",
    "EdgeStroke",
    "Graph",
    "ImpactRecord",
    "IsolatedSeedError",
    "Journal",
    "JournalId",
    "NodeGlyph",
    "SeedEnvironment",
    "SimilarityGraph",
    "SourceIndex",
    "UndefinedSimilarityError",
    "UnknownJournalError",
    "UnknownNodeError",
    "YearMismatchError",
    "YearRecord",
    "YearlyCounts",
    "ZeroVarianceError",
    "betweenness_centrality",
    "brute_force_betweenness",
    "build_report",
    "closeness_centrality",
    "col_profile",
    "cosine",
    "degree_centrality",
    "eigenvector_centrality",
    "environment_totals",
    "export_dot",
    "export_json",
    "export_pajek",
    "extract_environment",
    "geodesic_ledger",
    "h_index",
    "impact_factor",
    "impact_record",
    "make_glyphs",
    "make_strokes",
    "merge_indices",
    "parse_citation_csv",
    "parse_pajek",
    "pearson",
    "quasi_impact_factor",
    "read_matrix",
    "read_registry",
    "report_table",
    "row_profile",
    "self_citation_rate",
    "serialize_matrix",
    "similarity_graph",
    "totals",
    "weighted_degree_centrality",
    "write_matrix",
]
