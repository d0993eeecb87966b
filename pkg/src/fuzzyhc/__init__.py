"""Fuzzy hierarchical clustering of documents and points.

Pipeline: documents -> keyword occurrence points -> fuzzy compatibility
relation (Minkowski distance) -> max-min transitive closure -> alpha-cut
partitions -> dendrogram.
"""

__version__ = "0.1.0"

from .closure import (
    fuzzy_union,
    max_min_compose,
    minimax_path_strength,
    path_strength_oracle,
    transitive_closure,
)
from .errors import (
    DegenerateDatasetError,
    EmptyVocabularyError,
    FuzzyClusterError,
    HierarchyError,
    IngestError,
)
from .ingest import (
    Document,
    KeywordTable,
    OccurrenceTable,
    StopWordSet,
    build_keyword_table,
    occurrence_points,
    read_documents,
    tf_vectors,
    tokenize,
)
from .partition import (
    AlphaCutSchedule,
    Dendrogram,
    Partition,
    alpha_cut,
    build_dendrogram,
    connected_components_oracle,
    partition_schedule,
)
from .relation import (
    Dataset,
    DistanceParams,
    FuzzyRelation,
    compatibility_relation,
    compute_delta,
    minkowski_distance,
    read_points_csv,
)
