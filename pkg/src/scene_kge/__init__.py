"""Scene knowledge-graph embedding toolkit.

Build scene graphs at three levels of informational detail, train
TransE/RESCAL/HolE embeddings, and evaluate them with intrinsic quality
metrics (categorization, coherence, semantic transition distance).
"""

__version__ = "0.1.0"

from .analysis import ScenePair, cosine, project_2d, top_scene_pairs
from .embedding import (
    HOLE,
    MODELS,
    RESCAL,
    TRANSE,
    EmbeddingSet,
    TrainConfig,
    circular_correlation,
    load_embeddings,
    sample_negative,
    save_embeddings,
    train,
)
from .enrichment import KgVariant, infer_types, make_variant, materialize_include_paths
from .errors import (
    DegenerateProjectionError,
    FormatError,
    FrozenGraphError,
    NumericError,
    OntologyError,
    ParseError,
    SamplingError,
    SceneKgError,
    TrainingError,
    ValidationError,
)
from .metrics import (
    EvalConfig,
    MetricReport,
    MetricRow,
    categorization,
    coherence,
    evaluate_all,
    transition_distance,
)
from .ntriples_io import parse_document, render_term, serialize_document
from .ontology import SceneOntology, asserted_types, build_from_triples, type_map
from .scenegen import (
    CROSS_PARENT,
    LYFT_CATALOG_SIZE,
    NUSCENES_CATALOG_SIZE,
    SAME_PARENT,
    GenConfig,
    generate,
    split_scene_pairs,
)
from .triplestore import KgStats, KnowledgeGraph, Term, Triple
