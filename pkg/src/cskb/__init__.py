"""Commonsense knowledge base construction from dependency-parsed corpora."""

from .cleaning import CleaningConfig, lexicalize
from .clustering import ClusterParams, Linkage, TripleCluster, cluster_facets, cluster_triples, hac
from .config import PipelineConfig, load_config
from .conllu import ConlluError, Document, Sentence, Token, noun_chunks, parse_conllu, serialize
from .extraction import (
    Facet,
    FacetRole,
    OpenAssertion,
    classify_facet_role,
    expand_conjunctions,
    extract_assertions,
    extract_sentence,
)
from .filtering import FilterConfig, TripleKey, admit_document, aggregate, threshold_triples
from .kbstore import KnowledgeBase, query, read_kb, stats, write_kb
from .mapping import CNRelation, MappedAssertion, map_cluster, predict_relation, rewrite_object
from .pipeline import RecallConfig, eval_recall, run
from .ranking import (
    CanonicalAssertion,
    MODIFIER_SCORES,
    TypicalityWeights,
    modifier_score,
    neutrality,
    rank_subject,
    saliency,
    typicality,
)
from .subjects import SubjectRegistry, mine_aspects, mine_subgroups
from .tables import (
    EmbeddingTable,
    PolarityTable,
    ScoreTable,
    load_embeddings,
    load_polarities,
    load_scores,
)

__version__ = "0.1.0"
