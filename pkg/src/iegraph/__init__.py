"""Toolkit for span-annotated entity/relation predictions over text corpora.

Pipeline: raw text -> model-ready jsonl (``corpus``), parsed and
validated documents (``documents``), alias-aware entity dictionary
(``lexicon`` + ``indexing``), merged knowledge graph (``graph``),
prediction scoring (``evaluation``), all exposed through a CLI
(``cli``) and a read-only HTTP API (``service``).
"""

from .documents import (
    Document,
    EntitySpan,
    EntityType,
    RelationSpan,
    RelationType,
    parse_document_line,
    read_document_file,
    resolve_span,
    sentence_of_span,
    serialize_document,
    validate_document,
)
from .lexicon import Lexicon, load_lexicon, normalize_term
from .indexing import (
    EntityIndex,
    build_entity_index,
    coverage_report,
    frequency_list,
    glossary_entities,
)
from .graph import KnowledgeGraph, build_document_graph, export_graph, merge_graphs
from .evaluation import evaluate_corpus, match_entities, match_relations, noun_overlap

__version__ = "0.1.0"

__all__ = [
    "Document",
    "EntityIndex",
    "EntitySpan",
    "EntityType",
    "KnowledgeGraph",
    "Lexicon",
    "RelationSpan",
    "RelationType",
    "build_document_graph",
    "build_entity_index",
    "coverage_report",
    "evaluate_corpus",
    "export_graph",
    "frequency_list",
    "glossary_entities",
    "load_lexicon",
    "match_entities",
    "match_relations",
    "merge_graphs",
    "noun_overlap",
    "normalize_term",
    "parse_document_line",
    "read_document_file",
    "resolve_span",
    "sentence_of_span",
    "serialize_document",
    "validate_document",
    "__version__",
]
