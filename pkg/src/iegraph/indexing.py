"""The entity dictionary: per-term type counts, mentions, relation refs.

Every entity span contributes exactly one mention and one type count to
the record of its canonical term; every relation contributes a Left ref
to its arg1 record and a Right ref to its arg2 record. Relation
endpoints that never occur as entity spans still get records, with zero
mentions. With aliases enabled, records for different surface forms of
one glossary term fold together, so e.g. the relations of "dApps" end
up listed under "decentralized application".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .documents import (
    Document,
    EntityType,
    RelationType,
    ensure_unique_doc_keys,
    resolve_span,
)
from .lexicon import Lexicon


class Side(Enum):
    """Which side of a relation the owning entity is on."""

    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class MentionRef:
    """Where a term was detected as an entity."""

    doc_key: str
    sentence_index: int
    start: int
    end: int


@dataclass(frozen=True)
class RelationRef:
    """One relation participation of an entity, seen from its side."""

    doc_key: str
    sentence_index: int
    label: RelationType
    side: Side
    other: str


@dataclass
class EntityRecord:
    """Everything the dictionary knows about one canonical term."""

    canonical: str
    type_counts: dict[EntityType, int] = field(default_factory=dict)
    mentions: list[MentionRef] = field(default_factory=list)
    relations: list[RelationRef] = field(default_factory=list)
    alias_forms: set[str] = field(default_factory=set)

    @property
    def mention_count(self) -> int:
        return len(self.mentions)


@dataclass
class EntityIndex:
    """Entity dictionary over one corpus, plus corpus-level totals."""

    corpus_id: str
    records: dict[str, EntityRecord] = field(default_factory=dict)
    total_mentions: int = 0
    total_relations: int = 0


@dataclass(frozen=True)
class CoverageReport:
    """How much of the glossary a corpus' predictions detected."""

    corpus_id: str
    detected_terms: frozenset[str]
    glossary_size: int
    percent_detected: int
    glossary_relation_count: int


def _generic_span_positions(doc: Document) -> set[tuple[int, int, int]]:
    """(sentence, start, end) of every Generic-labeled entity span."""
    return {
        (i, span.start, span.end)
        for i, span in doc.entity_spans()
        if span.label is EntityType.GENERIC
    }


def build_entity_index(docs: Sequence[Document], lexicon: Lexicon,
                       use_aliases: bool = True, *, corpus_id: str = "",
                       include_generic: bool = True) -> EntityIndex:
    """Build the entity dictionary for a corpus.

    ``include_generic=False`` drops Generic-labeled spans and any
    relation whose argument coincides with one, since those terms are
    connective noise in a concept graph.
    """
    ensure_unique_doc_keys(docs)
    index = EntityIndex(corpus_id=corpus_id)

    def record_for(term: str) -> EntityRecord:
        record = index.records.get(term)
        if record is None:
            record = EntityRecord(canonical=term)
            index.records[term] = record
        return record

    for doc in docs:
        generic_positions = set() if include_generic else _generic_span_positions(doc)
        for i, span in doc.entity_spans():
            if not include_generic and span.label is EntityType.GENERIC:
                continue
            surface = resolve_span(doc, span.start, span.end)
            record = record_for(lexicon.canonicalize(surface, use_aliases))
            record.type_counts[span.label] = record.type_counts.get(span.label, 0) + 1
            record.mentions.append(MentionRef(doc.doc_key, i, span.start, span.end))
            record.alias_forms.add(surface)
            index.total_mentions += 1
        for i, rel in doc.relation_spans():
            if not include_generic and (
                (i, rel.arg1_start, rel.arg1_end) in generic_positions
                or (i, rel.arg2_start, rel.arg2_end) in generic_positions
            ):
                continue
            left = lexicon.canonicalize(resolve_span(doc, rel.arg1_start, rel.arg1_end), use_aliases)
            right = lexicon.canonicalize(resolve_span(doc, rel.arg2_start, rel.arg2_end), use_aliases)
            record_for(left).relations.append(RelationRef(doc.doc_key, i, rel.label, Side.LEFT, right))
            record_for(right).relations.append(RelationRef(doc.doc_key, i, rel.label, Side.RIGHT, left))
            index.total_relations += 1
    return index


def frequency_list(index: EntityIndex) -> list[tuple[str, int]]:
    """(term, mention count) pairs, count descending, ties by term."""
    pairs = [(record.canonical, record.mention_count) for record in index.records.values()]
    pairs.sort(key=lambda pair: (-pair[1], pair[0]))
    return pairs


def glossary_entities(index: EntityIndex, glossary: Iterable[str]) -> dict[str, int]:
    """Detected glossary terms and their mention counts, most frequent first."""
    glossary_set = set(glossary)
    detected = [
        (record.canonical, record.mention_count)
        for record in index.records.values()
        if record.canonical in glossary_set and record.mention_count > 0
    ]
    detected.sort(key=lambda pair: (-pair[1], pair[0]))
    return dict(detected)


def round_half_up_percent(numerator: int, denominator: int) -> int:
    """Integer percent of numerator/denominator, exact round-half-up."""
    if denominator == 0:
        return 0
    return (200 * numerator + denominator) // (2 * denominator)


def coverage_report(index: EntityIndex, glossary: Sequence[str]) -> CoverageReport:
    """Glossary detection rate plus relation participation count.

    A relation is counted once per glossary endpoint: a relation between
    two glossary terms contributes two, one with a single glossary
    endpoint contributes one.
    """
    glossary_set = set(glossary)
    detected = frozenset(
        record.canonical
        for record in index.records.values()
        if record.canonical in glossary_set and record.mention_count > 0
    )
    relation_count = sum(
        len(record.relations)
        for record in index.records.values()
        if record.canonical in glossary_set
    )
    return CoverageReport(
        corpus_id=index.corpus_id,
        detected_terms=detected,
        glossary_size=len(glossary_set),
        percent_detected=round_half_up_percent(len(detected), len(glossary_set)),
        glossary_relation_count=relation_count,
    )


def coverage_payload(report: CoverageReport) -> dict:
    """Canonical JSON object shape shared by the CLI and the HTTP API."""
    return {
        "corpus": report.corpus_id,
        "glossary_size": report.glossary_size,
        "detected_count": len(report.detected_terms),
        "percent_detected": report.percent_detected,
        "glossary_relation_count": report.glossary_relation_count,
        "detected_terms": sorted(report.detected_terms),
    }


def frequency_payload(index: EntityIndex, limit: int | None = None) -> dict:
    """Canonical JSON object for the frequency list (top ``limit``)."""
    pairs = frequency_list(index)
    if limit is not None:
        pairs = pairs[:limit]
    return {
        "corpus": index.corpus_id,
        "entities": [[term, count] for term, count in pairs],
    }
