"""Span-annotated jsonl document model: parse, validate, serialize, resolve.

Wire format, one record per line::

    {"doc_key": str, "dataset": str?, "sentences": [[str]],
     "ner": [[[int, int, str]]], "relations": [[[int, int, int, int, str]]],
     "clusters": [[[int, int]]]?}

Token indices are document-global (cumulative across sentences) with an
inclusive end. Annotation keys may also appear with a ``predicted_``
prefix; when both variants are present the predicted one wins, because
the reader's purpose is consuming model predictions. Span arrays may
carry extra trailing numeric elements (confidence scores); these are
accepted and discarded. ``ner``/``relations`` keys that are absent
entirely are treated as empty annotation layers.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .errors import (
    CrossSentenceSpan,
    DuplicateDocKey,
    LengthMismatch,
    MalformedRecord,
    SpanOutOfBounds,
    UnknownLabel,
)
from .jsonio import dumps_canonical


class EntityType(Enum):
    """Closed set of entity labels; anything else is rejected on input."""

    TASK = "Task"
    METHOD = "Method"
    METRIC = "Metric"
    MATERIAL = "Material"
    OTHER = "OtherScientificTerm"
    GENERIC = "Generic"

    @classmethod
    def from_wire(cls, label: str) -> "EntityType":
        try:
            return _ENTITY_BY_NAME[label]
        except KeyError:
            raise UnknownLabel(f"unknown entity label {label!r}") from None


_ENTITY_BY_NAME = {t.value: t for t in EntityType}

# Fixed tie-break order when picking a dominant type from counts.
ENTITY_TYPE_PRIORITY = (
    EntityType.TASK,
    EntityType.METHOD,
    EntityType.METRIC,
    EntityType.MATERIAL,
    EntityType.OTHER,
    EntityType.GENERIC,
)


class RelationType(Enum):
    """Closed set of relation labels; COMPARE and CONJUNCTION are symmetric.

    Input is case-insensitive; output always uses the canonical
    uppercase form.
    """

    USED_FOR = "USED-FOR"
    FEATURE_OF = "FEATURE-OF"
    HYPONYM_OF = "HYPONYM-OF"
    PART_OF = "PART-OF"
    COMPARE = "COMPARE"
    CONJUNCTION = "CONJUNCTION"

    @property
    def symmetric(self) -> bool:
        return self in (RelationType.COMPARE, RelationType.CONJUNCTION)

    @classmethod
    def from_wire(cls, label: str) -> "RelationType":
        try:
            return _RELATION_BY_NAME[label.upper()]
        except (KeyError, AttributeError):
            raise UnknownLabel(f"unknown relation label {label!r}") from None


_RELATION_BY_NAME = {t.value: t for t in RelationType}


@dataclass(frozen=True)
class EntitySpan:
    """Entity mention: inclusive global token span plus a type label."""

    start: int
    end: int
    label: EntityType


@dataclass(frozen=True)
class RelationSpan:
    """Intra-sentence relation between two inclusive global token spans."""

    arg1_start: int
    arg1_end: int
    arg2_start: int
    arg2_end: int
    label: RelationType


@dataclass(frozen=True)
class Violation:
    """One invariant violation found by :func:`validate_document`.

    ``kind`` matches the name of the exception raised for the same
    problem on the strict parsing path.
    """

    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True)
class Document:
    """One corpus text with tokenized sentences and per-sentence spans.

    Immutable after construction; safe to share between threads.
    """

    doc_key: str
    sentences: tuple[tuple[str, ...], ...]
    ner: tuple[tuple[EntitySpan, ...], ...]
    relations: tuple[tuple[RelationSpan, ...], ...]
    dataset: str | None = None
    clusters: tuple[tuple[tuple[int, int], ...], ...] | None = None

    @property
    def total_tokens(self) -> int:
        return sum(len(s) for s in self.sentences)

    def sentence_starts(self) -> list[int]:
        """Global token index at which each sentence begins."""
        starts = []
        offset = 0
        for sentence in self.sentences:
            starts.append(offset)
            offset += len(sentence)
        return starts

    def tokens(self) -> list[str]:
        """Document-global token stream (sentences concatenated in order)."""
        return [tok for sentence in self.sentences for tok in sentence]

    def entity_spans(self) -> Iterator[tuple[int, EntitySpan]]:
        """Yield (sentence_index, span) over all entity annotations."""
        for i, spans in enumerate(self.ner):
            for span in spans:
                yield i, span

    def relation_spans(self) -> Iterator[tuple[int, RelationSpan]]:
        for i, relations in enumerate(self.relations):
            for rel in relations:
                yield i, rel


# --- parsing ----------------------------------------------------------------

def _require(condition: bool, message: str) -> None:
    if not condition:
        raise MalformedRecord(message)


def _is_index(value: object) -> bool:
    return type(value) is int


def _coerce_entity_span(raw: object, where: str) -> EntitySpan:
    _require(isinstance(raw, list) and len(raw) >= 3, f"{where}: entity span must be [start, end, label, ...]")
    start, end, label = raw[0], raw[1], raw[2]
    _require(_is_index(start) and _is_index(end), f"{where}: span indices must be integers")
    _require(isinstance(label, str), f"{where}: entity label must be a string")
    for extra in raw[3:]:
        _require(isinstance(extra, (int, float)) and not isinstance(extra, bool),
                 f"{where}: trailing span elements must be numeric scores")
    return EntitySpan(start, end, EntityType.from_wire(label))


def _coerce_relation_span(raw: object, where: str) -> RelationSpan:
    _require(isinstance(raw, list) and len(raw) >= 5,
             f"{where}: relation must be [a1_start, a1_end, a2_start, a2_end, label, ...]")
    indices, label = raw[:4], raw[4]
    _require(all(_is_index(v) for v in indices), f"{where}: relation indices must be integers")
    _require(isinstance(label, str), f"{where}: relation label must be a string")
    for extra in raw[5:]:
        _require(isinstance(extra, (int, float)) and not isinstance(extra, bool),
                 f"{where}: trailing relation elements must be numeric scores")
    return RelationSpan(*indices, RelationType.from_wire(label))


def _coerce_cluster(raw: object, where: str) -> tuple[tuple[int, int], ...]:
    _require(isinstance(raw, list), f"{where}: cluster must be a list of [start, end] spans")
    spans = []
    for item in raw:
        _require(isinstance(item, list) and len(item) == 2 and all(_is_index(v) for v in item),
                 f"{where}: cluster span must be [start, end]")
        spans.append((item[0], item[1]))
    return tuple(spans)


def _annotation_layer(record: dict, key: str) -> object | None:
    """Fetch ``key`` preferring its ``predicted_`` variant."""
    predicted = record.get(f"predicted_{key}")
    return predicted if predicted is not None else record.get(key)


def decode_document(record: dict) -> Document:
    """Build a Document from a decoded jsonl object without semantic checks.

    Structural problems (wrong shapes, bad labels) raise; span bounds and
    length agreement are left to :func:`validate_document`.
    """
    _require(isinstance(record, dict), "record must be a JSON object")

    doc_key = record.get("doc_key")
    _require(isinstance(doc_key, str) and doc_key != "", "doc_key must be a non-empty string")

    dataset = record.get("dataset")
    _require(dataset is None or isinstance(dataset, str), "dataset must be a string when present")

    raw_sentences = record.get("sentences")
    _require(isinstance(raw_sentences, list) and raw_sentences, "sentences must be a non-empty list")
    sentences = []
    for i, raw in enumerate(raw_sentences):
        _require(isinstance(raw, list) and raw, f"sentence {i} must be a non-empty token list")
        for tok in raw:
            _require(isinstance(tok, str) and tok and not any(c.isspace() for c in tok),
                     f"sentence {i}: tokens must be non-empty and whitespace-free")
        sentences.append(tuple(raw))

    raw_ner = _annotation_layer(record, "ner")
    if raw_ner is None:
        raw_ner = [[] for _ in sentences]
    _require(isinstance(raw_ner, list), "ner must be a list of per-sentence lists")
    ner = []
    for i, group in enumerate(raw_ner):
        _require(isinstance(group, list), f"ner[{i}] must be a list")
        ner.append(tuple(_coerce_entity_span(s, f"ner[{i}]") for s in group))

    raw_relations = _annotation_layer(record, "relations")
    if raw_relations is None:
        raw_relations = [[] for _ in sentences]
    _require(isinstance(raw_relations, list), "relations must be a list of per-sentence lists")
    relations = []
    for i, group in enumerate(raw_relations):
        _require(isinstance(group, list), f"relations[{i}] must be a list")
        relations.append(tuple(_coerce_relation_span(r, f"relations[{i}]") for r in group))

    raw_clusters = _annotation_layer(record, "clusters")
    clusters = None
    if raw_clusters is not None:
        _require(isinstance(raw_clusters, list), "clusters must be a list of clusters")
        clusters = tuple(_coerce_cluster(c, f"clusters[{i}]") for i, c in enumerate(raw_clusters))

    return Document(
        doc_key=doc_key,
        sentences=tuple(sentences),
        ner=tuple(ner),
        relations=tuple(relations),
        dataset=dataset,
        clusters=clusters,
    )


def parse_document_line(line: str) -> Document:
    """Parse and fully validate one jsonl record."""
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"invalid JSON: {exc}") from None
    doc = decode_document(record)
    violations = validate_document(doc)
    if violations:
        first = violations[0]
        raise _EXCEPTION_BY_KIND[first.kind](first.message)
    return doc


_EXCEPTION_BY_KIND = {
    "MalformedRecord": MalformedRecord,
    "UnknownLabel": UnknownLabel,
    "SpanOutOfBounds": SpanOutOfBounds,
    "CrossSentenceSpan": CrossSentenceSpan,
    "LengthMismatch": LengthMismatch,
}


# --- validation ---------------------------------------------------------------

def _check_span(doc: Document, start: int, end: int, sentence_index: int | None,
                what: str, out: list[Violation]) -> None:
    """Bounds plus single-sentence containment for one span."""
    total = doc.total_tokens
    if not (0 <= start <= end < total):
        out.append(Violation("SpanOutOfBounds", f"{what} ({start},{end}) outside 0..{total - 1}"))
        return
    starts = doc.sentence_starts()
    sent_of_start = bisect_right(starts, start) - 1
    sent_of_end = bisect_right(starts, end) - 1
    if sent_of_start != sent_of_end:
        out.append(Violation("CrossSentenceSpan", f"{what} ({start},{end}) crosses a sentence boundary"))
    elif sentence_index is not None and sent_of_start != sentence_index:
        out.append(Violation(
            "CrossSentenceSpan",
            f"{what} ({start},{end}) lies in sentence {sent_of_start}, listed under sentence {sentence_index}",
        ))


def validate_document(doc: Document) -> list[Violation]:
    """Return every invariant violation in ``doc`` (empty list == valid)."""
    violations: list[Violation] = []

    if not doc.doc_key:
        violations.append(Violation("MalformedRecord", "doc_key is empty"))
    for i, sentence in enumerate(doc.sentences):
        if not sentence:
            violations.append(Violation("MalformedRecord", f"sentence {i} is empty"))
        for tok in sentence:
            if not tok or any(c.isspace() for c in tok):
                violations.append(Violation("MalformedRecord", f"sentence {i}: bad token {tok!r}"))

    n = len(doc.sentences)
    if len(doc.ner) != n:
        violations.append(Violation("LengthMismatch", f"len(ner)={len(doc.ner)} but {n} sentences"))
    if len(doc.relations) != n:
        violations.append(Violation("LengthMismatch", f"len(relations)={len(doc.relations)} but {n} sentences"))
    if violations:
        # Span checks are meaningless against inconsistent structure.
        return violations

    for i, spans in enumerate(doc.ner):
        for span in spans:
            _check_span(doc, span.start, span.end, i, f"ner[{i}] span", violations)
    for i, rels in enumerate(doc.relations):
        for rel in rels:
            _check_span(doc, rel.arg1_start, rel.arg1_end, i, f"relations[{i}] arg1", violations)
            _check_span(doc, rel.arg2_start, rel.arg2_end, i, f"relations[{i}] arg2", violations)
    if doc.clusters is not None:
        for ci, cluster in enumerate(doc.clusters):
            for start, end in cluster:
                _check_span(doc, start, end, None, f"clusters[{ci}] span", violations)
    return violations


# --- serialization ------------------------------------------------------------

def serialize_document(doc: Document) -> str:
    """One-line canonical encoding; ``parse(serialize(d)) == d``.

    Key order is fixed (doc_key, dataset, sentences, ner, relations,
    clusters); optional keys are omitted when absent; confidence scores
    never round-trip because they are dropped at parse time.
    """
    record: dict = {"doc_key": doc.doc_key}
    if doc.dataset is not None:
        record["dataset"] = doc.dataset
    record["sentences"] = [list(s) for s in doc.sentences]
    record["ner"] = [
        [[span.start, span.end, span.label.value] for span in spans]
        for spans in doc.ner
    ]
    record["relations"] = [
        [[r.arg1_start, r.arg1_end, r.arg2_start, r.arg2_end, r.label.value] for r in rels]
        for rels in doc.relations
    ]
    if doc.clusters is not None:
        record["clusters"] = [[[s, e] for s, e in cluster] for cluster in doc.clusters]
    return dumps_canonical(record)


# --- span resolution -----------------------------------------------------------

def sentence_of_span(doc: Document, start: int) -> int:
    """Index of the sentence whose global token range contains ``start``."""
    if not 0 <= start < doc.total_tokens:
        raise SpanOutOfBounds(f"token index {start} outside 0..{doc.total_tokens - 1}")
    return bisect_right(doc.sentence_starts(), start) - 1


def resolve_span(doc: Document, start: int, end: int) -> str:
    """Surface term for an inclusive global span: tokens joined by spaces."""
    total = doc.total_tokens
    if not (0 <= start <= end < total):
        raise SpanOutOfBounds(f"span ({start},{end}) outside 0..{total - 1}")
    if sentence_of_span(doc, start) != sentence_of_span(doc, end):
        raise CrossSentenceSpan(f"span ({start},{end}) crosses a sentence boundary")
    return " ".join(doc.tokens()[start:end + 1])


def sentence_text(doc: Document, index: int) -> str:
    """Sentence tokens joined by single spaces, for display."""
    return " ".join(doc.sentences[index])


# --- corpus I/O ------------------------------------------------------------------

def ensure_unique_doc_keys(docs: Iterable[Document]) -> None:
    seen: set[str] = set()
    for doc in docs:
        if doc.doc_key in seen:
            raise DuplicateDocKey(f"doc_key {doc.doc_key!r} appears more than once")
        seen.add(doc.doc_key)


def read_document_file(path: str) -> list[Document]:
    """Load a jsonl corpus file, enforcing doc_key uniqueness.

    Blank lines are skipped; any bad record raises with its line number.
    """
    from .errors import DocumentError

    docs: list[Document] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                docs.append(parse_document_line(line))
            except DocumentError as exc:
                raise type(exc)(f"{path}:{lineno}: {exc}") from None
    ensure_unique_doc_keys(docs)
    return docs


def write_document_file(path: str, docs: Iterable[Document]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(serialize_document(doc))
            fh.write("\n")
