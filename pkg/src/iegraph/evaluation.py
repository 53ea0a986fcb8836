"""Score predicted documents against gold annotations.

The headline aggregate is micro precision: pooled correct predictions
divided by pooled predictions across the corpus — not the mean of the
per-document percentages, which overweights small documents. Documents
with zero predictions score a vacuous 100%. Recall and F1 are computed
as extra columns; they never replace the precision figure.

Matching is one-to-one: each gold annotation credits at most one
prediction, assigned greedily in document order, so duplicated
predictions cannot double-count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

from .documents import Document
from .errors import (
    DocMismatch,
    MalformedRecord,
    MissingGold,
    MissingPred,
    SpanOutOfBounds,
    UnknownDoc,
)

STRICT = "strict"
LENIENT = "lenient"


@dataclass(frozen=True)
class DocScore:
    """Prediction/right counts for one document, with gold totals for recall."""

    doc_key: str
    entities_total: int
    entities_right: int
    relations_total: int
    relations_right: int
    entities_gold: int
    relations_gold: int


@dataclass(frozen=True)
class EvaluationReport:
    per_doc: tuple[DocScore, ...]
    entity_micro_precision: float
    relation_micro_precision: float
    mode: str
    entity_micro_recall: float
    relation_micro_recall: float
    entity_micro_f1: float
    relation_micro_f1: float

    @property
    def pooled(self) -> dict[str, int]:
        return {
            "entities_total": sum(s.entities_total for s in self.per_doc),
            "entities_right": sum(s.entities_right for s in self.per_doc),
            "relations_total": sum(s.relations_total for s in self.per_doc),
            "relations_right": sum(s.relations_right for s in self.per_doc),
            "entities_gold": sum(s.entities_gold for s in self.per_doc),
            "relations_gold": sum(s.relations_gold for s in self.per_doc),
        }


@dataclass(frozen=True)
class NounAnnotation:
    """Noun spans for one document, from an external POS highlighter."""

    doc_key: str
    sentence_index: int
    noun_spans: tuple[tuple[int, int], ...]


def percent_str(right: int, total: int, decimals: int = 1) -> str:
    """Exact round-half-up percentage; vacuous 0/0 reads as 100%."""
    if total == 0:
        value = Decimal(100)
    else:
        value = Decimal(right * 100) / Decimal(total)
    quantum = Decimal(1).scaleb(-decimals)
    return str(value.quantize(quantum, rounding=ROUND_HALF_UP))


def _ratio(right: int, total: int) -> float:
    return right / total if total else 1.0


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def _check_same_doc(pred: Document, gold: Document) -> None:
    if pred.doc_key != gold.doc_key:
        raise DocMismatch(f"doc_key {pred.doc_key!r} vs {gold.doc_key!r}")
    if pred.sentences != gold.sentences:
        raise DocMismatch(f"{pred.doc_key}: predicted and gold sentences differ")


def match_entities(pred: Document, gold: Document, mode: str = STRICT) -> tuple[int, int]:
    """(total predictions, predictions matching a gold span).

    Strict requires identical (start, end, label); lenient matches on
    (start, end) with any label.
    """
    _check_same_doc(pred, gold)
    gold_spans = [span for _, span in gold.entity_spans()]
    used = [False] * len(gold_spans)
    total = 0
    right = 0
    for _, span in pred.entity_spans():
        total += 1
        for j, gold_span in enumerate(gold_spans):
            if used[j]:
                continue
            if (span.start, span.end) != (gold_span.start, gold_span.end):
                continue
            if mode == STRICT and span.label is not gold_span.label:
                continue
            used[j] = True
            right += 1
            break
    return total, right


def _relation_matches(pred_rel, gold_rel, mode: str) -> bool:
    if pred_rel.label is not gold_rel.label:
        return False
    pred_args = (pred_rel.arg1_start, pred_rel.arg1_end, pred_rel.arg2_start, pred_rel.arg2_end)
    gold_args = (gold_rel.arg1_start, gold_rel.arg1_end, gold_rel.arg2_start, gold_rel.arg2_end)
    if pred_args == gold_args:
        return True
    swapped = pred_args[2:] + pred_args[:2]
    if swapped != gold_args:
        return False
    # Argument order is immaterial for the symmetric labels in both
    # modes; lenient additionally forgives direction everywhere.
    return pred_rel.label.symmetric or mode == LENIENT


def match_relations(pred: Document, gold: Document, mode: str = STRICT) -> tuple[int, int]:
    """(total predicted relations, predictions matching a gold relation)."""
    _check_same_doc(pred, gold)
    gold_rels = [rel for _, rel in gold.relation_spans()]
    used = [False] * len(gold_rels)
    total = 0
    right = 0
    for _, rel in pred.relation_spans():
        total += 1
        for j, gold_rel in enumerate(gold_rels):
            if used[j] or not _relation_matches(rel, gold_rel, mode):
                continue
            used[j] = True
            right += 1
            break
    return total, right


def evaluate_corpus(preds: Sequence[Document], golds: Sequence[Document],
                    mode: str = STRICT) -> EvaluationReport:
    """Score a corpus; predicted and gold doc_key sets must be equal."""
    gold_by_key = {doc.doc_key: doc for doc in golds}
    pred_keys = {doc.doc_key for doc in preds}
    missing_gold = sorted(pred_keys - gold_by_key.keys())
    if missing_gold:
        raise MissingGold(f"no gold for doc_keys: {', '.join(missing_gold)}")
    missing_pred = sorted(gold_by_key.keys() - pred_keys)
    if missing_pred:
        raise MissingPred(f"no predictions for doc_keys: {', '.join(missing_pred)}")

    scores = []
    for pred in preds:
        gold = gold_by_key[pred.doc_key]
        ent_total, ent_right = match_entities(pred, gold, mode)
        rel_total, rel_right = match_relations(pred, gold, mode)
        scores.append(DocScore(
            doc_key=pred.doc_key,
            entities_total=ent_total,
            entities_right=ent_right,
            relations_total=rel_total,
            relations_right=rel_right,
            entities_gold=sum(len(spans) for spans in gold.ner),
            relations_gold=sum(len(rels) for rels in gold.relations),
        ))

    ent_total = sum(s.entities_total for s in scores)
    ent_right = sum(s.entities_right for s in scores)
    rel_total = sum(s.relations_total for s in scores)
    rel_right = sum(s.relations_right for s in scores)
    ent_gold = sum(s.entities_gold for s in scores)
    rel_gold = sum(s.relations_gold for s in scores)

    ent_precision = _ratio(ent_right, ent_total)
    rel_precision = _ratio(rel_right, rel_total)
    ent_recall = _ratio(ent_right, ent_gold)
    rel_recall = _ratio(rel_right, rel_gold)
    return EvaluationReport(
        per_doc=tuple(scores),
        entity_micro_precision=ent_precision,
        relation_micro_precision=rel_precision,
        mode=mode,
        entity_micro_recall=ent_recall,
        relation_micro_recall=rel_recall,
        entity_micro_f1=_f1(ent_precision, ent_recall),
        relation_micro_f1=_f1(rel_precision, rel_recall),
    )


def report_payload(report: EvaluationReport) -> dict:
    """Canonical JSON object for an evaluation report."""
    pooled = report.pooled
    return {
        "mode": report.mode,
        "documents": [
            {
                "doc_key": s.doc_key,
                "entities_total": s.entities_total,
                "entities_right": s.entities_right,
                "entities_percent": percent_str(s.entities_right, s.entities_total),
                "relations_total": s.relations_total,
                "relations_right": s.relations_right,
                "relations_percent": percent_str(s.relations_right, s.relations_total),
            }
            for s in report.per_doc
        ],
        "entities": {
            "total": pooled["entities_total"],
            "right": pooled["entities_right"],
            "gold": pooled["entities_gold"],
            "micro_precision_percent": percent_str(pooled["entities_right"], pooled["entities_total"]),
            "micro_recall_percent": percent_str(pooled["entities_right"], pooled["entities_gold"]),
            "micro_f1": round(report.entity_micro_f1, 4),
        },
        "relations": {
            "total": pooled["relations_total"],
            "right": pooled["relations_right"],
            "gold": pooled["relations_gold"],
            "micro_precision_percent": percent_str(pooled["relations_right"], pooled["relations_total"]),
            "micro_recall_percent": percent_str(pooled["relations_right"], pooled["relations_gold"]),
            "micro_f1": round(report.relation_micro_f1, 4),
        },
    }


# --- noun overlap ----------------------------------------------------------------

def load_noun_annotations(path: str) -> list[NounAnnotation]:
    """Sidecar file: array of {doc_key, sentence_index, noun_spans: [[s, e]]}."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(data, list):
        raise MalformedRecord(f"{path}: noun annotations must be a JSON array")
    annotations = []
    for i, item in enumerate(data):
        if (not isinstance(item, dict)
                or not isinstance(item.get("doc_key"), str)
                or not isinstance(item.get("sentence_index"), int)
                or not isinstance(item.get("noun_spans"), list)):
            raise MalformedRecord(f"{path}: entry {i} must be {{doc_key, sentence_index, noun_spans}}")
        spans = []
        for raw in item["noun_spans"]:
            if not (isinstance(raw, list) and len(raw) == 2 and all(type(v) is int for v in raw)):
                raise MalformedRecord(f"{path}: entry {i}: noun span must be [start, end]")
            spans.append((raw[0], raw[1]))
        annotations.append(NounAnnotation(item["doc_key"], item["sentence_index"], tuple(spans)))
    return annotations


def noun_overlap(preds: Sequence[Document], nouns: Sequence[NounAnnotation]) -> float:
    """Fraction of noun spans sharing at least one token with a predicted entity.

    Zero noun spans is vacuously 1.0, mirroring the precision
    convention for empty denominators.
    """
    by_key = {doc.doc_key: doc for doc in preds}
    total = 0
    hit = 0
    for annotation in nouns:
        doc = by_key.get(annotation.doc_key)
        if doc is None:
            raise UnknownDoc(f"noun annotation references unknown doc_key {annotation.doc_key!r}")
        if not 0 <= annotation.sentence_index < len(doc.sentences):
            raise SpanOutOfBounds(
                f"{annotation.doc_key}: sentence_index {annotation.sentence_index} out of range")
        starts = doc.sentence_starts()
        sent_start = starts[annotation.sentence_index]
        sent_end = sent_start + len(doc.sentences[annotation.sentence_index]) - 1
        entity_spans = [(span.start, span.end) for _, span in doc.entity_spans()]
        for start, end in annotation.noun_spans:
            if not (sent_start <= start <= end <= sent_end):
                raise SpanOutOfBounds(
                    f"{annotation.doc_key}: noun span ({start},{end}) outside sentence "
                    f"{annotation.sentence_index}")
            total += 1
            if any(start <= e_end and e_start <= end for e_start, e_end in entity_spans):
                hit += 1
    return hit / total if total else 1.0
