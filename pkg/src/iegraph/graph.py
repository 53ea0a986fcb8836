"""Document-level knowledge graphs and their deduplicated merge.

Graphs are built per document, then folded into a single corpus graph:
node mention counts sum, edges with equal (src, dst, label) collapse
into one edge whose multiplicity and provenance grow. Keeping the
sentence-level provenance on every edge is what lets a client show the
exact phrase — and document, and sentence number — a relation came
from, and collapsing duplicates keeps repeated relationships out of the
result. Edges are directed arg1 -> arg2; COMPARE and CONJUNCTION carry
no direction, so their endpoints are stored in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .documents import (
    ENTITY_TYPE_PRIORITY,
    Document,
    EntityType,
    RelationType,
    resolve_span,
)
from .errors import UnsupportedFormat
from .indexing import MentionRef
from .jsonio import dumps_canonical_bytes
from .lexicon import Lexicon

EdgeKey = tuple[str, str, RelationType]


def dominant_type(type_counts: dict[EntityType, int]) -> EntityType:
    """Most frequent entity type, ties broken by the fixed priority order.

    Nodes that only ever appear as relation endpoints have no counts at
    all; they fall back to Generic, the least informative type.
    """
    best: EntityType | None = None
    best_count = 0
    for etype in ENTITY_TYPE_PRIORITY:
        count = type_counts.get(etype, 0)
        if count > best_count:
            best, best_count = etype, count
    return best if best is not None else EntityType.GENERIC


@dataclass
class KgNode:
    canonical: str
    type_counts: dict[EntityType, int] = field(default_factory=dict)
    mention_count: int = 0

    @property
    def dominant_type(self) -> EntityType:
        return dominant_type(self.type_counts)


@dataclass
class KgEdge:
    src: str
    dst: str
    label: RelationType
    provenance: list[MentionRef] = field(default_factory=list)

    @property
    def multiplicity(self) -> int:
        return len(self.provenance)


@dataclass
class KnowledgeGraph:
    nodes: dict[str, KgNode] = field(default_factory=dict)
    edges: dict[EdgeKey, KgEdge] = field(default_factory=dict)
    source_corpora: tuple[str, ...] = ()


def _provenance_order(ref: MentionRef) -> tuple:
    return (ref.doc_key, ref.sentence_index, ref.start, ref.end)


def _finalize(graph: KnowledgeGraph) -> KnowledgeGraph:
    """Sort provenance so merge results are order-independent values."""
    for edge in graph.edges.values():
        edge.provenance.sort(key=_provenance_order)
    return graph


def build_document_graph(doc: Document, lexicon: Lexicon, use_aliases: bool = True,
                         *, include_generic: bool = True,
                         source: str | None = None) -> KnowledgeGraph:
    """Graph of one document's canonicalized entities and relations."""
    graph = KnowledgeGraph(source_corpora=(source,) if source else ())
    generic_positions: set[tuple[int, int, int]] = set()
    if not include_generic:
        generic_positions = {
            (i, span.start, span.end)
            for i, span in doc.entity_spans()
            if span.label is EntityType.GENERIC
        }

    def node_for(term: str) -> KgNode:
        node = graph.nodes.get(term)
        if node is None:
            node = KgNode(canonical=term)
            graph.nodes[term] = node
        return node

    for i, span in doc.entity_spans():
        if not include_generic and span.label is EntityType.GENERIC:
            continue
        term = lexicon.canonicalize(resolve_span(doc, span.start, span.end), use_aliases)
        node = node_for(term)
        node.type_counts[span.label] = node.type_counts.get(span.label, 0) + 1
        node.mention_count += 1

    for i, rel in doc.relation_spans():
        if not include_generic and (
            (i, rel.arg1_start, rel.arg1_end) in generic_positions
            or (i, rel.arg2_start, rel.arg2_end) in generic_positions
        ):
            continue
        src = lexicon.canonicalize(resolve_span(doc, rel.arg1_start, rel.arg1_end), use_aliases)
        dst = lexicon.canonicalize(resolve_span(doc, rel.arg2_start, rel.arg2_end), use_aliases)
        if rel.label.symmetric and dst < src:
            src, dst = dst, src
        node_for(src)
        node_for(dst)
        key: EdgeKey = (src, dst, rel.label)
        edge = graph.edges.get(key)
        if edge is None:
            edge = KgEdge(src=src, dst=dst, label=rel.label)
            graph.edges[key] = edge
        edge.provenance.append(MentionRef(doc.doc_key, i, rel.arg1_start, rel.arg1_end))
    return _finalize(graph)


def merge_graphs(graphs: Sequence[KnowledgeGraph]) -> KnowledgeGraph:
    """Fold graphs into one: counts sum, equal-key edges collapse.

    Associative and commutative up to structural equality; the sum of
    edge multiplicities is conserved.
    """
    merged = KnowledgeGraph()
    sources: set[str] = set()
    for graph in graphs:
        sources.update(graph.source_corpora)
        for term, node in graph.nodes.items():
            target = merged.nodes.get(term)
            if target is None:
                target = KgNode(canonical=term)
                merged.nodes[term] = target
            for etype, count in node.type_counts.items():
                target.type_counts[etype] = target.type_counts.get(etype, 0) + count
            target.mention_count += node.mention_count
        for key, edge in graph.edges.items():
            target_edge = merged.edges.get(key)
            if target_edge is None:
                target_edge = KgEdge(src=edge.src, dst=edge.dst, label=edge.label)
                merged.edges[key] = target_edge
            target_edge.provenance.extend(edge.provenance)
    merged.source_corpora = tuple(sorted(sources))
    return _finalize(merged)


def build_corpus_graph(docs: Sequence[Document], lexicon: Lexicon,
                       use_aliases: bool = True, *, corpus_id: str = "",
                       include_generic: bool = True) -> KnowledgeGraph:
    return merge_graphs([
        build_document_graph(doc, lexicon, use_aliases,
                             include_generic=include_generic, source=corpus_id or None)
        for doc in docs
    ])


# --- export -------------------------------------------------------------------

def _node_payload(node: KgNode) -> dict:
    counts = {
        etype.value: node.type_counts[etype]
        for etype in ENTITY_TYPE_PRIORITY
        if node.type_counts.get(etype, 0) > 0
    }
    return {
        "term": node.canonical,
        "dominant_type": node.dominant_type.value,
        "mention_count": node.mention_count,
        "type_counts": counts,
    }


def _provenance_payload(ref: MentionRef) -> dict:
    return {
        "doc_key": ref.doc_key,
        "sentence_index": ref.sentence_index,
        "start": ref.start,
        "end": ref.end,
    }


def graph_payload(kg: KnowledgeGraph, *, keep_duplicates: bool = False) -> dict:
    """Canonical JSON object: nodes sorted by term, edges by (src, dst, label).

    ``keep_duplicates`` explodes each edge back into one entry per
    provenance ref (multiplicity 1 each), for inspecting the raw,
    un-deduplicated relation stream.
    """
    edges = []
    for key in sorted(kg.edges, key=lambda k: (k[0], k[1], k[2].value)):
        edge = kg.edges[key]
        if keep_duplicates:
            for ref in edge.provenance:
                edges.append({
                    "src": edge.src,
                    "dst": edge.dst,
                    "label": edge.label.value,
                    "multiplicity": 1,
                    "provenance": [_provenance_payload(ref)],
                })
        else:
            edges.append({
                "src": edge.src,
                "dst": edge.dst,
                "label": edge.label.value,
                "multiplicity": edge.multiplicity,
                "provenance": [_provenance_payload(ref) for ref in edge.provenance],
            })
    return {
        "nodes": [_node_payload(kg.nodes[term]) for term in sorted(kg.nodes)],
        "edges": edges,
        "source_corpora": list(kg.source_corpora),
    }


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _export_dot(kg: KnowledgeGraph, keep_duplicates: bool) -> str:
    lines = ["digraph knowledge_graph {"]
    for term in sorted(kg.nodes):
        node = kg.nodes[term]
        name = _dot_escape(term)
        # \n inside the label is a dot line-break escape, kept verbatim.
        lines.append(f'  "{name}" [label="{name}\\n({node.dominant_type.value}, {node.mention_count})"];')
    for key in sorted(kg.edges, key=lambda k: (k[0], k[1], k[2].value)):
        edge = kg.edges[key]
        attrs = f'label="{edge.label.value}"'
        if edge.label.symmetric:
            attrs += ", dir=none"
        count = edge.multiplicity if keep_duplicates else 1
        for _ in range(count):
            lines.append(f'  "{_dot_escape(edge.src)}" -> "{_dot_escape(edge.dst)}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_graph(kg: KnowledgeGraph, format: str = "canonical-json",
                 *, keep_duplicates: bool = False) -> bytes:
    """Serialize a graph; byte-identical output for identical input."""
    if format == "canonical-json":
        return dumps_canonical_bytes(graph_payload(kg, keep_duplicates=keep_duplicates))
    if format == "dot":
        return _export_dot(kg, keep_duplicates).encode("utf-8")
    raise UnsupportedFormat(f"unsupported graph format {format!r}")
