"""Seeded random corpus generators and span-index helpers for tests.

The random documents are always valid: spans stay inside their
sentence, relations stay intra-sentence, tokens are word-like. The
vocabulary deliberately contains glossary terms and alias fragments so
alias folding actually triggers.
"""

from __future__ import annotations

import random

from iegraph.documents import (
    Document,
    EntitySpan,
    EntityType,
    RelationSpan,
    RelationType,
    validate_document,
)

VOCAB = [
    "blockchain", "dapps", "dapp", "smart", "contracts", "contract",
    "token", "tokens", "oracle", "oracles", "consensus", "ledger",
    "node", "gas", "fee", "proof", "stake", "work", "network",
    "scaling", "rollup", "rollups", "data", "model", "protocol",
    "the", "a", "uses", "for", "with", "secure", "fast",
]

ENTITY_TYPES = list(EntityType)
RELATION_TYPES = list(RelationType)


def make_document(doc_key: str, sentence_specs, dataset: str | None = None) -> Document:
    """Build a Document from (tokens, ner_local, relations_local) triples.

    Span indices in the specs are sentence-local; this converts them to
    the document-global convention.
    """
    sentences, ner, relations = [], [], []
    offset = 0
    for spec in sentence_specs:
        tokens, ents, rels = spec
        sentences.append(tuple(tokens))
        ner.append(tuple(EntitySpan(offset + s, offset + e, label) for s, e, label in ents))
        relations.append(tuple(
            RelationSpan(offset + a, offset + b, offset + c, offset + d, label)
            for a, b, c, d, label in rels
        ))
        offset += len(tokens)
    doc = Document(
        doc_key=doc_key,
        sentences=tuple(sentences),
        ner=tuple(ner),
        relations=tuple(relations),
        dataset=dataset,
    )
    assert not validate_document(doc), validate_document(doc)
    return doc


def _random_local_span(rng: random.Random, sentence_len: int) -> tuple[int, int]:
    start = rng.randrange(sentence_len)
    end = min(sentence_len - 1, start + rng.randint(0, 2))
    return start, end


def random_document(rng: random.Random, doc_key: str, *, max_sentences: int = 8,
                    max_tokens: int = 10, with_clusters: bool = False) -> Document:
    specs = []
    for _ in range(rng.randint(1, max_sentences)):
        tokens = [rng.choice(VOCAB) for _ in range(rng.randint(1, max_tokens))]
        ents = []
        for _ in range(rng.randint(0, 3)):
            s, e = _random_local_span(rng, len(tokens))
            ents.append((s, e, rng.choice(ENTITY_TYPES)))
        rels = []
        for _ in range(rng.randint(0, 2)):
            a, b = _random_local_span(rng, len(tokens))
            c, d = _random_local_span(rng, len(tokens))
            rels.append((a, b, c, d, rng.choice(RELATION_TYPES)))
        specs.append((tokens, ents, rels))
    doc = make_document(doc_key, specs)
    if with_clusters and rng.random() < 0.5:
        starts = doc.sentence_starts()
        clusters = []
        for _ in range(rng.randint(1, 2)):
            spans = []
            for _ in range(rng.randint(1, 3)):
                i = rng.randrange(len(doc.sentences))
                s, e = _random_local_span(rng, len(doc.sentences[i]))
                spans.append((starts[i] + s, starts[i] + e))
            clusters.append(tuple(spans))
        doc = Document(
            doc_key=doc.doc_key,
            sentences=doc.sentences,
            ner=doc.ner,
            relations=doc.relations,
            dataset=doc.dataset,
            clusters=tuple(clusters),
        )
        assert not validate_document(doc)
    return doc


def random_corpus(rng: random.Random, *, max_docs: int = 10, **kwargs) -> list[Document]:
    return [
        random_document(rng, f"doc-{i}", **kwargs)
        for i in range(rng.randint(1, max_docs))
    ]
