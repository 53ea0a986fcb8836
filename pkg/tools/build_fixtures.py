#!/usr/bin/env python3
"""Regenerate the checked-in jsonl fixtures and demo corpora.

Run from the repo root after changing the document model or the demo
content. Fixture counts are asserted here so a regression in the
builder cannot silently change what the tests exercise.
"""

from __future__ import annotations

import json
import os
import sys

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(REPO, "src"))

from iegraph.documents import Document, EntitySpan, EntityType, RelationSpan, RelationType
from iegraph.documents import serialize_document, validate_document
from iegraph.evaluation import evaluate_corpus, load_noun_annotations, noun_overlap
from iegraph.indexing import build_entity_index, coverage_report
from iegraph.lexicon import load_lexicon
from iegraph.documents import read_document_file

FIXTURES = os.path.join(REPO, "tests", "fixtures")
DATA = os.path.join(REPO, "data")

E = {
    "Task": EntityType.TASK,
    "Method": EntityType.METHOD,
    "Metric": EntityType.METRIC,
    "Material": EntityType.MATERIAL,
    "Other": EntityType.OTHER,
    "Generic": EntityType.GENERIC,
}
R = {
    "USED-FOR": RelationType.USED_FOR,
    "FEATURE-OF": RelationType.FEATURE_OF,
    "HYPONYM-OF": RelationType.HYPONYM_OF,
    "PART-OF": RelationType.PART_OF,
    "COMPARE": RelationType.COMPARE,
    "CONJUNCTION": RelationType.CONJUNCTION,
}


def build_doc(doc_key, sentence_specs, dataset=None):
    """sentence_specs: list of (tokens, ner_local, relations_local).

    Local (within-sentence) span indices are converted to the
    document-global convention here.
    """
    sentences, ner, relations = [], [], []
    offset = 0
    for tokens, ents, rels in sentence_specs:
        sentences.append(tuple(tokens))
        ner.append(tuple(
            EntitySpan(offset + s, offset + e, label) for s, e, label in ents
        ))
        relations.append(tuple(
            RelationSpan(offset + a1s, offset + a1e, offset + a2s, offset + a2e, label)
            for a1s, a1e, a2s, a2e, label in rels
        ))
        offset += len(tokens)
    doc = Document(
        doc_key=doc_key,
        sentences=tuple(sentences),
        ner=tuple(ner),
        relations=tuple(relations),
        dataset=dataset,
    )
    problems = validate_document(doc)
    assert not problems, f"{doc_key}: {problems}"
    return doc


def write_jsonl(path, docs):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(serialize_document(doc) + "\n")
    print(f"wrote {path} ({len(docs)} docs)")


# --- manual evaluation sample ------------------------------------------------
# Ten documents whose per-document (predictions, right) counts for
# entities and relations are fixed data; pooled they give 31/42
# entities and 8/16 relations.

BASE_WORDS = (
    "the network uses a consensus protocol to validate new blocks and every "
    "node keeps a full copy of the shared ledger while contracts execute "
    "deterministic code paying small gas fees for each transaction that was "
    "submitted by participating users today"
).split()
assert len(BASE_WORDS) == 40, len(BASE_WORDS)

EVAL_ROWS = [
    # doc_key, ents_pred, ents_right, rels_pred, rels_right
    ("acad_2", 3, 3, 1, 1),
    ("acad_3", 3, 2, 2, 2),
    ("acad_7", 3, 2, 2, 2),
    ("acad_8", 3, 3, 1, 0),
    ("acad_14", 5, 4, 5, 3),
    ("wp-net", 5, 3, 1, 0),
    ("wp-chain", 2, 2, 0, 0),
    ("wp-polka", 2, 2, 0, 0),
    ("wp-uniswap", 9, 7, 0, 0),
    ("wp-loop", 7, 3, 4, 0),
]

ENT_LABELS = [E["Method"], E["Task"], E["Other"], E["Material"], E["Metric"]]
REL_LABELS = [R["USED-FOR"], R["PART-OF"], R["HYPONYM-OF"]]

# A couple of gold-only annotations so recall is not trivially 100%.
EXTRA_GOLD_ENTS = {"acad_2": [(38, 38, E["Task"])], "wp-net": [(38, 38, E["Method"])]}
EXTRA_GOLD_RELS = {"acad_8": [(36, 36, 38, 38, R["PART-OF"])]}


def build_eval_fixture():
    preds, golds = [], []
    for doc_key, n_ents, n_right_ents, n_rels, n_right_rels in EVAL_ROWS:
        matched_ents = [(2 * k, 2 * k, ENT_LABELS[k % len(ENT_LABELS)])
                        for k in range(n_right_ents)]
        wrong_ents = [(20 + j, 20 + j, E["Method"]) for j in range(n_ents - n_right_ents)]
        matched_rels = [(2 * k, 2 * k, 2 * k + 2, 2 * k + 2, REL_LABELS[k % len(REL_LABELS)])
                        for k in range(n_right_rels)]
        wrong_rels = [(30 + j, 30 + j, 32 + j, 32 + j, R["USED-FOR"])
                      for j in range(n_rels - n_right_rels)]
        preds.append(build_doc(doc_key, [(BASE_WORDS, matched_ents + wrong_ents,
                                          matched_rels + wrong_rels)]))
        golds.append(build_doc(doc_key, [(BASE_WORDS,
                                          matched_ents + EXTRA_GOLD_ENTS.get(doc_key, []),
                                          matched_rels + EXTRA_GOLD_RELS.get(doc_key, []))]))

    report = evaluate_corpus(preds, golds, "strict")
    pooled = report.pooled
    assert (pooled["entities_total"], pooled["entities_right"]) == (42, 31), pooled
    assert (pooled["relations_total"], pooled["relations_right"]) == (16, 8), pooled
    for score, row in zip(report.per_doc, EVAL_ROWS):
        assert (score.entities_total, score.entities_right,
                score.relations_total, score.relations_right) == row[1:], (score, row)

    write_jsonl(os.path.join(FIXTURES, "eval", "pred.jsonl"), preds)
    write_jsonl(os.path.join(FIXTURES, "eval", "gold.jsonl"), golds)


# --- glossary coverage corpora -------------------------------------------------
# Three corpora detecting 25, 17 and 16 of the 47 glossary terms.

def term_sentence(term, extra_entities=()):
    tokens = ["this", "document", "discusses"] + term.split() + ["in", "detail", "."]
    span_end = 3 + len(term.split()) - 1
    ents = [(3, span_end, E["Method"])] + list(extra_entities)
    return tokens, ents, []


def build_coverage_fixture():
    glossary = json.load(open(os.path.join(DATA, "glossary.json"), encoding="utf-8"))
    targets = {"whitepapers": 25, "academic": 17, "wiki": 16}
    lexicon = load_lexicon(os.path.join(DATA, "glossary.json"),
                           os.path.join(DATA, "aliases.json"))
    for corpus_id, detected in targets.items():
        specs = [term_sentence(term) for term in glossary[:detected]]
        # Non-glossary noise plus one relation between glossary terms so
        # the relation counter has something to count.
        specs.append((["state", "machines", "drive", "execution", "."],
                      [(0, 1, E["Other"])], []))
        specs.append((
            ["here", "blockchain", "technology", "supports", "bitcoin", "."],
            [(1, 1, E["Method"]), (4, 4, E["Material"])],
            [(1, 1, 4, 4, R["USED-FOR"])],
        ))
        doc = build_doc(f"{corpus_id}-sample", specs)
        index = build_entity_index([doc], lexicon, True, corpus_id=corpus_id)
        report = coverage_report(index, lexicon.glossary)
        got = len(report.detected_terms)
        assert got == detected, (corpus_id, got, detected, sorted(report.detected_terms))
        write_jsonl(os.path.join(FIXTURES, "coverage", f"{corpus_id}.jsonl"), [doc])


# --- round-trip golden file -----------------------------------------------------

def build_roundtrip_fixture():
    docs = [
        build_doc("golden-1", [
            (["smart", "contracts", "enable", "composability", "."],
             [(0, 1, E["Method"]), (3, 3, E["Task"])],
             [(0, 1, 3, 3, R["USED-FOR"])]),
            (["they", "settle", "on", "Ethereum", "."],
             [(3, 3, E["Material"])],
             []),
        ], dataset="golden"),
        Document(
            doc_key="golden-2",
            sentences=(("Zwölf", "Boxkämpfer", "über", "den", "Deich"),
                       ("prova", "às", "vezes")),
            ner=((EntitySpan(0, 1, E["Other"]),), ()),
            relations=((), ()),
            clusters=(((0, 1), (5, 5)),),
        ),
        build_doc("golden-3", [
            (["comparing", "optimistic", "rollups", "with", "zk", "rollups", "."],
             [(1, 2, E["Method"]), (4, 5, E["Method"])],
             [(1, 2, 4, 5, R["COMPARE"]), (1, 2, 4, 5, R["CONJUNCTION"])]),
        ]),
    ]
    for doc in docs:
        assert not validate_document(doc)
    write_jsonl(os.path.join(FIXTURES, "roundtrip", "documents.jsonl"), docs)


# --- noun overlap fixture --------------------------------------------------------
# Eight noun spans, five of which share a token with a predicted
# entity span: 5/8 = 0.625.

def build_nouns_fixture():
    doc = build_doc("wp-nouns", [
        (["The", "protocol", "uses", "a", "merkle", "tree", "to", "verify", "state", "transitions"],
         [(1, 1, E["Method"]), (4, 5, E["Method"]), (8, 8, E["Other"])],
         []),
        (["Validators", "stake", "tokens", "to", "secure", "the", "network", "for", "small", "rewards"],
         [(0, 0, E["Method"]), (2, 2, E["Material"])],
         []),
    ])
    nouns = [
        {"doc_key": "wp-nouns", "sentence_index": 0,
         "noun_spans": [[1, 1], [5, 6], [8, 8], [9, 9]]},
        {"doc_key": "wp-nouns", "sentence_index": 1,
         "noun_spans": [[10, 10], [12, 12], [16, 16], [19, 19]]},
    ]
    write_jsonl(os.path.join(FIXTURES, "nouns", "pred.jsonl"), [doc])
    nouns_path = os.path.join(FIXTURES, "nouns", "nouns.json")
    with open(nouns_path, "w", encoding="utf-8") as fh:
        json.dump(nouns, fh, indent=2)
        fh.write("\n")
    ratio = noun_overlap([doc], load_noun_annotations(nouns_path))
    assert ratio == 0.625, ratio
    print(f"wrote {nouns_path} (ratio {ratio})")


# --- raw text fixture directory ---------------------------------------------------

RAW_TEXTS = {
    "wp-alpha": "Alpha protocol routes payments.\nIt settles instantly. Fees stay low.",
    "wp-bravo": "Bravo chain stores data.\r\nBlocks arrive every\r\nfour seconds.",
    "wp-charlie": "Charlie v2.0 is out. It adds sharding support.",
    "wp-delta": "Delta nodes sync quickly.   Extra   spaces everywhere. Still fine.",
    "wp-echo": "Echo uses zk proofs (succinct ones). Verification is cheap!",
    "wp-foxtrot": "Foxtrot? A market maker. It quotes both sides.",
    "wp-golf": "Golf supports cross-chain swaps. Atomicity is guaranteed.",
    "wp-hotel": "Hotel — a custody service — holds keys safely. Audits happen yearly.",
    "wp-india": "India implements BFT consensus. Liveness holds under partition.",
    "wp-juliet": "Juliet caches state off-chain. Reads cost nothing.",
}


def build_raw_text_fixture():
    directory = os.path.join(FIXTURES, "txt")
    os.makedirs(directory, exist_ok=True)
    for doc_id, text in RAW_TEXTS.items():
        with open(os.path.join(directory, f"{doc_id}.txt"), "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    print(f"wrote {directory} ({len(RAW_TEXTS)} files)")


# --- demo corpora served by the API ------------------------------------------------

ADJECTIVES = ["adaptive", "byzantine", "dynamic", "federated", "hybrid", "modular",
              "optimistic", "permissioned", "recursive", "sovereign", "threshold", "verifiable"]
NOUNS = ["aggregator", "attestation", "checkpoint", "committee", "epoch",
         "mempool", "quorum", "registry", "sequencer", "snapshot"]


def build_demo_corpora():
    docs = [
        build_doc("wp-offchain", [
            (["Rollups", "provide", "off-chain", "scaling", "for", "dApps", "on", "Ethereum", "."],
             [(0, 0, E["Method"]), (2, 3, E["Method"]), (5, 5, E["Task"]), (7, 7, E["Material"])],
             [(2, 3, 5, 5, R["USED-FOR"]), (0, 0, 2, 3, R["USED-FOR"])]),
            (["Smart", "contracts", "power", "decentralized", "apps", "reliably", "."],
             [(0, 1, E["Method"]), (3, 4, E["Task"])],
             [(0, 1, 3, 4, R["USED-FOR"])]),
        ], dataset="demo"),
        build_doc("wp-scaling", [
            (["Workloads", "move", "to", "off-chain", "scaling", "so", "dApps", "stay", "cheap", "."],
             [(3, 4, E["Method"]), (6, 6, E["Task"])],
             [(3, 4, 6, 6, R["USED-FOR"])]),
            (["Optimistic", "rollups", "compete", "with", "zk", "rollups", "today", "."],
             [(0, 1, E["Method"]), (4, 5, E["Method"])],
             [(0, 1, 4, 5, R["COMPARE"])]),
            (["Fraud", "proofs", "are", "a", "feature", "of", "optimistic", "rollups", "."],
             [(0, 1, E["Method"]), (6, 7, E["Method"])],
             [(0, 1, 6, 7, R["FEATURE-OF"])]),
        ], dataset="demo"),
        build_doc("wp-defi", [
            (["A", "decentralized", "app", "needs", "a", "price", "oracle", "."],
             [(1, 2, E["Task"]), (5, 6, E["Method"])],
             [(5, 6, 1, 2, R["USED-FOR"])]),
            (["Lending", "protocols", "are", "a", "kind", "of", "decentralized", "application", "."],
             [(0, 1, E["Method"]), (6, 7, E["Task"])],
             [(0, 1, 6, 7, R["HYPONYM-OF"])]),
            (["Liquidity", "pools", "form", "part", "of", "every", "decentralized", "exchange", "."],
             [(0, 1, E["Method"]), (6, 7, E["Method"])],
             [(0, 1, 6, 7, R["PART-OF"])]),
            (["Stablecoins", "and", "governance", "tokens", "coexist", "."],
             [(0, 0, E["Material"]), (2, 3, E["Material"])],
             [(0, 0, 2, 3, R["CONJUNCTION"])]),
        ], dataset="demo"),
        build_doc("wp-chainbase", [
            (["Blockchain", "adoption", "grows", "while", "smart", "contracts", "mature", "."],
             [(0, 0, E["Method"]), (4, 5, E["Method"])],
             [(4, 5, 0, 0, R["PART-OF"])]),
            (["Proof-of-stake", "replaces", "proof-of-work", "in", "new", "networks", "."],
             [(0, 0, E["Method"]), (2, 2, E["Method"])],
             [(0, 0, 2, 2, R["COMPARE"])]),
            (["Validators", "earn", "staking", "rewards", "on", "the", "blockchain", "."],
             [(0, 0, E["Method"]), (2, 2, E["Task"]), (6, 6, E["Method"])],
             # "rewards" has no entity span: endpoint-only record.
             [(2, 2, 3, 3, R["USED-FOR"])]),
        ], dataset="demo"),
    ]
    # Filler documents: 120 distinct two-token terms so the default
    # 100-entity page is exercised.
    filler_terms = [f"{adj} {noun}" for adj in ADJECTIVES for noun in NOUNS]
    assert len(filler_terms) == 120
    per_doc = 10
    for d in range(0, len(filler_terms), per_doc):
        specs = []
        for term in filler_terms[d:d + per_doc]:
            first, second = term.split()
            specs.append(([first, second, "appears", "in", "benchmarks", "."],
                          [(0, 1, E["Other"])], []))
        docs.append(build_doc(f"wp-filler-{d // per_doc:02d}", specs, dataset="demo"))
    write_jsonl(os.path.join(DATA, "corpora", "demo.jsonl"), docs)

    academic = [
        build_doc("acad-survey", [
            (["Sharding", "improves", "throughput", "for", "blockchain", "systems", "."],
             [(0, 0, E["Method"]), (2, 2, E["Metric"]), (4, 4, E["Method"])],
             [(0, 0, 2, 2, R["USED-FOR"])]),
            (["We", "measure", "latency", "against", "throughput", "."],
             [(2, 2, E["Metric"]), (4, 4, E["Metric"])],
             [(2, 2, 4, 4, R["COMPARE"])]),
        ], dataset="academic-sample"),
        build_doc("acad-consensus", [
            (["BFT", "consensus", "tolerates", "byzantine", "faults", "."],
             [(0, 1, E["Method"]), (3, 4, E["Task"])],
             [(0, 1, 3, 4, R["USED-FOR"])]),
        ], dataset="academic-sample"),
    ]
    write_jsonl(os.path.join(DATA, "corpora", "academic-sample.jsonl"), academic)


def build_service_config():
    config = {
        "host": "127.0.0.1",
        "port": 8000,
        "corpora": {
            "demo": "corpora/demo.jsonl",
            "academic-sample": "corpora/academic-sample.jsonl",
        },
        "glossary": "glossary.json",
        "aliases": "aliases.json",
        "use_aliases": True,
        "default_limit": 100,
    }
    path = os.path.join(DATA, "service-config.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config, fh, indent=2)
        fh.write("\n")
    print(f"wrote {path}")


def verify_demo():
    lexicon = load_lexicon(os.path.join(DATA, "glossary.json"),
                           os.path.join(DATA, "aliases.json"))
    docs = read_document_file(os.path.join(DATA, "corpora", "demo.jsonl"))
    index = build_entity_index(docs, lexicon, True, corpus_id="demo")
    assert len(index.records) >= 120, len(index.records)
    record = index.records["decentralized application"]
    sides = {(r.other, r.label) for r in record.relations}
    assert ("off-chain scaling", R["USED-FOR"]) in sides
    assert len(record.alias_forms) >= 2, record.alias_forms
    print(f"demo corpus: {len(index.records)} distinct terms, "
          f"{len(record.relations)} relations for 'decentralized application'")


def main():
    build_eval_fixture()
    build_coverage_fixture()
    build_roundtrip_fixture()
    build_nouns_fixture()
    build_raw_text_fixture()
    build_demo_corpora()
    build_service_config()
    verify_demo()


if __name__ == "__main__":
    main()
