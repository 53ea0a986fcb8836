"""Command-line entry point exposing the pipeline end to end.

Human-readable tables go to stdout by default; ``--json`` switches a
command to canonical JSON (one object, trailing newline) for scripting
and golden-file tests. Exit codes: 0 success, 1 data error, 2 usage
error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .corpus import format_directory
from .documents import (
    Violation,
    decode_document,
    read_document_file,
    validate_document,
    write_document_file,
)
from .errors import DocumentError, IEGraphError
from .evaluation import (
    evaluate_corpus,
    load_noun_annotations,
    noun_overlap,
    percent_str,
    report_payload,
)
from .graph import build_corpus_graph, export_graph
from .indexing import (
    build_entity_index,
    coverage_payload,
    coverage_report,
    frequency_list,
    frequency_payload,
)
from .jsonio import dumps_canonical
from .lexicon import load_lexicon
from .service import load_service_config, run_service

PORT_ENV_VAR = "IEGRAPH_PORT"


def _print_json(payload: object) -> None:
    sys.stdout.write(dumps_canonical(payload))
    sys.stdout.write("\n")


def _corpus_id_for(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def _add_lexicon_args(parser: argparse.ArgumentParser, *, glossary_required: bool = False) -> None:
    parser.add_argument("--glossary", required=glossary_required,
                        help="JSON array of glossary terms")
    parser.add_argument("--aliases", help="JSON object mapping glossary term -> alias list")
    parser.add_argument("--no-aliases", action="store_true",
                        help="canonicalize without alias folding")


def _lexicon_from(args: argparse.Namespace):
    return load_lexicon(args.glossary, args.aliases), not args.no_aliases


def cmd_format(args: argparse.Namespace) -> int:
    docs = format_directory(args.input_dir, strip_breaks=not args.keep_line_breaks,
                            dataset=args.dataset)
    write_document_file(args.output, docs)
    print(f"formatted {len(docs)} documents -> {args.output}")
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    import json as _json

    bad = 0
    total = 0
    seen_keys: set[str] = set()
    with open(args.file, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            total += 1
            try:
                record = _json.loads(line)
            except _json.JSONDecodeError as exc:
                print(f"line {lineno}: MalformedRecord: invalid JSON: {exc}")
                bad += 1
                continue
            try:
                doc = decode_document(record)
            except DocumentError as exc:
                print(f"line {lineno}: {type(exc).__name__}: {exc}")
                bad += 1
                continue
            violations = validate_document(doc)
            if doc.doc_key in seen_keys:
                violations.append(
                    Violation("DuplicateDocKey", f"doc_key {doc.doc_key!r} already used"))
            seen_keys.add(doc.doc_key)
            for violation in violations:
                print(f"line {lineno} ({doc.doc_key}): {violation}")
            bad += 1 if violations else 0
    print(f"{total - bad} of {total} documents valid")
    return 1 if bad else 0


def cmd_freq(args: argparse.Namespace) -> int:
    docs = read_document_file(args.file)
    lexicon, use_aliases = _lexicon_from(args)
    index = build_entity_index(docs, lexicon, use_aliases, corpus_id=_corpus_id_for(args.file))
    if args.json:
        _print_json(frequency_payload(index, args.limit))
        return 0
    for term, count in frequency_list(index)[:args.limit]:
        print(f"{term}\t{count}")
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    lexicon, use_aliases = _lexicon_from(args)
    corpora = []
    for path in args.files:
        corpus_id = _corpus_id_for(path)
        docs = read_document_file(path)
        index = build_entity_index(docs, lexicon, use_aliases, corpus_id=corpus_id)
        report = coverage_report(index, lexicon.glossary)
        top = frequency_list(index)[:args.top]
        corpora.append((corpus_id, report, top))

    if args.json:
        _print_json({
            "corpora": [
                {"coverage": coverage_payload(report), "top_entities": [[t, c] for t, c in top]}
                for _, report, top in corpora
            ]
        })
        return 0

    for corpus_id, report, top in corpora:
        detected = len(report.detected_terms)
        print(f"corpus: {corpus_id}")
        print(f"  {detected} out of {report.glossary_size} terms detected ({report.percent_detected}%)")
        print(f"  relations for glossary terms: {report.glossary_relation_count}")
        print("  top entities:")
        for term, count in top:
            print(f"    {term}: {count}")
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    docs = read_document_file(args.file)
    lexicon, use_aliases = _lexicon_from(args)
    kg = build_corpus_graph(docs, lexicon, use_aliases,
                            corpus_id=_corpus_id_for(args.file),
                            include_generic=not args.exclude_generic)
    data = export_graph(kg, args.format, keep_duplicates=args.keep_duplicates)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode("utf-8"))
        if args.format == "canonical-json":
            sys.stdout.write("\n")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    preds = read_document_file(args.pred)
    golds = read_document_file(args.gold)
    mode = "lenient" if args.lenient else "strict"
    report = evaluate_corpus(preds, golds, mode)
    if args.json:
        _print_json(report_payload(report))
        return 0

    print(f"mode: {report.mode}")
    header = f"{'doc':<16}{'ents':>6}{'right':>7}{'ent%':>8}{'rels':>6}{'right':>7}{'rel%':>8}"
    print(header)
    for s in report.per_doc:
        print(f"{s.doc_key:<16}{s.entities_total:>6}{s.entities_right:>7}"
              f"{percent_str(s.entities_right, s.entities_total):>8}"
              f"{s.relations_total:>6}{s.relations_right:>7}"
              f"{percent_str(s.relations_right, s.relations_total):>8}")
    pooled = report.pooled
    print(f"entity micro precision {percent_str(pooled['entities_right'], pooled['entities_total'])}% "
          f"({pooled['entities_right']}/{pooled['entities_total']}); "
          f"recall {percent_str(pooled['entities_right'], pooled['entities_gold'])}% "
          f"({pooled['entities_right']}/{pooled['entities_gold']}); "
          f"f1 {report.entity_micro_f1:.4f}")
    print(f"relation micro precision {percent_str(pooled['relations_right'], pooled['relations_total'])}% "
          f"({pooled['relations_right']}/{pooled['relations_total']}); "
          f"recall {percent_str(pooled['relations_right'], pooled['relations_gold'])}% "
          f"({pooled['relations_right']}/{pooled['relations_gold']}); "
          f"f1 {report.relation_micro_f1:.4f}")
    return 0


def cmd_nouns_eval(args: argparse.Namespace) -> int:
    preds = read_document_file(args.pred)
    nouns = load_noun_annotations(args.nouns)
    ratio = noun_overlap(preds, nouns)
    total = sum(len(a.noun_spans) for a in nouns)
    hits = round(ratio * total)
    if args.json:
        _print_json({"noun_spans": total, "overlapping": hits, "ratio": round(ratio, 6)})
        return 0
    print(f"noun overlap: {ratio:.4f} ({hits}/{total})")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    config = load_service_config(args.config)
    port = args.port
    if port is None and os.environ.get(PORT_ENV_VAR):
        port = int(os.environ[PORT_ENV_VAR])
    run_service(config, port=port, host=args.host)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iegraph",
        description="Entity dictionaries, knowledge graphs, and evaluation for span-annotated IE predictions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("format", help="format a directory of .txt files into model-ready jsonl")
    p.add_argument("input_dir")
    p.add_argument("output")
    p.add_argument("--keep-line-breaks", action="store_true",
                   help="do not collapse line breaks before sentence splitting")
    p.add_argument("--dataset", help="value for the documents' dataset field")
    p.set_defaults(func=cmd_format)

    p = sub.add_parser("validate", help="list wire-format violations in a jsonl file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("freq", help="most frequently detected entity terms")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=100)
    p.add_argument("--json", action="store_true")
    _add_lexicon_args(p)
    p.set_defaults(func=cmd_freq)

    p = sub.add_parser("analyze", help="glossary coverage and top terms per corpus")
    p.add_argument("files", nargs="+")
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--json", action="store_true")
    _add_lexicon_args(p, glossary_required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graph", help="export the merged knowledge graph")
    p.add_argument("file")
    p.add_argument("--format", choices=["canonical-json", "dot"], default="canonical-json")
    p.add_argument("--exclude-generic", action="store_true",
                   help="drop Generic-typed entities and their relations")
    p.add_argument("--keep-duplicates", action="store_true",
                   help="emit one edge per relation instance instead of deduplicating")
    p.add_argument("-o", "--output")
    _add_lexicon_args(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("eval", help="score predictions against gold annotations")
    p.add_argument("pred")
    p.add_argument("gold")
    p.add_argument("--lenient", action="store_true",
                   help="ignore entity labels and relation direction when matching")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("nouns-eval", help="share of noun spans overlapping predicted entities")
    p.add_argument("pred")
    p.add_argument("nouns")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_nouns_eval)

    p = sub.add_parser("serve", help="serve corpora analytics over HTTP")
    p.add_argument("config")
    p.add_argument("--port", type=int, help=f"overrides config and ${PORT_ENV_VAR}")
    p.add_argument("--host")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IEGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
