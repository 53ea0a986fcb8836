"""Read-only HTTP API serving per-corpus analytics to the explorer UI.

Corpora are loaded once at startup and served as immutable snapshots;
there are no mutation endpoints, so the read path needs no locks and
repeated identical requests return byte-identical bodies. Every corpus
configured in the service gets its own routes, and a synthetic corpus
id ``all`` serves the merge of every configured corpus.

Routes (all JSON)::

    GET /api/corpora
    GET /api/corpora/{id}/entities?limit=N
    GET /api/corpora/{id}/entities/{term}
    GET /api/corpora/{id}/graph
    GET /api/corpora/{id}/coverage
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Iterable

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from .documents import Document, ensure_unique_doc_keys, read_document_file, sentence_text
from .errors import ConfigError, DuplicateDocKey, EmptyTerm
from .graph import KnowledgeGraph, build_corpus_graph, dominant_type, export_graph, merge_graphs
from .indexing import (
    EntityIndex,
    EntityRecord,
    build_entity_index,
    coverage_payload,
    coverage_report,
    frequency_payload,
)
from .jsonio import dumps_canonical_bytes
from .lexicon import Lexicon, load_lexicon

MERGED_CORPUS_ID = "all"


@dataclass(frozen=True)
class ServiceConfig:
    """Startup configuration; fixed for the process lifetime."""

    corpora: tuple[tuple[str, str], ...]  # (corpus_id, jsonl path) in config order
    glossary_path: str | None = None
    aliases_path: str | None = None
    use_aliases: bool = True
    host: str = "127.0.0.1"
    port: int = 8000
    default_limit: int = 100
    ui_dir: str | None = None


def _reject_duplicate_keys(pairs: list[tuple[str, object]]) -> dict:
    result: dict = {}
    for key, value in pairs:
        if key in result:
            raise ConfigError(f"duplicate key {key!r} in config")
        result[key] = value
    return result


def load_service_config(path: str) -> ServiceConfig:
    """Read a JSON config file; relative paths resolve against its directory."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh, object_pairs_hook=_reject_duplicate_keys)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: config must be a JSON object")

    base = os.path.dirname(os.path.abspath(path))

    def resolve(p: str | None) -> str | None:
        return os.path.join(base, p) if p is not None else None

    raw_corpora = data.get("corpora")
    if not isinstance(raw_corpora, dict) or not raw_corpora:
        raise ConfigError(f"{path}: 'corpora' must be a non-empty object of id -> jsonl path")
    corpora = []
    for corpus_id, corpus_path in raw_corpora.items():
        if corpus_id == MERGED_CORPUS_ID:
            raise ConfigError(f"{path}: corpus id {MERGED_CORPUS_ID!r} is reserved for the merged view")
        if not isinstance(corpus_path, str):
            raise ConfigError(f"{path}: corpus path for {corpus_id!r} must be a string")
        corpora.append((corpus_id, resolve(corpus_path)))

    return ServiceConfig(
        corpora=tuple(corpora),
        glossary_path=resolve(data.get("glossary")),
        aliases_path=resolve(data.get("aliases")),
        use_aliases=bool(data.get("use_aliases", True)),
        host=data.get("host", "127.0.0.1"),
        port=int(data.get("port", 8000)),
        default_limit=int(data.get("default_limit", 100)),
        ui_dir=data.get("ui_dir"),
    )


@dataclass(frozen=True)
class CorpusHandle:
    """Immutable snapshot of one corpus' documents and derived analytics."""

    corpus_id: str
    documents: dict[str, Document]
    index: EntityIndex
    graph: KnowledgeGraph
    graph_bytes: bytes


def _build_handle(corpus_id: str, docs: list[Document], lexicon: Lexicon,
                  use_aliases: bool) -> CorpusHandle:
    index = build_entity_index(docs, lexicon, use_aliases, corpus_id=corpus_id)
    graph = build_corpus_graph(docs, lexicon, use_aliases, corpus_id=corpus_id)
    return CorpusHandle(
        corpus_id=corpus_id,
        documents={doc.doc_key: doc for doc in docs},
        index=index,
        graph=graph,
        graph_bytes=export_graph(graph, "canonical-json"),
    )


def load_corpora(config: ServiceConfig) -> tuple[dict[str, CorpusHandle], Lexicon]:
    """Build every corpus snapshot up front; fails atomically on bad input.

    The merged ``all`` handle requires doc_keys to be unique across the
    whole configuration.
    """
    lexicon = load_lexicon(config.glossary_path, config.aliases_path)
    handles: dict[str, CorpusHandle] = {}
    all_docs: list[Document] = []
    for corpus_id, path in config.corpora:
        docs = read_document_file(path)
        handles[corpus_id] = _build_handle(corpus_id, docs, lexicon, config.use_aliases)
        all_docs.extend(docs)
    try:
        ensure_unique_doc_keys(all_docs)
    except DuplicateDocKey as exc:
        raise DuplicateDocKey(f"across corpora: {exc}") from None
    merged_graph = merge_graphs([handles[cid].graph for cid, _ in config.corpora])
    handles[MERGED_CORPUS_ID] = CorpusHandle(
        corpus_id=MERGED_CORPUS_ID,
        documents={doc.doc_key: doc for doc in all_docs},
        index=build_entity_index(all_docs, lexicon, config.use_aliases, corpus_id=MERGED_CORPUS_ID),
        graph=merged_graph,
        graph_bytes=export_graph(merged_graph, "canonical-json"),
    )
    return handles, lexicon


# --- payload shapes shared with the CLI ------------------------------------------

def corpora_payload(handles: Iterable[CorpusHandle]) -> dict:
    return {
        "corpora": [
            {
                "id": handle.corpus_id,
                "documents": len(handle.documents),
                "entities": len(handle.index.records),
                "relations": handle.index.total_relations,
            }
            for handle in handles
        ]
    }


def entity_payload(handle: CorpusHandle, record: EntityRecord) -> dict:
    """Entity dictionary view with evidence sentences resolved to text."""
    def sentence_for(doc_key: str, index: int) -> str:
        return sentence_text(handle.documents[doc_key], index)

    return {
        "corpus": handle.corpus_id,
        "canonical": record.canonical,
        "dominant_type": dominant_type(record.type_counts).value,
        "mention_count": record.mention_count,
        "type_counts": {
            etype.value: count
            for etype, count in sorted(record.type_counts.items(), key=lambda kv: kv[0].value)
        },
        "alias_forms": sorted(record.alias_forms),
        "mentions": [
            {
                "doc_key": m.doc_key,
                "sentence_index": m.sentence_index,
                "start": m.start,
                "end": m.end,
                "sentence": sentence_for(m.doc_key, m.sentence_index),
            }
            for m in record.mentions
        ],
        "relations": [
            {
                "doc_key": r.doc_key,
                "sentence_index": r.sentence_index,
                "label": r.label.value,
                "side": r.side.value,
                "other": r.other,
                "sentence": sentence_for(r.doc_key, r.sentence_index),
            }
            for r in record.relations
        ],
    }


# --- application -----------------------------------------------------------------

def _canonical_response(payload: dict) -> Response:
    return Response(content=dumps_canonical_bytes(payload), media_type="application/json")


def create_app(config: ServiceConfig) -> FastAPI:
    handles, lexicon = load_corpora(config)
    glossary = lexicon.glossary
    app = FastAPI(title="iegraph", openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.exception_handler(StarletteHTTPException)
    async def http_error(request: Request, exc: StarletteHTTPException) -> JSONResponse:
        return JSONResponse(status_code=exc.status_code, content={"error": str(exc.detail)})

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"error": "bad request parameters"})

    def handle_for(corpus_id: str) -> CorpusHandle:
        handle = handles.get(corpus_id)
        if handle is None:
            raise StarletteHTTPException(status_code=404, detail=f"unknown corpus {corpus_id!r}")
        return handle

    @app.get("/api/corpora")
    def list_corpora() -> Response:
        return _canonical_response(corpora_payload(handles.values()))

    @app.get("/api/corpora/{corpus_id}/entities")
    def get_entities(corpus_id: str, limit: int = Query(default=None, ge=1)) -> Response:
        handle = handle_for(corpus_id)
        effective = limit if limit is not None else config.default_limit
        return _canonical_response(frequency_payload(handle.index, effective))

    @app.get("/api/corpora/{corpus_id}/graph")
    def get_graph(corpus_id: str) -> Response:
        handle = handle_for(corpus_id)
        return Response(content=handle.graph_bytes, media_type="application/json")

    @app.get("/api/corpora/{corpus_id}/coverage")
    def get_coverage(corpus_id: str) -> Response:
        handle = handle_for(corpus_id)
        if not glossary:
            raise StarletteHTTPException(status_code=404, detail="no glossary configured")
        return _canonical_response(coverage_payload(coverage_report(handle.index, glossary)))

    @app.get("/api/corpora/{corpus_id}/entities/{term:path}")
    def get_entity(corpus_id: str, term: str) -> Response:
        handle = handle_for(corpus_id)
        try:
            canonical = lexicon.canonicalize(term, config.use_aliases)
        except EmptyTerm:
            raise StarletteHTTPException(status_code=404, detail="empty entity term") from None
        record = handle.index.records.get(canonical)
        if record is None:
            raise StarletteHTTPException(status_code=404, detail=f"unknown entity {term!r}")
        return _canonical_response(entity_payload(handle, record))

    if config.ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app


def run_service(config: ServiceConfig, *, port: int | None = None, host: str | None = None) -> None:
    """Blocking entry point used by the CLI ``serve`` command."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=host or config.host, port=port or config.port)
