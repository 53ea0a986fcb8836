/** Wiring: store, effects, and the initial load. */

import { ApiClient, ApiError } from "./api.js";
import { render, type Handlers } from "./dom.js";
import { initialState, reduce, type Event, type ViewState } from "./state.js";
import type { RelationLabel } from "./types.js";

function apiBase(): string {
  // Same-origin by default (the API can serve this page directly);
  // override with ?api=http://host:port when served elsewhere.
  const override = new URLSearchParams(window.location.search).get("api");
  return override ? override.replace(/\/$/, "") : "";
}

const api = new ApiClient(apiBase());

let state: ViewState = initialState();

function dispatch(event: Event): void {
  state = reduce(state, event);
  render(state, handlers);
}

function reportError(error: unknown): void {
  const message = error instanceof Error ? error.message : String(error);
  dispatch({ kind: "error", message });
}

async function loadCorpusData(id: string): Promise<void> {
  try {
    const page = await api.entities(id);
    dispatch({ kind: "entities-loaded", corpus: id, entities: page.entities });
  } catch (error) {
    reportError(error);
    return;
  }
  try {
    const coverage = await api.coverage(id);
    if (coverage !== null) {
      dispatch({ kind: "coverage-loaded", corpus: id, detected: coverage.detected_terms });
    }
  } catch {
    // Highlighting is cosmetic; ignore coverage failures.
  }
}

async function loadEntity(term: string): Promise<void> {
  const corpus = state.corpusId;
  if (corpus === null) return;
  try {
    const detail = await api.entity(corpus, term);
    dispatch({ kind: "entity-loaded", detail });
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      // The entity list is stale; refetch it.
      void loadCorpusData(corpus);
    }
    reportError(error);
  }
}

const handlers: Handlers = {
  onSelectCorpus(id: string): void {
    dispatch({ kind: "select-corpus", id });
    void loadCorpusData(id);
  },
  onSelectEntity(term: string): void {
    dispatch({ kind: "select-entity", term });
    if (state.selectedEntity === term) {
      void loadEntity(term);
    }
  },
  onSelectRelation(key: string): void {
    dispatch({ kind: "select-relation", key });
  },
  onToggleType(label: RelationLabel): void {
    dispatch({ kind: "toggle-type", label });
  },
};

async function start(): Promise<void> {
  render(state, handlers);
  try {
    const payload = await api.corpora();
    dispatch({ kind: "corpora-loaded", ids: payload.corpora.map((c) => c.id) });
  } catch (error) {
    reportError(error);
    return;
  }
  if (state.corpusId !== null) {
    await loadCorpusData(state.corpusId);
  }
}

void start();
