/**
 * View state and its reducer.
 *
 * Hard rules the reducer enforces: a selected relation always belongs
 * to the currently selected entity's visible relation groups; clearing
 * or changing the entity clears the relation; switching corpus resets
 * every panel; stale responses (for a corpus or entity that is no
 * longer selected) are dropped.
 */

import { DEFAULT_RELATION_TYPES, type EntityDetail, type RelationLabel } from "./types.js";
import { visibleGroups } from "./viewmodel.js";

export interface ViewState {
  corpora: string[];
  corpusId: string | null;
  entities: [string, number][];
  detectedGlossaryTerms: ReadonlySet<string>;
  selectedEntity: string | null;
  entityDetail: EntityDetail | null;
  selectedRelationKey: string | null;
  enabledTypes: ReadonlySet<RelationLabel>;
  error: string | null;
}

export type Event =
  | { kind: "corpora-loaded"; ids: string[] }
  | { kind: "select-corpus"; id: string }
  | { kind: "entities-loaded"; corpus: string; entities: [string, number][] }
  | { kind: "coverage-loaded"; corpus: string; detected: string[] }
  | { kind: "select-entity"; term: string }
  | { kind: "entity-loaded"; detail: EntityDetail }
  | { kind: "select-relation"; key: string }
  | { kind: "toggle-type"; label: RelationLabel }
  | { kind: "error"; message: string };

export function initialState(): ViewState {
  return {
    corpora: [],
    corpusId: null,
    entities: [],
    detectedGlossaryTerms: new Set(),
    selectedEntity: null,
    entityDetail: null,
    selectedRelationKey: null,
    enabledTypes: new Set(DEFAULT_RELATION_TYPES),
    error: null,
  };
}

function resetPanels(state: ViewState): ViewState {
  return {
    ...state,
    entities: [],
    detectedGlossaryTerms: new Set(),
    selectedEntity: null,
    entityDetail: null,
    selectedRelationKey: null,
    error: null,
  };
}

export function reduce(state: ViewState, event: Event): ViewState {
  switch (event.kind) {
    case "corpora-loaded": {
      const corpusId = state.corpusId ?? event.ids[0] ?? null;
      return { ...state, corpora: event.ids, corpusId, error: null };
    }
    case "select-corpus": {
      if (!state.corpora.includes(event.id)) return state;
      return { ...resetPanels(state), corpusId: event.id };
    }
    case "entities-loaded": {
      if (event.corpus !== state.corpusId) return state; // stale response
      return { ...state, entities: event.entities, error: null };
    }
    case "coverage-loaded": {
      if (event.corpus !== state.corpusId) return state;
      return { ...state, detectedGlossaryTerms: new Set(event.detected) };
    }
    case "select-entity": {
      if (!state.entities.some(([term]) => term === event.term)) return state;
      return {
        ...state,
        selectedEntity: event.term,
        entityDetail: null,
        selectedRelationKey: null,
      };
    }
    case "entity-loaded": {
      const { detail } = event;
      if (detail.corpus !== state.corpusId || detail.canonical !== state.selectedEntity) {
        return state; // stale response, latest selection wins
      }
      return { ...state, entityDetail: detail, error: null };
    }
    case "select-relation": {
      if (state.entityDetail === null) return state;
      const groups = visibleGroups(state.entityDetail.relations, state.enabledTypes);
      if (!groups.some((group) => group.key === event.key)) return state;
      return { ...state, selectedRelationKey: event.key };
    }
    case "toggle-type": {
      const enabledTypes = new Set(state.enabledTypes);
      if (enabledTypes.has(event.label)) {
        enabledTypes.delete(event.label);
      } else {
        enabledTypes.add(event.label);
      }
      let selectedRelationKey = state.selectedRelationKey;
      if (selectedRelationKey !== null && selectedRelationKey.split("|")[0] === event.label
          && !enabledTypes.has(event.label)) {
        selectedRelationKey = null;
      }
      return { ...state, enabledTypes, selectedRelationKey };
    }
    case "error": {
      return { ...state, error: event.message };
    }
  }
}

/** Consistency rules; used by the random-walk test and debug builds. */
export function invariantViolations(state: ViewState): string[] {
  const problems: string[] = [];
  if (state.selectedEntity !== null && state.corpusId === null) {
    problems.push("entity selected without a corpus");
  }
  if (state.entityDetail !== null) {
    if (state.entityDetail.canonical !== state.selectedEntity) {
      problems.push("detail does not match selected entity");
    }
    if (state.entityDetail.corpus !== state.corpusId) {
      problems.push("detail does not match selected corpus");
    }
  }
  if (state.selectedRelationKey !== null) {
    if (state.entityDetail === null) {
      problems.push("relation selected without entity detail");
    } else {
      const groups = visibleGroups(state.entityDetail.relations, state.enabledTypes);
      if (!groups.some((group) => group.key === state.selectedRelationKey)) {
        problems.push("selected relation is not among the visible groups");
      }
    }
  }
  return problems;
}
