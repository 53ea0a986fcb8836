import { describe, expect, it } from "vitest";

import {
  initialState,
  invariantViolations,
  reduce,
  type Event,
  type ViewState,
} from "../src/state.js";
import { DEFAULT_RELATION_TYPES, type EntityDetail } from "../src/types.js";
import { groupKey, visibleGroups } from "../src/viewmodel.js";
import { coverageDemo, entitiesDemo, entityDapps, entityOptimisticRollups } from "./fixtures.js";

function loadedState(): ViewState {
  let state = initialState();
  state = reduce(state, { kind: "corpora-loaded", ids: ["demo", "academic-sample", "all"] });
  state = reduce(state, { kind: "entities-loaded", corpus: "demo", entities: entitiesDemo.entities });
  state = reduce(state, { kind: "coverage-loaded", corpus: "demo", detected: coverageDemo.detected_terms });
  return state;
}

function withEntity(detail: EntityDetail): ViewState {
  let state = loadedState();
  state = reduce(state, { kind: "select-entity", term: detail.canonical });
  state = reduce(state, { kind: "entity-loaded", detail });
  return state;
}

describe("reducer basics", () => {
  it("defaults to the first served corpus", () => {
    const state = reduce(initialState(), { kind: "corpora-loaded", ids: ["demo", "all"] });
    expect(state.corpusId).toBe("demo");
  });

  it("starts with the four default relation types enabled", () => {
    expect([...initialState().enabledTypes].sort()).toEqual(
      [...DEFAULT_RELATION_TYPES].sort(),
    );
  });

  it("ignores entity selection for terms not in the left panel", () => {
    const state = reduce(loadedState(), { kind: "select-entity", term: "not listed anywhere" });
    expect(state.selectedEntity).toBeNull();
  });

  it("selecting an entity clears any previous relation selection", () => {
    let state = withEntity(entityDapps);
    const key = groupKey(entityDapps.relations[0]!);
    state = reduce(state, { kind: "select-relation", key });
    expect(state.selectedRelationKey).not.toBeNull();
    state = reduce(state, { kind: "select-entity", term: "blockchain" });
    expect(state.selectedRelationKey).toBeNull();
    expect(state.entityDetail).toBeNull();
  });

  it("drops stale entity payloads (latest selection wins)", () => {
    let state = loadedState();
    state = reduce(state, { kind: "select-entity", term: "blockchain" });
    state = reduce(state, { kind: "entity-loaded", detail: entityDapps });
    expect(state.entityDetail).toBeNull();
  });

  it("drops entity payloads from another corpus", () => {
    let state = loadedState();
    state = reduce(state, { kind: "select-corpus", id: "academic-sample" });
    state = reduce(state, {
      kind: "entities-loaded",
      corpus: "academic-sample",
      entities: [[entityDapps.canonical, 5]],
    });
    state = reduce(state, { kind: "select-entity", term: entityDapps.canonical });
    state = reduce(state, { kind: "entity-loaded", detail: entityDapps }); // corpus "demo"
    expect(state.entityDetail).toBeNull();
  });
});

describe("corpus switching", () => {
  it("resets every panel", () => {
    let state = withEntity(entityDapps);
    state = reduce(state, {
      kind: "select-relation",
      key: groupKey(entityDapps.relations[0]!),
    });
    state = reduce(state, { kind: "select-corpus", id: "all" });
    expect(state.entities).toEqual([]);
    expect(state.selectedEntity).toBeNull();
    expect(state.entityDetail).toBeNull();
    expect(state.selectedRelationKey).toBeNull();
    expect(state.detectedGlossaryTerms.size).toBe(0);
  });

  it("ignores unknown corpus ids", () => {
    const state = reduce(loadedState(), { kind: "select-corpus", id: "bogus" });
    expect(state.corpusId).toBe("demo");
  });

  it("drops stale entity lists after switching", () => {
    let state = loadedState();
    state = reduce(state, { kind: "select-corpus", id: "all" });
    state = reduce(state, { kind: "entities-loaded", corpus: "demo", entities: [["x", 1]] });
    expect(state.entities).toEqual([]);
  });
});

describe("relation selection and filters", () => {
  it("accepts only keys among the visible groups", () => {
    let state = withEntity(entityDapps);
    state = reduce(state, { kind: "select-relation", key: "USED-FOR|out|made-up" });
    expect(state.selectedRelationKey).toBeNull();
    const valid = visibleGroups(entityDapps.relations, state.enabledTypes)[0]!;
    state = reduce(state, { kind: "select-relation", key: valid.key });
    expect(state.selectedRelationKey).toBe(valid.key);
  });

  it("cannot select a relation whose type is filtered out", () => {
    let state = withEntity(entityOptimisticRollups);
    const compareRow = entityOptimisticRollups.relations.find((r) => r.label === "COMPARE")!;
    state = reduce(state, { kind: "select-relation", key: groupKey(compareRow) });
    expect(state.selectedRelationKey).toBeNull(); // COMPARE not in default filter
    state = reduce(state, { kind: "toggle-type", label: "COMPARE" });
    state = reduce(state, { kind: "select-relation", key: groupKey(compareRow) });
    expect(state.selectedRelationKey).toBe(groupKey(compareRow));
  });

  it("clears the selection when its type is toggled off", () => {
    let state = withEntity(entityOptimisticRollups);
    const featureRow = entityOptimisticRollups.relations.find((r) => r.label === "FEATURE-OF")!;
    state = reduce(state, { kind: "select-relation", key: groupKey(featureRow) });
    expect(state.selectedRelationKey).not.toBeNull();
    state = reduce(state, { kind: "toggle-type", label: "FEATURE-OF" });
    expect(state.selectedRelationKey).toBeNull();
  });
});

describe("random event walks never break the invariants", () => {
  // Small deterministic PRNG so failures reproduce.
  function mulberry32(seed: number): () => number {
    let a = seed >>> 0;
    return () => {
      a = (a + 0x6d2b79f5) >>> 0;
      let t = a;
      t = Math.imul(t ^ (t >>> 15), t | 1);
      t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
      return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
    };
  }

  const details = [entityDapps, entityOptimisticRollups];

  function randomEvent(rand: () => number, state: ViewState): Event {
    const pick = <T,>(items: readonly T[]): T => items[Math.floor(rand() * items.length)]!;
    const roll = rand();
    if (roll < 0.1) return { kind: "corpora-loaded", ids: ["demo", "academic-sample", "all"] };
    if (roll < 0.2) return { kind: "select-corpus", id: pick(["demo", "all", "bogus"]) };
    if (roll < 0.35) {
      return { kind: "entities-loaded", corpus: pick(["demo", "all"]), entities: entitiesDemo.entities };
    }
    if (roll < 0.45) {
      return { kind: "coverage-loaded", corpus: pick(["demo", "all"]), detected: coverageDemo.detected_terms };
    }
    if (roll < 0.6) {
      const term = pick([...details.map((d) => d.canonical), "blockchain", "unknown term"]);
      return { kind: "select-entity", term };
    }
    if (roll < 0.7) return { kind: "entity-loaded", detail: pick(details) };
    if (roll < 0.85) {
      const candidates = state.entityDetail
        ? visibleGroups(state.entityDetail.relations, state.enabledTypes).map((g) => g.key)
        : [];
      return { kind: "select-relation", key: pick([...candidates, "USED-FOR|out|ghost"]) };
    }
    if (roll < 0.95) {
      return {
        kind: "toggle-type",
        label: pick(["USED-FOR", "FEATURE-OF", "HYPONYM-OF", "PART-OF", "COMPARE", "CONJUNCTION"] as const),
      };
    }
    return { kind: "error", message: "boom" };
  }

  it.each([1, 2, 3, 4, 5])("seed %d", (seed) => {
    const rand = mulberry32(seed * 2654435761);
    let state = initialState();
    for (let step = 0; step < 400; step += 1) {
      state = reduce(state, randomEvent(rand, state));
      const problems = invariantViolations(state);
      expect(problems, `step ${step}`).toEqual([]);
    }
  });
});
