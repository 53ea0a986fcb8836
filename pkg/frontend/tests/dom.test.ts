// @vitest-environment happy-dom

import { beforeEach, describe, expect, it } from "vitest";

import { render, type Handlers } from "../src/dom.js";
import { initialState, reduce, type ViewState } from "../src/state.js";
import { groupKey } from "../src/viewmodel.js";
import { coverageDemo, entitiesDemo, entityDapps, entityOptimisticRollups } from "./fixtures.js";

const PAGE = `
  <div id="error-banner" hidden></div>
  <select id="corpus-select"></select>
  <div id="type-filters"></div>
  <div id="entity-list"></div>
  <div id="relation-list"></div>
  <div id="evidence-list"></div>
`;

function noopHandlers(): Handlers {
  return {
    onSelectCorpus() {},
    onSelectEntity() {},
    onSelectRelation() {},
    onToggleType() {},
  };
}

function loadedState(): ViewState {
  let state = initialState();
  state = reduce(state, { kind: "corpora-loaded", ids: ["demo", "academic-sample", "all"] });
  state = reduce(state, { kind: "entities-loaded", corpus: "demo", entities: entitiesDemo.entities });
  state = reduce(state, { kind: "coverage-loaded", corpus: "demo", detected: coverageDemo.detected_terms });
  return state;
}

beforeEach(() => {
  document.body.innerHTML = PAGE;
});

describe("three-panel rendering", () => {
  it("left panel shows one button per served entity, top-100 at most", () => {
    render(loadedState(), noopHandlers());
    const buttons = document.querySelectorAll("#entity-list .entity-button");
    expect(buttons.length).toBe(Math.min(entitiesDemo.entities.length, 100));
    expect(buttons.length).toBeGreaterThan(0);
  });

  it("glossary entities carry the highlight class", () => {
    render(loadedState(), noopHandlers());
    const highlighted = [...document.querySelectorAll("#entity-list .glossary .term")]
      .map((node) => node.textContent);
    expect(highlighted).toContain("decentralized application");
  });

  it("middle panel shows only the four default relation types", () => {
    let state = loadedState();
    state = reduce(state, { kind: "select-entity", term: entityOptimisticRollups.canonical });
    state = reduce(state, { kind: "entity-loaded", detail: entityOptimisticRollups });
    render(state, noopHandlers());
    const labels = [...document.querySelectorAll("#relation-list .relation-label")]
      .map((node) => node.textContent);
    expect(labels).toEqual(["FEATURE-OF"]); // the COMPARE row stays hidden

    state = reduce(state, { kind: "toggle-type", label: "COMPARE" });
    render(state, noopHandlers());
    const toggled = [...document.querySelectorAll("#relation-list .relation-label")]
      .map((node) => node.textContent);
    expect(toggled).toContain("COMPARE");
  });

  it("right panel shows the evidence sentence with doc key and sentence number", () => {
    let state = loadedState();
    state = reduce(state, { kind: "select-entity", term: entityDapps.canonical });
    state = reduce(state, { kind: "entity-loaded", detail: entityDapps });
    const offchain = entityDapps.relations.find((r) => r.other === "off-chain scaling")!;
    state = reduce(state, { kind: "select-relation", key: groupKey(offchain) });
    render(state, noopHandlers());

    const provenance = [...document.querySelectorAll("#evidence-list .provenance")]
      .map((node) => node.textContent);
    const sentences = [...document.querySelectorAll("#evidence-list .sentence")]
      .map((node) => node.textContent);
    // Multiplicity 2: both source sentences listed, each with provenance.
    expect(provenance).toEqual(["wp-offchain, sentence 0", "wp-scaling, sentence 0"]);
    expect(sentences).toContain("Rollups provide off-chain scaling for dApps on Ethereum .");
    expect(sentences).toContain("Workloads move to off-chain scaling so dApps stay cheap .");
  });

  it("switching corpus empties the panels again", () => {
    let state = loadedState();
    state = reduce(state, { kind: "select-entity", term: entityDapps.canonical });
    state = reduce(state, { kind: "entity-loaded", detail: entityDapps });
    state = reduce(state, { kind: "select-corpus", id: "all" });
    render(state, noopHandlers());
    expect(document.querySelectorAll("#entity-list .entity-button").length).toBe(0);
    expect(document.querySelector("#relation-list .empty")).not.toBeNull();
  });

  it("shows the error banner on failure states", () => {
    const state = reduce(loadedState(), { kind: "error", message: "API unreachable" });
    render(state, noopHandlers());
    const banner = document.getElementById("error-banner")!;
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toBe("API unreachable");
  });
});
