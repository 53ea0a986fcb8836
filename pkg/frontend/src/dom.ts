/** Thin DOM layer: rebuild the three panels from the current state. */

import type { ViewState } from "./state.js";
import { ALL_RELATION_TYPES, type RelationLabel } from "./types.js";
import {
  entityButtons,
  visibleGroups,
  type RelationGroup,
} from "./viewmodel.js";

export interface Handlers {
  onSelectCorpus(id: string): void;
  onSelectEntity(term: string): void;
  onSelectRelation(key: string): void;
  onToggleType(label: RelationLabel): void;
}

function clear(element: HTMLElement): void {
  element.replaceChildren();
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderCorpusSelect(state: ViewState, handlers: Handlers): void {
  const select = document.getElementById("corpus-select") as HTMLSelectElement;
  clear(select);
  for (const id of state.corpora) {
    const option = el("option", undefined, id);
    option.value = id;
    option.selected = id === state.corpusId;
    select.appendChild(option);
  }
  select.onchange = () => handlers.onSelectCorpus(select.value);
}

function renderFilters(state: ViewState, handlers: Handlers): void {
  const box = document.getElementById("type-filters") as HTMLElement;
  clear(box);
  for (const label of ALL_RELATION_TYPES) {
    const wrapper = el("label", "filter");
    const checkbox = el("input") as HTMLInputElement;
    checkbox.type = "checkbox";
    checkbox.checked = state.enabledTypes.has(label);
    checkbox.onchange = () => handlers.onToggleType(label);
    wrapper.appendChild(checkbox);
    wrapper.appendChild(el("span", undefined, label));
    box.appendChild(wrapper);
  }
}

function renderEntityPanel(state: ViewState, handlers: Handlers): void {
  const panel = document.getElementById("entity-list") as HTMLElement;
  clear(panel);
  const buttons = entityButtons(state.entities, state.detectedGlossaryTerms);
  if (buttons.length === 0) {
    panel.appendChild(el("p", "empty", "No entities in this corpus."));
    return;
  }
  for (const button of buttons) {
    const node = el("button", "entity-button");
    if (button.highlighted) node.classList.add("glossary");
    if (button.term === state.selectedEntity) node.classList.add("selected");
    node.appendChild(el("span", "term", button.term));
    node.appendChild(el("span", "count", String(button.count)));
    node.onclick = () => handlers.onSelectEntity(button.term);
    panel.appendChild(node);
  }
}

function relationText(state: ViewState, group: RelationGroup): string {
  const entity = state.selectedEntity ?? "?";
  if (group.direction === "both") return `${entity} ↔ ${group.other}`;
  if (group.direction === "out") return `${entity} → ${group.other}`;
  return `${group.other} → ${entity}`;
}

function renderRelationPanel(state: ViewState, handlers: Handlers): void {
  const panel = document.getElementById("relation-list") as HTMLElement;
  clear(panel);
  if (state.selectedEntity === null) {
    panel.appendChild(el("p", "empty", "Pick an entity on the left."));
    return;
  }
  if (state.entityDetail === null) {
    panel.appendChild(el("p", "empty", "Loading…"));
    return;
  }
  const groups = visibleGroups(state.entityDetail.relations, state.enabledTypes);
  if (groups.length === 0) {
    panel.appendChild(el("p", "empty", "No relations of the enabled types."));
    return;
  }
  for (const group of groups) {
    const node = el("button", "relation-row");
    if (group.key === state.selectedRelationKey) node.classList.add("selected");
    node.appendChild(el("span", "relation-label", group.label));
    node.appendChild(el("span", "relation-terms", relationText(state, group)));
    if (group.evidence.length > 1) {
      node.appendChild(el("span", "multiplicity", `×${group.evidence.length}`));
    }
    node.onclick = () => handlers.onSelectRelation(group.key);
    panel.appendChild(node);
  }
}

function renderEvidencePanel(state: ViewState): void {
  const panel = document.getElementById("evidence-list") as HTMLElement;
  clear(panel);
  if (state.entityDetail === null || state.selectedRelationKey === null) {
    panel.appendChild(el("p", "empty", "Pick a relation in the middle."));
    return;
  }
  const group = visibleGroups(state.entityDetail.relations, state.enabledTypes)
    .find((g) => g.key === state.selectedRelationKey);
  if (group === undefined) return;
  for (const evidence of group.evidence) {
    const item = el("div", "evidence");
    item.appendChild(el("div", "provenance",
      `${evidence.doc_key}, sentence ${evidence.sentence_index}`));
    item.appendChild(el("blockquote", "sentence", evidence.sentence));
    panel.appendChild(item);
  }
}

function renderError(state: ViewState): void {
  const banner = document.getElementById("error-banner") as HTMLElement;
  banner.textContent = state.error ?? "";
  banner.hidden = state.error === null;
}

export function render(state: ViewState, handlers: Handlers): void {
  renderCorpusSelect(state, handlers);
  renderFilters(state, handlers);
  renderEntityPanel(state, handlers);
  renderRelationPanel(state, handlers);
  renderEvidencePanel(state);
  renderError(state);
}
