/** Pure derivations from API payloads to what the panels render. */

import {
  ALL_RELATION_TYPES,
  SYMMETRIC_RELATION_TYPES,
  type RelationLabel,
  type RelationRow,
} from "./types.js";

export const ENTITY_PAGE_SIZE = 100;

export interface EntityButton {
  term: string;
  count: number;
  /** Detected glossary terms get a visual highlight. */
  highlighted: boolean;
}

export interface EvidenceRef {
  doc_key: string;
  sentence_index: number;
  sentence: string;
}

/** One row of the relation panel: duplicates fold into the evidence list. */
export interface RelationGroup {
  key: string;
  label: RelationLabel;
  other: string;
  direction: "out" | "in" | "both";
  evidence: EvidenceRef[];
}

export function entityButtons(
  entities: [string, number][],
  detectedGlossaryTerms: ReadonlySet<string>,
): EntityButton[] {
  return entities.slice(0, ENTITY_PAGE_SIZE).map(([term, count]) => ({
    term,
    count,
    highlighted: detectedGlossaryTerms.has(term),
  }));
}

function directionOf(row: RelationRow): "out" | "in" | "both" {
  if (SYMMETRIC_RELATION_TYPES.includes(row.label)) return "both";
  return row.side === "left" ? "out" : "in";
}

export function groupKey(row: RelationRow): string {
  return `${row.label}|${directionOf(row)}|${row.other}`;
}

/**
 * Fold repeated relationships into one row each; a row keeps every
 * evidence ref so multiplicity-2 relations show both sentences.
 */
export function groupRelations(relations: readonly RelationRow[]): RelationGroup[] {
  const groups = new Map<string, RelationGroup>();
  for (const row of relations) {
    const key = groupKey(row);
    let group = groups.get(key);
    if (group === undefined) {
      group = {
        key,
        label: row.label,
        other: row.other,
        direction: directionOf(row),
        evidence: [],
      };
      groups.set(key, group);
    }
    group.evidence.push({
      doc_key: row.doc_key,
      sentence_index: row.sentence_index,
      sentence: row.sentence,
    });
  }
  const labelOrder = (label: RelationLabel) => ALL_RELATION_TYPES.indexOf(label);
  return [...groups.values()].sort(
    (a, b) =>
      labelOrder(a.label) - labelOrder(b.label) ||
      a.other.localeCompare(b.other) ||
      a.direction.localeCompare(b.direction),
  );
}

export function visibleGroups(
  relations: readonly RelationRow[],
  enabledTypes: ReadonlySet<RelationLabel>,
): RelationGroup[] {
  return groupRelations(relations).filter((group) => enabledTypes.has(group.label));
}
