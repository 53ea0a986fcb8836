/** Payload shapes served by the analytics API. */

export type RelationLabel =
  | "USED-FOR"
  | "FEATURE-OF"
  | "HYPONYM-OF"
  | "PART-OF"
  | "COMPARE"
  | "CONJUNCTION";

export const ALL_RELATION_TYPES: readonly RelationLabel[] = [
  "USED-FOR",
  "FEATURE-OF",
  "HYPONYM-OF",
  "PART-OF",
  "COMPARE",
  "CONJUNCTION",
];

/** COMPARE and CONJUNCTION carry no direction. */
export const SYMMETRIC_RELATION_TYPES: readonly RelationLabel[] = ["COMPARE", "CONJUNCTION"];

/** The four types shown by default in the relation panel. */
export const DEFAULT_RELATION_TYPES: readonly RelationLabel[] = [
  "HYPONYM-OF",
  "PART-OF",
  "FEATURE-OF",
  "USED-FOR",
];

export interface CorpusInfo {
  id: string;
  documents: number;
  entities: number;
  relations: number;
}

export interface CorporaPayload {
  corpora: CorpusInfo[];
}

export interface FrequencyPage {
  corpus: string;
  /** [term, mention count] pairs, most frequent first. */
  entities: [string, number][];
}

export interface MentionRow {
  doc_key: string;
  sentence_index: number;
  start: number;
  end: number;
  sentence: string;
}

export interface RelationRow {
  doc_key: string;
  sentence_index: number;
  label: RelationLabel;
  /** Which argument slot the viewed entity occupies. */
  side: "left" | "right";
  other: string;
  sentence: string;
}

export interface EntityDetail {
  corpus: string;
  canonical: string;
  dominant_type: string;
  mention_count: number;
  type_counts: Record<string, number>;
  alias_forms: string[];
  mentions: MentionRow[];
  relations: RelationRow[];
}

export interface CoveragePayload {
  corpus: string;
  glossary_size: number;
  detected_count: number;
  percent_detected: number;
  glossary_relation_count: number;
  detected_terms: string[];
}
