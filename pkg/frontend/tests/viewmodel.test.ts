import { describe, expect, it } from "vitest";

import { DEFAULT_RELATION_TYPES } from "../src/types.js";
import {
  ENTITY_PAGE_SIZE,
  entityButtons,
  groupRelations,
  visibleGroups,
} from "../src/viewmodel.js";
import { coverageDemo, entitiesDemo, entityDapps, entityOptimisticRollups } from "./fixtures.js";

describe("entity panel", () => {
  it("renders every served entity as one button (served page is capped)", () => {
    const buttons = entityButtons(entitiesDemo.entities, new Set());
    expect(buttons.length).toBe(entitiesDemo.entities.length);
    expect(buttons.length).toBeLessThanOrEqual(ENTITY_PAGE_SIZE);
  });

  it("caps at 100 buttons even for an oversized payload", () => {
    const oversized: [string, number][] = Array.from({ length: 150 }, (_, i) => [`term ${i}`, 150 - i]);
    expect(entityButtons(oversized, new Set()).length).toBe(100);
  });

  it("keeps the served order", () => {
    const buttons = entityButtons(entitiesDemo.entities, new Set());
    expect(buttons.map((b) => [b.term, b.count])).toEqual(
      entitiesDemo.entities.slice(0, 100),
    );
  });

  it("highlights detected glossary terms", () => {
    const detected = new Set(coverageDemo.detected_terms);
    const buttons = entityButtons(entitiesDemo.entities, detected);
    const highlighted = buttons.filter((b) => b.highlighted).map((b) => b.term);
    expect(highlighted).toContain("decentralized application");
    expect(highlighted).toContain("blockchain");
    expect(buttons.find((b) => b.term === "adaptive aggregator")?.highlighted).toBe(false);
  });
});

describe("relation grouping", () => {
  it("folds the repeated off-chain-scaling relation into one row with both evidence sentences", () => {
    const groups = groupRelations(entityDapps.relations);
    const offchain = groups.find((g) => g.other === "off-chain scaling" && g.label === "USED-FOR");
    expect(offchain).toBeDefined();
    expect(offchain!.direction).toBe("in");
    expect(offchain!.evidence.length).toBe(2);
    expect(new Set(offchain!.evidence.map((e) => e.doc_key))).toEqual(
      new Set(["wp-offchain", "wp-scaling"]),
    );
    for (const evidence of offchain!.evidence) {
      expect(typeof evidence.sentence_index).toBe("number");
      expect(evidence.sentence.length).toBeGreaterThan(0);
    }
  });

  it("includes relations contributed by alias surface forms", () => {
    const groups = groupRelations(entityDapps.relations);
    const sentences = groups.flatMap((g) => g.evidence.map((e) => e.sentence));
    // This sentence mentions the entity only as "decentralized apps".
    expect(sentences).toContain("Smart contracts power decentralized apps reliably .");
    const fromAlias = groups.find((g) => g.other === "smart-contract");
    expect(fromAlias).toBeDefined();
  });

  it("marks symmetric relations as undirected", () => {
    const groups = groupRelations(entityOptimisticRollups.relations);
    const compare = groups.find((g) => g.label === "COMPARE");
    expect(compare?.direction).toBe("both");
    expect(compare?.other).toBe("zk rollups");
  });
});

describe("type filter", () => {
  it("shows only the four default types by default", () => {
    const groups = visibleGroups(entityOptimisticRollups.relations, new Set(DEFAULT_RELATION_TYPES));
    expect(groups.map((g) => g.label)).toEqual(["FEATURE-OF"]);
  });

  it("toggling COMPARE in makes COMPARE rows appear", () => {
    const enabled = new Set([...DEFAULT_RELATION_TYPES, "COMPARE" as const]);
    const labels = visibleGroups(entityOptimisticRollups.relations, enabled).map((g) => g.label);
    expect(labels).toContain("COMPARE");
    expect(labels).toContain("FEATURE-OF");
  });

  it("an empty filter hides everything", () => {
    expect(visibleGroups(entityDapps.relations, new Set())).toEqual([]);
  });
});
