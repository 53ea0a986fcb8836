import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type {
  CorporaPayload,
  CoveragePayload,
  EntityDetail,
  FrequencyPage,
} from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

function load<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

export const corpora = load<CorporaPayload>("corpora.json");
export const entitiesDemo = load<FrequencyPage>("entities_demo.json");
export const entityDapps = load<EntityDetail>("entity_dapps.json");
export const entityOptimisticRollups = load<EntityDetail>("entity_optimistic_rollups.json");
export const coverageDemo = load<CoveragePayload>("coverage_demo.json");
