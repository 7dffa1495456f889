// Test harness: a search function backed by responses captured from the
// real engine (scripts/capture_ui_fixtures.py), keyed by query + coords.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { SearchFn } from "../src/controller.js";
import type { Coords, SearchResponse } from "../src/types.js";

interface Scenario {
  q: string;
  lat: number | null;
  lon: number | null;
  response: SearchResponse;
}

export interface CapturedFixtures {
  flagship_question: string;
  coords: Coords;
  weekend_pediatrician_ids: string[];
  scenarios: Record<string, Scenario>;
}

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixtures(): CapturedFixtures {
  const raw = readFileSync(join(here, "fixtures", "responses.json"), "utf-8");
  return JSON.parse(raw) as CapturedFixtures;
}

export interface FakeSearch {
  fn: SearchFn;
  calls: { q: string; coords: Coords | null }[];
}

export function fakeSearch(fixtures: CapturedFixtures): FakeSearch {
  const calls: { q: string; coords: Coords | null }[] = [];
  const fn: SearchFn = async (q, coords) => {
    calls.push({ q, coords });
    for (const scenario of Object.values(fixtures.scenarios)) {
      const coordsMatch = scenario.lat === null
        ? coords === null
        : coords !== null && coords.lat === scenario.lat && coords.lon === scenario.lon;
      if (scenario.q === q && coordsMatch) {
        return structuredClone(scenario.response);
      }
    }
    throw new Error(`no captured response for ${JSON.stringify({ q, coords })}`);
  };
  return { fn, calls };
}
