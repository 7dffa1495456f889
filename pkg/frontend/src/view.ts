// Pure view-model builders: what the DOM layer renders, testable in node.
// Rows map 1:1 onto the response's results in server order; chips exist
// exactly when the response carries an interpretation.

import type { SearchResponse } from "./types.js";

export interface ChipVM {
  slot: string;
  value: string;
}

export interface RowVM {
  entityId: string;
  name: string;
  kind: string;
  city: string;
  distanceText: string;
  sourceBadge: string;
}

export function chipViewModels(response: SearchResponse | null): ChipVM[] {
  if (!response || !response.interpretation) {
    return [];
  }
  return Object.entries(response.interpretation.bindings)
    .map(([slot, value]) => ({ slot, value }));
}

export function rowViewModels(response: SearchResponse | null): RowVM[] {
  if (!response) {
    return [];
  }
  return response.results.map((item) => ({
    entityId: item.entity_id,
    name: item.name,
    kind: item.kind,
    city: item.city,
    distanceText: item.distance_km === undefined ? "" : `${item.distance_km.toFixed(1)} km`,
    sourceBadge: item.source,
  }));
}

export function summaryLine(response: SearchResponse | null): string {
  if (!response) {
    return "";
  }
  const n = response.results.length;
  const corrected = response.corrected_query !== response.query.toLowerCase()
    ? ` (searched as: ${response.corrected_query})` : "";
  return `${n} result${n === 1 ? "" : "s"}${corrected}`;
}
