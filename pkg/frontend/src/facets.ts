// Facets refine the search by augmenting the question text, so every
// refinement flows through the same language-understanding path as typed
// input.

import type { Facets } from "./types.js";

const TEMPORAL_PHRASES = [
  "weekend", "weekends", "saturday", "sunday",
  "evening", "evenings", "after hours", "late",
];

export function hasTemporalPhrase(query: string): boolean {
  const text = ` ${query.toLowerCase()} `;
  return TEMPORAL_PHRASES.some((phrase) => text.includes(` ${phrase}`));
}

/** The query actually sent: raw text plus facet-derived suffixes. */
export function effectiveQuery(raw: string, facets: Facets): string {
  let query = raw.trim();
  if (facets.specialty && !query.toLowerCase().includes(facets.specialty.toLowerCase())) {
    query = `${facets.specialty} ${query}`.trim();
  }
  if (facets.weekend_only && !hasTemporalPhrase(query)) {
    query = `${query} open on the weekend`.trim();
  }
  return query;
}
