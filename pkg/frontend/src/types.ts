// Shapes mirror the JSON bodies of GET /search exactly.

export interface SearchResultItem {
  entity_id: string;
  name: string;
  kind: string;
  city: string;
  distance_km?: number;
  score: number;
  source: string;
}

export interface Interpretation {
  template_id: string;
  bindings: Record<string, string>;
  confidence: number;
  instantiated_query: string;
}

export interface AggregateTable {
  columns: string[];
  rows: unknown[][];
}

export interface SearchResponse {
  query: string;
  corrected_query: string;
  interpretation: Interpretation | null;
  results: SearchResultItem[];
  aggregate?: AggregateTable;
  timings_ms: Record<string, number>;
}

export interface Coords {
  lat: number;
  lon: number;
}

export interface Facets {
  specialty: string | null;
  weekend_only: boolean;
}

export interface UiState {
  queryText: string;
  coords: Coords | null;
  lastResponse: SearchResponse | null;
  activeFacets: Facets;
  loading: boolean;
  error: string | null;
}

export function initialState(): UiState {
  return {
    queryText: "",
    coords: null,
    lastResponse: null,
    activeFacets: { specialty: null, weekend_only: false },
    loading: false,
    error: null,
  };
}
