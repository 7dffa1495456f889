// State transitions for the search page. The controller owns a UiState and
// notifies the view after every change; all server I/O goes through the
// injected search function so tests can drive it without a browser.

import { effectiveQuery } from "./facets.js";
import type { Coords, Facets, SearchResponse, UiState } from "./types.js";
import { initialState } from "./types.js";

export type SearchFn = (q: string, coords: Coords | null) => Promise<SearchResponse>;

export class SearchController {
  state: UiState = initialState();
  // Monotonically increasing request id: a response only lands if it is
  // still the newest request, so a slow stale answer never clobbers state.
  private sequence = 0;

  constructor(
    private readonly search: SearchFn,
    private readonly onChange: (state: UiState) => void = () => undefined,
  ) {}

  setQueryText(text: string): void {
    this.state = { ...this.state, queryText: text };
    this.onChange(this.state);
  }

  setCoords(coords: Coords | null): void {
    this.state = { ...this.state, coords };
    this.onChange(this.state);
  }

  /** Submit the current query; empty input is a client-side validation error. */
  async submitQuery(): Promise<void> {
    if (!this.state.queryText.trim()) {
      this.state = { ...this.state, error: "enter a question first", loading: false };
      this.onChange(this.state);
      return;
    }
    await this.runSearch();
  }

  /**
   * Flip a facet and re-issue the search once. A no-op until a first
   * response exists, since facets refine something already on screen.
   */
  async toggleFacet(facet: keyof Facets, value?: string | null): Promise<void> {
    if (this.state.lastResponse === null) {
      return;
    }
    const facets: Facets = { ...this.state.activeFacets };
    if (facet === "weekend_only") {
      facets.weekend_only = !facets.weekend_only;
    } else {
      facets.specialty = value ?? null;
    }
    this.state = { ...this.state, activeFacets: facets };
    this.onChange(this.state);
    await this.runSearch();
  }

  private async runSearch(): Promise<void> {
    const requestId = ++this.sequence;
    this.state = { ...this.state, loading: true, error: null };
    this.onChange(this.state);
    const query = effectiveQuery(this.state.queryText, this.state.activeFacets);
    try {
      const response = await this.search(query, this.state.coords);
      if (requestId !== this.sequence) {
        return; // a newer request superseded this one
      }
      this.state = { ...this.state, lastResponse: response, loading: false, error: null };
    } catch (err) {
      if (requestId !== this.sequence) {
        return;
      }
      // keep the previous results on screen; only the banner changes
      const message = err instanceof Error ? err.message : String(err);
      this.state = { ...this.state, loading: false, error: message };
    }
    this.onChange(this.state);
  }
}
