// Thin typed client over GET /search and GET /health.

import type { Coords, SearchResponse } from "./types.js";

export interface HttpResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<HttpResponse>;

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export function buildSearchUrl(base: string, q: string, coords: Coords | null,
                               k?: number): string {
  const params = new URLSearchParams();
  params.set("q", q);
  if (coords) {
    params.set("lat", String(coords.lat));
    params.set("lon", String(coords.lon));
  }
  if (k !== undefined) {
    params.set("k", String(k));
  }
  return `${base}/search?${params.toString()}`;
}

export async function fetchSearch(
  fetchFn: FetchLike,
  base: string,
  q: string,
  coords: Coords | null,
  k?: number,
): Promise<SearchResponse> {
  let response: HttpResponse;
  try {
    response = await fetchFn(buildSearchUrl(base, q, coords, k));
  } catch (err) {
    throw new ApiError(`search service unreachable: ${String(err)}`, 0);
  }
  const body = (await response.json()) as Record<string, unknown>;
  if (!response.ok) {
    const message = typeof body.error === "string" ? body.error
      : `search failed with status ${response.status}`;
    throw new ApiError(message, response.status);
  }
  return body as unknown as SearchResponse;
}

export async function fetchHealth(fetchFn: FetchLike, base: string): Promise<boolean> {
  try {
    const response = await fetchFn(`${base}/health`);
    return response.ok;
  } catch {
    return false;
  }
}
