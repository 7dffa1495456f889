// DOM wiring for the search page. All logic lives in the controller and the
// view-model builders; this file only moves values between them and the DOM.

import { fetchHealth, fetchSearch } from "./api.js";
import { SearchController } from "./controller.js";
import type { Coords, UiState } from "./types.js";
import { chipViewModels, rowViewModels, summaryLine } from "./view.js";

const API_BASE = "";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function readCoords(): Coords | null {
  const lat = el<HTMLInputElement>("lat-input").value.trim();
  const lon = el<HTMLInputElement>("lon-input").value.trim();
  if (!lat || !lon) {
    return null;
  }
  const parsed = { lat: Number(lat), lon: Number(lon) };
  if (Number.isNaN(parsed.lat) || Number.isNaN(parsed.lon)) {
    return null;
  }
  return parsed;
}

function render(state: UiState): void {
  el<HTMLDivElement>("loading").hidden = !state.loading;
  const banner = el<HTMLDivElement>("error-banner");
  banner.hidden = state.error === null;
  banner.textContent = state.error ?? "";

  const chips = el<HTMLDivElement>("chips");
  chips.replaceChildren();
  for (const chip of chipViewModels(state.lastResponse)) {
    const span = document.createElement("span");
    span.className = "chip";
    span.textContent = `${chip.slot}: ${chip.value}`;
    chips.appendChild(span);
  }

  el<HTMLDivElement>("summary").textContent = summaryLine(state.lastResponse);

  const list = el<HTMLUListElement>("results");
  list.replaceChildren();
  for (const row of rowViewModels(state.lastResponse)) {
    const item = document.createElement("li");
    item.className = "result";
    const title = document.createElement("div");
    title.className = "result-name";
    title.textContent = row.name;
    const meta = document.createElement("div");
    meta.className = "result-meta";
    const distance = row.distanceText ? ` · ${row.distanceText}` : "";
    meta.textContent = `${row.kind}${row.city ? ` · ${row.city}` : ""}${distance}`;
    const badge = document.createElement("span");
    badge.className = `badge badge-${row.sourceBadge}`;
    badge.textContent = row.sourceBadge;
    item.append(title, meta, badge);
    list.appendChild(item);
  }

  el<HTMLInputElement>("facet-weekend").checked = state.activeFacets.weekend_only;
}

function main(): void {
  const controller = new SearchController(
    (q, coords) => fetchSearch((url) => fetch(url), API_BASE, q, coords),
    render,
  );

  el<HTMLFormElement>("search-form").addEventListener("submit", (event) => {
    event.preventDefault();
    controller.setQueryText(el<HTMLInputElement>("query-input").value);
    controller.setCoords(readCoords());
    void controller.submitQuery();
  });

  el<HTMLInputElement>("facet-weekend").addEventListener("change", () => {
    void controller.toggleFacet("weekend_only");
  });

  el<HTMLSelectElement>("facet-specialty").addEventListener("change", (event) => {
    const value = (event.target as HTMLSelectElement).value || null;
    void controller.toggleFacet("specialty", value);
  });

  // Browser geolocation is an optional convenience; manual entry is the
  // supported path.
  const locate = el<HTMLButtonElement>("locate-button");
  if (navigator.geolocation) {
    locate.addEventListener("click", () => {
      navigator.geolocation.getCurrentPosition((position) => {
        el<HTMLInputElement>("lat-input").value = position.coords.latitude.toFixed(5);
        el<HTMLInputElement>("lon-input").value = position.coords.longitude.toFixed(5);
      });
    });
  } else {
    locate.hidden = true;
  }

  void fetchHealth((url) => fetch(url), API_BASE).then((healthy) => {
    el<HTMLDivElement>("health").textContent = healthy ? "" : "search service offline";
  });
}

document.addEventListener("DOMContentLoaded", main);
