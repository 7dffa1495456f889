import { describe, expect, it } from "vitest";

import { effectiveQuery, hasTemporalPhrase } from "../src/facets.js";

describe("hasTemporalPhrase", () => {
  it("spots weekend and evening wording", () => {
    expect(hasTemporalPhrase("pediatricians open on the weekend")).toBe(true);
    expect(hasTemporalPhrase("open saturday")).toBe(true);
    expect(hasTemporalPhrase("evening clinic")).toBe(true);
    expect(hasTemporalPhrase("pediatricians near me")).toBe(false);
  });
});

describe("effectiveQuery", () => {
  it("appends the weekend phrase only when the raw query lacks one", () => {
    expect(effectiveQuery("pediatricians", { specialty: null, weekend_only: true }))
      .toBe("pediatricians open on the weekend");
    expect(effectiveQuery("pediatricians open on the weekend",
                          { specialty: null, weekend_only: true }))
      .toBe("pediatricians open on the weekend");
  });

  it("leaves the query alone with no facets", () => {
    expect(effectiveQuery("kids doctor", { specialty: null, weekend_only: false }))
      .toBe("kids doctor");
  });

  it("prefixes a specialty facet unless already mentioned", () => {
    expect(effectiveQuery("open on the weekend",
                          { specialty: "Cardiology", weekend_only: false }))
      .toBe("Cardiology open on the weekend");
    expect(effectiveQuery("cardiology doctors",
                          { specialty: "Cardiology", weekend_only: false }))
      .toBe("cardiology doctors");
  });

  it("composes both facets", () => {
    expect(effectiveQuery("doctors", { specialty: "Pediatrics", weekend_only: true }))
      .toBe("Pediatrics doctors open on the weekend");
  });
});
