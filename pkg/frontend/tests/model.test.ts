import { describe, expect, it } from "vitest";

import type { PreferenceInfo } from "../src/api.js";
import {
  badges,
  canSubmitRevision,
  conflictPanelOf,
  editDraft,
  initialState,
} from "../src/model.js";

function parsedDraftState() {
  let state = initialState();
  state = editDraft(state, {
    base: "c1",
    formulaText: "x.year > y.year",
    resultName: "c1b",
  });
  return { ...state, draftStatus: { parsed: true, error: null } };
}

describe("revision form gating", () => {
  it("is inert before the draft parses server-side", () => {
    let state = initialState();
    state = editDraft(state, {
      base: "c1",
      formulaText: "x.year > y.year",
      resultName: "c1b",
    });
    expect(canSubmitRevision(state)).toBe(false);
  });

  it("submits once parsed and complete", () => {
    expect(canSubmitRevision(parsedDraftState())).toBe(true);
  });

  it("requires base and result name even when parsed", () => {
    const state = parsedDraftState();
    expect(canSubmitRevision({ ...state, draft: { ...state.draft, base: "" } })).toBe(false);
    expect(
      canSubmitRevision({ ...state, draft: { ...state.draft, resultName: " " } }),
    ).toBe(false);
  });

  it("invalidates the parse verdict when the formula text changes", () => {
    const state = parsedDraftState();
    const edited = editDraft(state, { formulaText: "x.year >= y.year" });
    expect(edited.draftStatus.parsed).toBe(false);
    expect(canSubmitRevision(edited)).toBe(false);
  });

  it("keeps the verdict for non-formula edits", () => {
    const state = parsedDraftState();
    const edited = editDraft(state, { operator: "pareto" });
    expect(edited.draftStatus.parsed).toBe(true);
  });
});

describe("conflict panel", () => {
  it("requires confirmation only when some level conflicts", () => {
    const clean = conflictPanelOf("c1", "c2", {
      "0": { compatible: true, witness: null },
      "1": { compatible: true, witness: null },
    });
    expect(clean.needsConfirmation).toBe(false);
    const dirty = conflictPanelOf("c1", "c2", {
      "0": {
        compatible: false,
        witness: { preferred: ["a"], other: ["b"] },
      },
    });
    expect(dirty.needsConfirmation).toBe(true);
  });
});

describe("badges", () => {
  it("mirror the service property report exactly", () => {
    const p: PreferenceInfo = {
      name: "c3",
      dsl: "…",
      properties: { spo: true, io: true, wo: false },
    };
    expect(badges(p)).toEqual(["SPO", "IO"]);
    expect(
      badges({ ...p, properties: { spo: false, io: false, wo: false } }),
    ).toEqual([]);
  });
});
