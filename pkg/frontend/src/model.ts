/**
 * Workbench view model and its pure transitions.
 *
 * The model never computes preference semantics: every number, row, badge,
 * and witness in it is copied verbatim from a service payload. The revision
 * form stays inert until the draft formula has parsed server-side.
 */

import type {
  CompatEntry,
  PreferenceInfo,
  TraceStage,
  WinnowPayload,
} from "./api.js";

export type OperatorName = "union" | "prioritized" | "pareto";

export interface RelationRow {
  name: string;
  version: number;
  rowCount: number;
}

export interface RevisionDraft {
  base: string;
  formulaText: string;
  operator: OperatorName;
  tc: boolean | null; // null: let the engine decide
  baseWins: boolean;
  resultName: string;
}

export interface DraftStatus {
  parsed: boolean;
  error: string | null;
}

export interface ConflictPanel {
  base: string;
  revising: string;
  levels: Record<string, CompatEntry>;
  /** true when some level reported a conflict; the user must confirm */
  needsConfirmation: boolean;
}

export interface WorkbenchState {
  relations: RelationRow[];
  preferences: PreferenceInfo[];
  headers: Record<string, string[]>; // relation name -> attribute names
  winnow: WinnowPayload | null;
  draft: RevisionDraft;
  draftStatus: DraftStatus;
  conflicts: ConflictPanel | null;
  trace: { pref: string; expression: string; stages: TraceStage[] } | null;
  error: string | null;
}

export function emptyDraft(): RevisionDraft {
  return {
    base: "",
    formulaText: "",
    operator: "union",
    tc: null,
    baseWins: false,
    resultName: "",
  };
}

export function initialState(): WorkbenchState {
  return {
    relations: [],
    preferences: [],
    headers: {},
    winnow: null,
    draft: emptyDraft(),
    draftStatus: { parsed: false, error: null },
    conflicts: null,
    trace: null,
    error: null,
  };
}

/** The revision form may only submit once the draft parses and is complete. */
export function canSubmitRevision(state: WorkbenchState): boolean {
  const d = state.draft;
  return (
    state.draftStatus.parsed &&
    d.base !== "" &&
    d.formulaText.trim() !== "" &&
    d.resultName.trim() !== ""
  );
}

/** Any edit to the draft formula invalidates the previous parse verdict. */
export function editDraft(
  state: WorkbenchState,
  patch: Partial<RevisionDraft>,
): WorkbenchState {
  const textChanged =
    patch.formulaText !== undefined &&
    patch.formulaText !== state.draft.formulaText;
  return {
    ...state,
    draft: { ...state.draft, ...patch },
    draftStatus: textChanged ? { parsed: false, error: null } : state.draftStatus,
    conflicts: textChanged ? null : state.conflicts,
  };
}

export function conflictPanelOf(
  base: string,
  revising: string,
  levels: Record<string, CompatEntry>,
): ConflictPanel {
  const needsConfirmation = Object.values(levels).some((e) => !e.compatible);
  return { base, revising, levels, needsConfirmation };
}

/** Badge string for a preference's order-theoretic properties. */
export function badges(p: PreferenceInfo): string[] {
  const out: string[] = [];
  if (p.properties.spo) out.push("SPO");
  if (p.properties.io) out.push("IO");
  if (p.properties.wo) out.push("WO");
  return out;
}
