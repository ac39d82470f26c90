/**
 * Workbench controller: the revise-and-resubmit loop against the service.
 *
 * DOM-free so the scripted end-to-end test can drive exactly the code the
 * browser runs. Every transition replaces `state` with payload-derived data;
 * nothing is recomputed client-side.
 */

import { ApiClient, ApiError, AttrDecl } from "./api.js";
import {
  WorkbenchState,
  conflictPanelOf,
  editDraft,
  emptyDraft,
  initialState,
  canSubmitRevision,
} from "./model.js";

export class Workbench {
  state: WorkbenchState = initialState();

  constructor(private api: ApiClient) {}

  private fail(err: unknown): void {
    this.state = {
      ...this.state,
      error: err instanceof Error ? err.message : String(err),
    };
  }

  async refreshCatalog(): Promise<void> {
    try {
      const [session, prefs] = await Promise.all([
        this.api.session(),
        this.api.listPreferences(),
      ]);
      const headers: Record<string, string[]> = { ...this.state.headers };
      for (const rel of session.relations) {
        if (!(rel.name in headers)) {
          const payload = await this.api.getRelation(rel.name);
          headers[rel.name] = payload.schema.map((a) => a.name);
        }
      }
      this.state = {
        ...this.state,
        relations: session.relations.map((r) => ({
          name: r.name,
          version: r.version,
          rowCount: r.rows,
        })),
        preferences: prefs,
        headers,
        error: null,
      };
    } catch (err) {
      this.fail(err);
    }
  }

  async uploadRelation(name: string, schema: AttrDecl[], csv: string): Promise<void> {
    try {
      await this.api.uploadRelation(name, schema, csv);
      await this.refreshCatalog();
    } catch (err) {
      this.fail(err);
    }
  }

  async definePreference(name: string, dsl: string, relation?: string): Promise<void> {
    try {
      await this.api.definePreference(name, dsl, relation);
      await this.refreshCatalog();
    } catch (err) {
      this.fail(err);
    }
  }

  /** render_winnow: fetch and adopt the result table for (pref, relation). */
  async showWinnow(pref: string, relation: string): Promise<void> {
    try {
      const payload = await this.api.winnow(pref, relation);
      this.state = { ...this.state, winnow: payload, error: null };
    } catch (err) {
      this.fail(err);
    }
  }

  /** Edit the revision draft; invalidates the parse verdict on text changes. */
  edit(patch: Parameters<typeof editDraft>[1]): void {
    this.state = editDraft(this.state, patch);
  }

  /** Server-side parse check; the submit button stays inert until it passes. */
  async validateDraft(): Promise<boolean> {
    const result = await this.api.parseDraft(this.state.draft.formulaText);
    this.state = {
      ...this.state,
      draftStatus: { parsed: result.ok, error: result.error },
    };
    return result.ok;
  }

  private revisingName(): string {
    return `${this.state.draft.resultName}_revising`;
  }

  /**
   * Stage the draft: register the revising preference and fetch the 0/1/2
   * compatibility reports against the base, so conflicts (with witnesses)
   * are on screen before the user confirms the revision.
   */
  async previewRevision(): Promise<boolean> {
    if (!canSubmitRevision(this.state)) {
      return false;
    }
    try {
      const d = this.state.draft;
      await this.api.definePreference(this.revisingName(), d.formulaText);
      const entries = await Promise.all(
        [0, 1, 2].map((level) =>
          this.api.compat(d.base, this.revisingName(), level),
        ),
      );
      const levels = Object.fromEntries(
        entries.map((e, i) => [String(i), { compatible: e.compatible, witness: e.witness }]),
      );
      this.state = {
        ...this.state,
        conflicts: conflictPanelOf(d.base, this.revisingName(), levels),
        error: null,
      };
      return true;
    } catch (err) {
      this.fail(err);
      return false;
    }
  }

  /** Apply the staged revision; the new preference appears with its badges. */
  async confirmRevision(): Promise<string | null> {
    if (!canSubmitRevision(this.state)) {
      return null;
    }
    try {
      const d = this.state.draft;
      const payload = await this.api.revise({
        base: d.base,
        revising: this.revisingName(),
        operator: d.operator,
        tc: d.tc,
        base_wins: d.baseWins,
        name: d.resultName,
      });
      await this.refreshCatalog();
      this.state = { ...this.state, draft: emptyDraft(), conflicts: null };
      return payload.name;
    } catch (err) {
      this.fail(err);
      return null;
    }
  }

  async showTrace(pref: string, expression: "e1" | "e2"): Promise<void> {
    try {
      const payload = await this.api.trace(pref, expression);
      this.state = {
        ...this.state,
        trace: {
          pref: payload.pref,
          expression: payload.expression,
          stages: payload.stages,
        },
        error: null,
      };
    } catch (err) {
      if (err instanceof ApiError) {
        this.fail(err);
      } else {
        throw err;
      }
    }
  }
}
