/**
 * HTML renderers: pure functions from view-model pieces to markup strings.
 *
 * Cell text is exactly the payload string (escaped for HTML only), so what
 * the table shows is byte-for-byte what the service returned.
 */

import type { PreferenceInfo, TraceStage, WinnowPayload } from "./api.js";
import type { ConflictPanel, RelationRow, WorkbenchState } from "./model.js";
import { badges, canSubmitRevision } from "./model.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function cells(row: string[], tag: "td" | "th"): string {
  return row.map((c) => `<${tag}>${escapeHtml(c)}</${tag}>`).join("");
}

export function renderTable(header: string[], rows: string[][]): string {
  if (rows.length === 0) {
    return `<p class="empty-state">no rows</p>`;
  }
  const head = `<tr>${cells(header, "th")}</tr>`;
  const body = rows.map((r) => `<tr>${cells(r, "td")}</tr>`).join("");
  return `<table><thead>${head}</thead><tbody>${body}</tbody></table>`;
}

export function renderRelations(relations: RelationRow[]): string {
  if (relations.length === 0) return `<p class="empty-state">no relations loaded</p>`;
  const items = relations
    .map(
      (r) =>
        `<li data-relation="${escapeHtml(r.name)}">${escapeHtml(r.name)} ` +
        `<small>v${r.version}, ${r.rowCount} rows</small></li>`,
    )
    .join("");
  return `<ul class="relations">${items}</ul>`;
}

export function renderPreferences(prefs: PreferenceInfo[]): string {
  if (prefs.length === 0) return `<p class="empty-state">no preferences defined</p>`;
  const items = prefs
    .map((p) => {
      const tags = badges(p)
        .map((b) => `<span class="badge badge-${b.toLowerCase()}">${b}</span>`)
        .join(" ");
      return (
        `<li data-pref="${escapeHtml(p.name)}"><strong>${escapeHtml(p.name)}</strong> ` +
        `${tags || '<span class="badge badge-none">no order guarantees</span>'}` +
        `<code>${escapeHtml(p.dsl)}</code></li>`
      );
    })
    .join("");
  return `<ul class="preferences">${items}</ul>`;
}

export function renderWinnow(header: string[], payload: WinnowPayload): string {
  const note = payload.reused
    ? `<p class="reuse-note">cache reused${payload.note ? `: ${escapeHtml(payload.note)}` : ""}</p>`
    : "";
  const dominated =
    payload.dominated.length === 0
      ? ""
      : `<details class="dominated"><summary>${payload.dominated.length} dominated ` +
        `tuple(s)</summary><ul>` +
        payload.dominated
          .map(
            (d) =>
              `<li><span class="dominated-row">${escapeHtml(d.row.join(","))}</span>` +
              ` dominated by <span class="dominator">${escapeHtml(d.by.join(","))}</span></li>`,
          )
          .join("") +
        `</ul></details>`;
  return (
    `<h3>winnow ${escapeHtml(payload.pref)} over ${escapeHtml(payload.relation)}</h3>` +
    renderTable(header, payload.rows) +
    note +
    dominated
  );
}

export function renderConflictPanel(panel: ConflictPanel | null): string {
  if (panel === null) return "";
  const rows = Object.entries(panel.levels)
    .map(([level, entry]) => {
      if (entry.compatible) {
        return `<li class="compat-ok">level ${level}: compatible</li>`;
      }
      const w = entry.witness;
      const witness = w
        ? ` — witness: (${escapeHtml(w.preferred.join(","))}) vs (${escapeHtml(
            w.other.join(","),
          )})`
        : "";
      return `<li class="compat-conflict">level ${level}: conflict${witness}</li>`;
    })
    .join("");
  const warning = panel.needsConfirmation
    ? `<p class="confirm-warning">conflicts found between ${escapeHtml(panel.base)} ` +
      `and ${escapeHtml(panel.revising)}; confirm to revise anyway</p>`
    : "";
  return `<div class="conflict-panel"><h3>compatibility</h3><ul>${rows}</ul>${warning}</div>`;
}

export function renderTrace(
  trace: { pref: string; expression: string; stages: TraceStage[] } | null,
): string {
  if (trace === null) return "";
  const rows = trace.stages
    .map((s) => {
      const flags = [
        s.is_wo ? '<span class="badge badge-wo">WO</span>' : "",
        s.new_facts ? "" : '<span class="badge badge-fixpoint">fixpoint</span>',
      ]
        .filter(Boolean)
        .join(" ");
      return `<li>T${s.index}: <code>${escapeHtml(s.dsl)}</code> ${flags}</li>`;
    })
    .join("");
  return (
    `<h3>${escapeHtml(trace.expression.toUpperCase())} stages for ` +
    `${escapeHtml(trace.pref)}</h3><ol class="trace">${rows}</ol>`
  );
}

export function renderDraftStatus(state: WorkbenchState): string {
  const { parsed, error } = state.draftStatus;
  if (error !== null) {
    return `<p class="draft-error">${escapeHtml(error)}</p>`;
  }
  if (!parsed) {
    return `<p class="draft-pending">draft not validated yet</p>`;
  }
  return `<p class="draft-ok">formula parses${
    canSubmitRevision(state) ? "; ready to submit" : ""
  }</p>`;
}

export function renderError(message: string | null): string {
  return message === null ? "" : `<p class="error">${escapeHtml(message)}</p>`;
}
