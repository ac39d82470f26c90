/** Browser bootstrap: wires the workbench controller to the page. */

import { ApiClient } from "./api.js";
import { Workbench } from "./app.js";
import { canSubmitRevision } from "./model.js";
import {
  renderConflictPanel,
  renderDraftStatus,
  renderError,
  renderPreferences,
  renderRelations,
  renderTrace,
  renderWinnow,
} from "./render.js";

const api = new ApiClient(
  (window as unknown as { PREFQ_BASE?: string }).PREFQ_BASE ?? "",
);
const bench = new Workbench(api);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

function paint(): void {
  const s = bench.state;
  el("relations").innerHTML = renderRelations(s.relations);
  el("preferences").innerHTML = renderPreferences(s.preferences);
  el("result").innerHTML = s.winnow
    ? renderWinnow(s.headers[s.winnow.relation] ?? [], s.winnow)
    : '<p class="empty-state">run a winnow to see results</p>';
  el("draft-status").innerHTML = renderDraftStatus(s);
  el("conflicts").innerHTML = renderConflictPanel(s.conflicts);
  el("trace").innerHTML = renderTrace(s.trace);
  el("errors").innerHTML = renderError(s.error);
  (el("revise-preview") as HTMLButtonElement).disabled = !canSubmitRevision(s);
  (el("revise-confirm") as HTMLButtonElement).disabled =
    !canSubmitRevision(s) || s.conflicts === null;
}

async function act(run: () => Promise<unknown>): Promise<void> {
  await run();
  paint();
}

function value(id: string): string {
  return (el<HTMLInputElement>(id)).value.trim();
}

function bind(): void {
  el("winnow-run").addEventListener("click", () =>
    act(() => bench.showWinnow(value("winnow-pref"), value("winnow-relation"))),
  );
  el("pref-define").addEventListener("click", () =>
    act(() => bench.definePreference(value("pref-name"), value("pref-dsl"))),
  );
  for (const [id, key] of [
    ["draft-base", "base"],
    ["draft-formula", "formulaText"],
    ["draft-operator", "operator"],
    ["draft-name", "resultName"],
  ] as const) {
    el(id).addEventListener("input", () => {
      bench.edit({ [key]: value(id) } as never);
      paint();
    });
  }
  el("draft-validate").addEventListener("click", () =>
    act(() => bench.validateDraft()),
  );
  el("revise-preview").addEventListener("click", () =>
    act(() => bench.previewRevision()),
  );
  el("revise-confirm").addEventListener("click", () =>
    act(async () => {
      const name = await bench.confirmRevision();
      if (name !== null && bench.state.winnow !== null) {
        await bench.showWinnow(name, bench.state.winnow.relation);
      }
    }),
  );
  el("trace-run").addEventListener("click", () =>
    act(() => bench.showTrace(value("trace-pref"), value("trace-expr") as "e1" | "e2")),
  );
}

bind();
void act(() => bench.refreshCatalog());
