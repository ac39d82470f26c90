/**
 * Scripted end-to-end session against a real service process: the full
 * inspect → revise → resubmit loop on the car example, driving exactly the
 * controller + renderer code the browser runs.
 */

import { spawn, ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { Workbench } from "../src/app.js";
import { renderWinnow } from "../src/render.js";

const PORT = 8650 + (process.pid % 200);
const BASE = `http://127.0.0.1:${PORT}`;

const CAR_CSV = "make,year\nVW,2002\nVW,1997\nKia,1997\n";
const C1 = "x.make = y.make AND x.year > y.year";
const C2 = "x.make = 'VW' AND y.make != 'VW' AND x.year = y.year";

let server: ChildProcess;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const r = await fetch(`${BASE}/session`);
      if (r.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "prefq.cli", "serve", "--port", String(PORT)],
    { cwd: "..", stdio: "ignore" },
  );
  await waitForServer();
}, 30000);

afterAll(() => {
  server.kill();
});

function cellTexts(html: string): string[] {
  return [...html.matchAll(/<td>([^<]*)<\/td>/g)].map((m) => m[1]);
}

describe("revision loop end to end", () => {
  const api = new ApiClient(BASE);
  const bench = new Workbench(api);

  it("loads the car relation and sees it in the catalog", async () => {
    await bench.uploadRelation(
      "car",
      [
        { name: "make", sort: "str" },
        { name: "year", sort: "rat" },
      ],
      CAR_CSV,
    );
    expect(bench.state.error).toBeNull();
    expect(bench.state.relations).toEqual([
      { name: "car", version: 1, rowCount: 3 },
    ]);
    expect(bench.state.headers.car).toEqual(["make", "year"]);
  });

  it("winnows under c1 and displays both survivors", async () => {
    await bench.definePreference("c1", C1);
    const c1 = bench.state.preferences.find((p) => p.name === "c1");
    expect(c1?.properties.spo).toBe(true);

    await bench.showWinnow("c1", "car");
    expect(bench.state.winnow?.rows).toEqual([
      ["VW", "2002"],
      ["Kia", "1997"],
    ]);
    expect(bench.state.winnow?.dominated).toEqual([
      { row: ["VW", "1997"], by: ["VW", "2002"] },
    ]);
  });

  it("keeps the revision form inert until the draft parses", async () => {
    bench.edit({ base: "c1", operator: "union", resultName: "cstar" });
    bench.edit({ formulaText: "x.make > y.make" });
    expect(await bench.validateDraft()).toBe(false);
    expect(bench.state.draftStatus.error).toContain("order comparator");
    expect(await bench.previewRevision()).toBe(false);

    bench.edit({ formulaText: C2 });
    expect(await bench.validateDraft()).toBe(true);
  });

  it("previews compatibility before confirming", async () => {
    expect(await bench.previewRevision()).toBe(true);
    const panel = bench.state.conflicts;
    expect(panel).not.toBeNull();
    expect(panel?.needsConfirmation).toBe(false);
    expect(panel?.levels["0"].compatible).toBe(true);
    expect(panel?.levels["1"].compatible).toBe(true);
    expect(panel?.levels["2"].compatible).toBe(true);
  });

  it("applies the revision and re-winnows to the single best tuple", async () => {
    const name = await bench.confirmRevision();
    expect(name).toBe("cstar");
    const cstar = bench.state.preferences.find((p) => p.name === "cstar");
    expect(cstar?.properties.spo).toBe(true);

    await bench.showWinnow("cstar", "car");
    expect(bench.state.winnow?.rows).toEqual([["VW", "2002"]]);
    expect(bench.state.winnow?.reused).toBe(true); // containment-law reuse
  });

  it("renders rows byte-equal to an independent service fetch", async () => {
    const direct = await fetch(`${BASE}/winnow`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ pref: "cstar", relation: "car" }),
    }).then((r) => r.json());
    const html = renderWinnow(bench.state.headers.car, bench.state.winnow!);
    expect(cellTexts(html)).toEqual(direct.rows.flat());
    expect(direct.rows).toEqual([["VW", "2002"]]);
  });

  it("shows a stage trace for a weak-order extension", async () => {
    await fetch(`${BASE}/relations`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        name: "vals",
        schema: [{ name: "v", sort: "rat" }],
        csv: "v\n1\n2\n",
      }),
    });
    await bench.definePreference(
      "hole",
      "x.v > y.v AND x.v != 0 AND y.v != 0",
      "vals",
    );
    expect(bench.state.error).toBeNull();
    await bench.showTrace("hole", "e2");
    expect(bench.state.trace?.stages.at(-1)?.is_wo).toBe(true);
  });
});
