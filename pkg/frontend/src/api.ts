/**
 * Typed client for the prefq HTTP service.
 *
 * All tuple values travel as exact strings ("2002", "3/2", "VW"); the client
 * never parses or reformats them, so whatever the service sent is what the
 * UI displays.
 */

export type SortName = "str" | "rat";

export interface AttrDecl {
  name: string;
  sort: SortName;
}

export interface Properties {
  spo: boolean;
  io: boolean;
  wo: boolean;
}

export interface PreferenceInfo {
  name: string;
  dsl: string;
  properties: Properties;
}

export interface RelationPayload {
  name: string;
  version: number;
  schema: AttrDecl[];
  rows: string[][];
  csv: string;
}

export interface DominatedRow {
  row: string[];
  by: string[];
}

export interface WinnowPayload {
  pref: string;
  relation: string;
  rows: string[][];
  reused: boolean;
  note: string;
  dominated: DominatedRow[];
}

export interface Witness {
  preferred: string[];
  other: string[];
}

export interface CompatEntry {
  compatible: boolean;
  witness: Witness | null;
}

export interface RevisePayload {
  name: string;
  dsl: string;
  tc_applied: boolean;
  operator: string;
  properties: Properties;
  compatibility: Record<string, CompatEntry>;
}

export interface TraceStage {
  index: number;
  dsl: string;
  is_wo: boolean;
  new_facts: boolean;
}

export interface TracePayload {
  pref: string;
  expression: string;
  stages: TraceStage[];
}

export interface SessionSummary {
  relations: { name: string; version: number; rows: number }[];
  preferences: { name: string; dsl: string }[];
  caches: { pref: string; relation: string; version: number }[];
  history: string[];
}

export interface ParseResult {
  ok: boolean;
  error: string | null;
}

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  const body = await response.json();
  if (!response.ok) {
    const detail =
      typeof body === "object" && body !== null && "detail" in body
        ? String((body as { detail: unknown }).detail)
        : response.statusText;
    throw new ApiError(response.status, detail);
  }
  return body as T;
}

export class ApiClient {
  constructor(private base: string) {}

  private post<T>(path: string, payload: unknown): Promise<T> {
    return fetch(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    }).then((r) => unwrap<T>(r));
  }

  private get<T>(path: string): Promise<T> {
    return fetch(this.base + path).then((r) => unwrap<T>(r));
  }

  uploadRelation(name: string, schema: AttrDecl[], csv: string) {
    return this.post<{ name: string; version: number; rows: string[][] }>(
      "/relations",
      { name, schema, csv },
    );
  }

  getRelation(name: string): Promise<RelationPayload> {
    return this.get(`/relations/${encodeURIComponent(name)}`);
  }

  listPreferences(): Promise<PreferenceInfo[]> {
    return this.get("/preferences");
  }

  definePreference(name: string, dsl: string, relation?: string) {
    return this.post<PreferenceInfo>("/preferences", { name, dsl, relation });
  }

  parseDraft(dsl: string, relation?: string): Promise<ParseResult> {
    return this.post("/preferences/parse", { dsl, relation });
  }

  winnow(pref: string, relation: string): Promise<WinnowPayload> {
    return this.post("/winnow", { pref, relation });
  }

  revise(req: {
    base: string;
    revising: string;
    operator: string;
    tc?: boolean | null;
    base_wins?: boolean;
    name?: string;
  }): Promise<RevisePayload> {
    return this.post("/revise", req);
  }

  check(pref: string, property: string): Promise<{ holds: boolean }> {
    return this.post("/check", { pref, property });
  }

  compat(pref: string, base: string, level: number): Promise<CompatEntry> {
    return this.post("/compat", { pref, base, level });
  }

  trace(pref: string, expression: "e1" | "e2"): Promise<TracePayload> {
    return this.post("/trace", { pref, expression });
  }

  extendWo(pref: string, name?: string): Promise<RevisePayload & { stages: TraceStage[] }> {
    return this.post("/extend-wo", { pref, name });
  }

  session(): Promise<SessionSummary> {
    return this.get("/session");
  }
}
