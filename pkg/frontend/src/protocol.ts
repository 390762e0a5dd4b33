// Record types for the NDJSON session stream served by `oneshot serve`.
// One JSON object per line; `kind` discriminates.

export interface LoopSettings {
  iterations: number;
  advice_k: number;
  use_distance: boolean;
  use_advice: boolean;
  seed: number;
}

export interface HelloRecord {
  kind: "hello";
  protocol: number;
  concept: string;
  params: Record<string, number>;
  facts: string[];
  config: LoopSettings;
}

export interface StateRecord {
  kind: "state";
  iteration: number;
  theory: string;
}

export interface Candidate {
  literal: string;
  ground: string;
  gloss: string;
}

export interface QueryRecord {
  kind: "query";
  id: string;
  iteration: number;
  candidates: Candidate[];
}

export interface PreferRecord {
  kind: "prefer";
  id: string;
  choice: number | null;
}

export interface TraceRecord {
  kind: "trace";
  iteration: number;
  nll: number;
  distance: number | null;
  score: number;
  accepted: boolean;
  query: string | null;
  choice: number | null;
}

export interface DoneRecord {
  kind: "done";
  theory: string;
  covered: boolean;
  queries: number;
  iterations: number;
  distance?: number;
  sentinel?: boolean;
}

export interface ErrorRecord {
  kind: "error";
  message: string;
}

export type SessionRecord =
  | HelloRecord
  | StateRecord
  | QueryRecord
  | PreferRecord
  | TraceRecord
  | DoneRecord
  | ErrorRecord;

const KINDS = new Set([
  "hello",
  "state",
  "query",
  "prefer",
  "trace",
  "done",
  "error",
]);

export function parseRecord(line: string): SessionRecord {
  const obj = JSON.parse(line) as { kind?: unknown };
  if (typeof obj.kind !== "string" || !KINDS.has(obj.kind)) {
    throw new Error(`unknown record kind: ${JSON.stringify(obj.kind)}`);
  }
  return obj as SessionRecord;
}

export function parseNdjson(text: string): SessionRecord[] {
  return text
    .split("\n")
    .filter((line) => line.trim().length > 0)
    .map(parseRecord);
}
