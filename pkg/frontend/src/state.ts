// Pure fold of session records into the view model. The stream may
// interleave query/prefer with state/trace in any order; the reducer
// only assumes each prefer answers an earlier query.

import {
  DoneRecord,
  HelloRecord,
  QueryRecord,
  SessionRecord,
  TraceRecord,
} from "./protocol.js";

export interface SessionState {
  hello: HelloRecord | null;
  theory: string | null;
  traces: TraceRecord[];
  pending: QueryRecord | null;
  answers: Record<string, number | null>;
  done: DoneRecord | null;
  error: string | null;
}

export function initialState(): SessionState {
  return {
    hello: null,
    theory: null,
    traces: [],
    pending: null,
    answers: {},
    done: null,
    error: null,
  };
}

export function apply(state: SessionState, record: SessionRecord): SessionState {
  switch (record.kind) {
    case "hello":
      return { ...state, hello: record };
    case "state":
      return { ...state, theory: record.theory };
    case "trace":
      return { ...state, traces: [...state.traces, record] };
    case "query":
      if (record.id in state.answers) {
        return state; // already answered (e.g. replayed stream)
      }
      return { ...state, pending: record };
    case "prefer": {
      const answers = { ...state.answers, [record.id]: record.choice };
      const pending =
        state.pending && state.pending.id === record.id ? null : state.pending;
      return { ...state, answers, pending };
    }
    case "done":
      return { ...state, done: record, pending: null };
    case "error":
      return { ...state, error: record.message, pending: null };
  }
}

export function applyAll(
  state: SessionState,
  records: SessionRecord[],
): SessionState {
  return records.reduce(apply, state);
}
