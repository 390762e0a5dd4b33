// Thin HTTP client for the session service: long-poll /records, answer
// with POST /prefer, peek at GET /status.

import { parseNdjson, SessionRecord } from "./protocol.js";

export interface Status {
  records: number;
  done: boolean;
  pending: string | null;
}

export class SessionClient {
  constructor(private readonly base: string = "") {}

  // Raw NDJSON beyond the cursor; blocks server-side until something new
  // arrives. Kept as text so callers can preserve the exact bytes.
  async pollText(cursor: number): Promise<string> {
    const res = await fetch(`${this.base}/records?cursor=${cursor}`);
    if (!res.ok) {
      throw new Error(`records: HTTP ${res.status}`);
    }
    return res.text();
  }

  async poll(cursor: number): Promise<SessionRecord[]> {
    return parseNdjson(await this.pollText(cursor));
  }

  async prefer(id: string, choice: number | null): Promise<void> {
    const res = await fetch(`${this.base}/prefer`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ id, choice }),
    });
    if (!res.ok) {
      throw new Error(`prefer ${id}: HTTP ${res.status} ${await res.text()}`);
    }
  }

  async status(): Promise<Status> {
    const res = await fetch(`${this.base}/status`);
    if (!res.ok) {
      throw new Error(`status: HTTP ${res.status}`);
    }
    return (await res.json()) as Status;
  }
}
