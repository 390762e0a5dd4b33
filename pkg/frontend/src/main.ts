// Entry point: poll the session stream, fold it into state, render,
// and post the teacher's choices back.

import { SessionClient } from "./client.js";
import { applyAll, initialState, SessionState } from "./state.js";
import { render } from "./view.js";

const RETRY_MS = 1000;

export async function runTeacher(
  root: HTMLElement,
  client: SessionClient = new SessionClient(),
): Promise<SessionState> {
  let state = initialState();
  let cursor = 0;

  const onChoice = (id: string, choice: number | null) => {
    client.prefer(id, choice).catch((err) => {
      console.error(err);
    });
  };

  render(state, root, onChoice);
  while (!state.done && state.error === null) {
    let batch;
    try {
      batch = await client.poll(cursor);
    } catch (err) {
      // 409 means another tab holds the poll slot; anything else is
      // likely the server restarting. Either way, retry quietly.
      console.warn(err);
      await new Promise((resolve) => setTimeout(resolve, RETRY_MS));
      continue;
    }
    cursor += batch.length;
    state = applyAll(state, batch);
    render(state, root, onChoice);
  }
  return state;
}

const mount = typeof document !== "undefined" && document.getElementById("app");
if (mount) {
  void runTeacher(mount as HTMLElement);
}
