// DOM rendering. Everything goes through textContent, so record fields
// are never interpreted as markup.

import { SessionState } from "./state.js";

export type ChoiceHandler = (id: string, choice: number | null) => void;

function el(tag: string, cls: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = cls;
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function renderHeader(state: SessionState, root: HTMLElement): void {
  const hello = state.hello;
  if (!hello) {
    root.appendChild(el("p", "waiting", "waiting for the session..."));
    return;
  }
  const params = Object.entries(hello.params)
    .map(([k, v]) => `${k}=${v}`)
    .join(", ");
  root.appendChild(el("h1", "concept", hello.concept));
  root.appendChild(el("p", "params", params));
  const facts = el("ul", "facts");
  for (const fact of hello.facts) {
    facts.appendChild(el("li", "fact", fact));
  }
  root.appendChild(facts);
}

function renderTrace(state: SessionState, root: HTMLElement): void {
  if (state.traces.length === 0) {
    return;
  }
  const list = el("ol", "trace");
  for (const tr of state.traces) {
    const dist = tr.distance === null ? "-" : tr.distance.toFixed(4);
    const mark = tr.accepted ? "accepted" : "kept previous";
    list.appendChild(
      el(
        "li",
        tr.accepted ? "step accepted" : "step",
        `iter ${tr.iteration}: nll=${tr.nll.toFixed(4)} dist=${dist} ` +
          `score=${tr.score.toFixed(4)} (${mark})`,
      ),
    );
  }
  root.appendChild(list);
}

function renderQuery(
  state: SessionState,
  root: HTMLElement,
  onChoice: ChoiceHandler,
): void {
  const query = state.pending;
  if (!query) {
    return;
  }
  const panel = el("div", "query");
  panel.appendChild(
    el("h2", "query-title", `which constraint should hold? (${query.id})`),
  );
  query.candidates.forEach((cand, rank) => {
    const button = el("button", "candidate", cand.literal) as HTMLButtonElement;
    button.dataset.rank = String(rank);
    button.addEventListener("click", () => onChoice(query.id, rank));
    const row = el("div", "candidate-row");
    row.appendChild(button);
    row.appendChild(el("span", "gloss", cand.gloss));
    panel.appendChild(row);
  });
  const decline = el("button", "decline", "none of these") as HTMLButtonElement;
  decline.addEventListener("click", () => onChoice(query.id, null));
  panel.appendChild(decline);
  root.appendChild(panel);
}

function renderOutcome(state: SessionState, root: HTMLElement): void {
  if (state.error !== null) {
    root.appendChild(el("p", "error", `session failed: ${state.error}`));
    return;
  }
  const theory = state.done ? state.done.theory : state.theory;
  if (theory) {
    const title = state.done ? "final theory" : "current theory";
    root.appendChild(el("h2", "theory-title", title));
    root.appendChild(el("pre", "theory", theory));
  }
  if (state.done) {
    const d = state.done;
    const dist =
      d.distance === undefined
        ? ""
        : d.sentinel
          ? ` distance=sentinel(${d.distance})`
          : ` distance=${d.distance.toFixed(4)}`;
    root.appendChild(
      el(
        "p",
        "summary",
        `covered=${d.covered} queries=${d.queries} iterations=${d.iterations}${dist}`,
      ),
    );
  }
}

export function render(
  state: SessionState,
  root: HTMLElement,
  onChoice: ChoiceHandler,
): void {
  root.replaceChildren();
  renderHeader(state, root);
  renderTrace(state, root);
  renderQuery(state, root, onChoice);
  renderOutcome(state, root);
}
