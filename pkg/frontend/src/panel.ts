// Side panel: cap size, dimension, class label, completeness flags, and
// the census / probability snippet for the current k.

import type { ProbabilityMeta } from "./api.js";
import type { BoardView } from "./board.js";

export function renderPanel(
  container: HTMLElement,
  view: BoardView,
  probability: ProbabilityMeta | null,
): void {
  container.textContent = "";
  const add = (label: string, value: string) => {
    const row = document.createElement("div");
    row.className = "panel-row";
    const dt = document.createElement("span");
    dt.className = "panel-label";
    dt.textContent = label;
    const dd = document.createElement("span");
    dd.textContent = value;
    row.append(dt, dd);
    container.appendChild(row);
  };
  add("points", String(view.k));
  add("dimension", view.dimension === null ? "—" : String(view.dimension));
  add("class", view.classLabel ?? "—");
  if (view.k > 0) {
    add("completes span", view.completesSpan ? "yes" : "no");
    add("complete in ambient", view.completeInAmbient ? "yes" : "no");
  }
  if (view.censusCount !== null) {
    add(`caps of size ${view.k}`, view.censusCount.toLocaleString("en-US"));
  }
  const row = probability?.rows.find((r) => r.k === view.k);
  if (row) {
    add("P(no quad)", row.p_no_quad);
    add("P(quad)", row.p_quad);
  }
}
