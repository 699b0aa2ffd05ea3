// DOM rendering of the board grid. Selected cells get a diamond marker,
// excluded cells show their multiplicity, hovering an excluded cell
// highlights its witness triples.

import type { BoardView, Cell } from "./board.js";
import { witnessPoints } from "./board.js";

export interface GridCallbacks {
  onCellClick(cell: Cell): void;
}

export function renderGrid(container: HTMLElement, view: BoardView, callbacks: GridCallbacks): void {
  container.textContent = "";
  container.classList.add("grid");
  container.style.gridTemplateColumns = `repeat(${view.cols}, var(--cell))`;
  const byPoint = new Map<number, HTMLElement>();
  const ordered = [...view.cells].sort((a, b) => a.row - b.row || a.col - b.col);
  for (const cell of ordered) {
    const el = document.createElement("button");
    el.className = `cell ${cell.state.kind}`;
    el.dataset.point = String(cell.point);
    el.title = cell.card ? `${cell.card} (${cell.binary})` : cell.binary;
    if (cell.state.kind === "selected") {
      el.textContent = "◆";
    } else if (cell.state.kind === "excluded") {
      el.textContent = String(cell.state.multiplicity);
    }
    el.addEventListener("click", () => callbacks.onCellClick(cell));
    el.addEventListener("mouseenter", () => highlightWitnesses(byPoint, cell, true));
    el.addEventListener("mouseleave", () => highlightWitnesses(byPoint, cell, false));
    byPoint.set(cell.point, el);
    container.appendChild(el);
  }
}

function highlightWitnesses(byPoint: Map<number, HTMLElement>, cell: Cell, on: boolean): void {
  for (const triple of witnessPoints(cell)) {
    for (const point of triple) {
      byPoint.get(point)?.classList.toggle("witness", on);
    }
  }
}

/** Inline rejection banner for a refused toggle, witness triples included. */
export function renderRejection(
  container: HTMLElement,
  rejection: { point: number; multiplicity: number; triples: number[][] } | null,
  view: BoardView,
): void {
  container.textContent = "";
  if (!rejection) {
    return;
  }
  const cell = view.byPoint.get(rejection.point);
  const name = cell?.card ?? cell?.binary ?? String(rejection.point);
  const head = document.createElement("p");
  head.textContent = `${name} is excluded (multiplicity ${rejection.multiplicity}) by:`;
  container.appendChild(head);
  const list = document.createElement("ul");
  for (const triple of rejection.triples) {
    const item = document.createElement("li");
    item.textContent = triple
      .map((p) => view.byPoint.get(p)?.card ?? view.byPoint.get(p)?.binary ?? String(p))
      .join(" + ");
    list.appendChild(item);
  }
  container.appendChild(list);
}
