// BoardView: the pure view model the grid renders from. Built entirely
// out of service payloads (board state + grid metadata); the client never
// recomputes excludes, dimensions, or class labels locally.

import type { BoardState, ExcludeDoc, GridMeta, PointDoc } from "./api.js";

export type CellState =
  | { kind: "empty" }
  | { kind: "selected" }
  | { kind: "excluded"; multiplicity: number; triples: number[][] };

export interface Cell {
  point: number;
  binary: string;
  row: number;
  col: number;
  card?: string;
  state: CellState;
}

export interface BoardView {
  n: number;
  rows: number;
  cols: number;
  cells: Cell[];
  byPoint: Map<number, Cell>;
  classLabel: string | null;
  dimension: number | null;
  k: number;
  completesSpan: boolean;
  completeInAmbient: boolean;
  censusCount: number | null;
}

export function buildBoardView(board: BoardState, grid: GridMeta): BoardView {
  if (grid.n !== board.n) {
    throw new Error(`grid is for n=${grid.n}, board for n=${board.n}`);
  }
  const selected = new Set(board.selected.map((p) => p.point));
  const excluded = new Map<number, ExcludeDoc>(board.excludes.map((e) => [e.point, e]));
  const cells: Cell[] = grid.cells.map((doc: PointDoc) => {
    let state: CellState = { kind: "empty" };
    if (selected.has(doc.point)) {
      state = { kind: "selected" };
    } else {
      const ex = excluded.get(doc.point);
      if (ex) {
        state = { kind: "excluded", multiplicity: ex.multiplicity, triples: ex.triples };
      }
    }
    return { ...doc, state };
  });
  if (cells.length !== 1 << board.n) {
    throw new Error(`expected ${1 << board.n} cells, got ${cells.length}`);
  }
  return {
    n: board.n,
    rows: grid.rows,
    cols: grid.cols,
    cells,
    byPoint: new Map(cells.map((c) => [c.point, c])),
    classLabel: board.class_label,
    dimension: board.dimension,
    k: board.k,
    completesSpan: board.completes_span,
    completeInAmbient: board.complete_in_ambient,
    censusCount: board.census.count,
  };
}

export function cellAt(view: BoardView, row: number, col: number): Cell {
  const cell = view.cells.find((c) => c.row === row && c.col === col);
  if (!cell) {
    throw new Error(`no cell at (${row}, ${col})`);
  }
  return cell;
}

/** Points to highlight when hovering an excluded cell: its witness triples. */
export function witnessPoints(cell: Cell): number[][] {
  if (cell.state.kind !== "excluded") {
    return [];
  }
  return cell.state.triples;
}
