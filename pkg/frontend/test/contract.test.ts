// Contract tests against a recorded service transcript. The replay
// transport serves each recorded response for the matching request, so
// these tests pin the client's behavior to real server payloads without a
// live backend.

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import {
  ApiClient,
  ServiceUnreachableError,
  type BoardState,
  type FetchLike,
  type GridMeta,
} from "../src/api.js";
import { buildBoardView, cellAt, witnessPoints } from "../src/board.js";

interface Entry {
  request: { method: string; path: string; body?: unknown };
  response: { status: number; json: unknown };
}

const transcript: Entry[] = JSON.parse(
  readFileSync(new URL("../fixtures/transcript.json", import.meta.url), "utf8"),
);

/** Replays recorded responses; request order within a (method, path, body)
 *  key follows the recording. */
function replayFetch(entries: Entry[]): FetchLike {
  const remaining = [...entries];
  return async (url, init) => {
    const method = init?.method ?? "GET";
    const body = init?.body === undefined ? undefined : JSON.parse(init.body);
    const idx = remaining.findIndex(
      (e) =>
        e.request.method === method &&
        e.request.path === url &&
        JSON.stringify(e.request.body) === JSON.stringify(body),
    );
    if (idx < 0) {
      throw new Error(`no recorded response for ${method} ${url} ${init?.body ?? ""}`);
    }
    const [entry] = remaining.splice(idx, 1);
    return { status: entry!.response.status, json: async () => entry!.response.json };
  };
}

function client(): ApiClient {
  return new ApiClient("", replayFetch(transcript));
}

function lastBoard(sessionPrefix: string): BoardState {
  const entry = [...transcript]
    .reverse()
    .find(
      (e) =>
        e.request.path.startsWith(`/sessions/${sessionPrefix}`) &&
        e.response.status === 200,
    );
  return entry!.response.json as BoardState;
}

function gridFor(n: number): GridMeta {
  const entry = transcript.find((e) => e.request.path === `/meta/grid?n=${n}`);
  return entry!.response.json as GridMeta;
}

describe("six-point configuration in n=4", () => {
  it("builds to ten multiplicity-2 cells", async () => {
    const api = client();
    let board = await api.createSession(4);
    for (const point of [0, 1, 2, 4, 8, 15]) {
      const result = await api.toggle(board.session_id, point);
      expect(result.ok).toBe(true);
      if (result.ok) {
        board = result.board;
      }
    }
    const view = buildBoardView(board, gridFor(4));
    const excluded = view.cells.filter((c) => c.state.kind === "excluded");
    expect(excluded).toHaveLength(10);
    for (const cell of excluded) {
      expect(cell.state).toMatchObject({ multiplicity: 2 });
    }
    // 6 selected + 10 excluded fills all 16 cells
    expect(view.cells.filter((c) => c.state.kind === "selected")).toHaveLength(6);
    expect(view.cells.filter((c) => c.state.kind === "empty")).toHaveLength(0);
  });

  it("rejects a click on an excluded cell with 2 disjoint witness triples", async () => {
    const api = client();
    const board = await api.createSession(4);
    for (const point of [0, 1, 2, 4, 8, 15]) {
      await api.toggle(board.session_id, point);
    }
    const result = await api.toggle(board.session_id, 3);
    expect(result.ok).toBe(false);
    if (result.ok) {
      return;
    }
    expect(result.rejection.error).toBe("point_excluded");
    expect(result.rejection.multiplicity).toBe(2);
    expect(result.rejection.triples).toHaveLength(2);
    const [a, b] = result.rejection.triples;
    expect(new Set([...a!, ...b!]).size).toBe(6); // disjoint
    for (const triple of result.rejection.triples) {
      expect(triple.reduce((x, y) => x ^ y, 0)).toBe(3);
    }
  });

  it("leaves the board unchanged after the rejection", () => {
    const board = lastBoard("session-1");
    expect(board.k).toBe(6);
    expect(board.selected.map((p) => p.point)).toEqual([0, 1, 2, 4, 8, 15]);
  });

  it("shows the witness triples on the excluded cell itself", () => {
    const view = buildBoardView(lastBoard("session-1"), gridFor(4));
    const cell = view.byPoint.get(3)!;
    const triples = witnessPoints(cell);
    expect(triples).toHaveLength(2);
  });
});

describe("grid placement", () => {
  it("renders point 110001 at row 4, col 5 in n=6", async () => {
    const api = client();
    const board = await api.createSession(6);
    const result = await api.toggle(board.session_id, "110001");
    expect(result.ok).toBe(true);
    if (!result.ok) {
      return;
    }
    const view = buildBoardView(result.board, gridFor(6));
    const cell = cellAt(view, 4, 5);
    expect(cell.binary).toBe("110001");
    expect(cell.state.kind).toBe("selected");
  });

  it("grid metadata covers all 2^n cells exactly once", () => {
    for (const n of [4, 6]) {
      const grid = gridFor(n);
      expect(grid.rows * grid.cols).toBe(1 << n);
      expect(new Set(grid.cells.map((c) => c.point)).size).toBe(1 << n);
    }
  });
});

describe("panels", () => {
  it("class label and census for the six-point board", () => {
    const board = lastBoard("session-1");
    expect(board.class_label).toBe("ODD5(k=6,dim=4)");
    expect(board.completes_span).toBe(true);
    expect(board.complete_in_ambient).toBe(true);
  });

  it("census metadata matches the recorded exact count", async () => {
    const census = await client().census(6, 6);
    expect(census.count).toBe(57163008);
    expect(census.by_dimension).toEqual({ "4": 1166592, "5": 55996416 });
  });

  it("probability strings come through verbatim", async () => {
    const prob = await client().probability(6);
    const byK = new Map(prob.rows.map((r) => [r.k, r]));
    expect(byK.get(4)!.p_no_quad).toBe("0.9836065574");
    expect(byK.get(9)!.p_quad).toBe("0.9638536415");
    expect(byK.get(10)!.p_no_quad).toBe("0");
  });
});

describe("transport failures", () => {
  it("a network error surfaces as ServiceUnreachableError, no local mutation", async () => {
    const api = new ApiClient("", async () => {
      throw new Error("connection refused");
    });
    await expect(api.createSession(6)).rejects.toBeInstanceOf(ServiceUnreachableError);
  });
});
