// Typed client for the cap-builder service. The UI holds no cap math of
// its own; every board fact shown to the user comes from these payloads.

export interface PointDoc {
  point: number;
  binary: string;
  row: number;
  col: number;
  card?: string;
}

export interface ExcludeDoc extends PointDoc {
  multiplicity: number;
  triples: number[][];
}

export interface BoardState {
  session_id: string;
  n: number;
  k: number;
  selected: PointDoc[];
  excludes: ExcludeDoc[];
  dimension: number | null;
  class_label: string | null;
  completes_span: boolean;
  complete_in_ambient: boolean;
  census: { k: number; n: number; count: number | null };
}

export interface ToggleRejection {
  error: string;
  point: number;
  multiplicity: number;
  triples: number[][];
}

export type ToggleResult =
  | { ok: true; board: BoardState }
  | { ok: false; rejection: ToggleRejection };

export interface GridMeta {
  n: number;
  rows: number;
  cols: number;
  cells: PointDoc[];
}

export interface CensusMeta {
  k: number;
  n: number;
  count: number;
  by_dimension: Record<string, number>;
}

export interface ProbabilityRow {
  k: number;
  p_no_quad: string;
  p_quad: string;
  p_no_quad_exact: [number, number];
  p_quad_exact: [number, number];
}

export interface ProbabilityMeta {
  n: number;
  rows: ProbabilityRow[];
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class ServiceUnreachableError extends Error {}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = fetch,
  ) {}

  private async request(method: string, path: string, body?: unknown): Promise<{ status: number; data: unknown }> {
    let resp;
    try {
      resp = await this.fetchFn(this.baseUrl + path, {
        method,
        headers: body === undefined ? undefined : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ServiceUnreachableError(String(err));
    }
    return { status: resp.status, data: await resp.json() };
  }

  private async expectOk<T>(method: string, path: string, body?: unknown): Promise<T> {
    const { status, data } = await this.request(method, path, body);
    if (status !== 200) {
      throw new Error(`${method} ${path} -> ${status}: ${JSON.stringify(data)}`);
    }
    return data as T;
  }

  createSession(n: number): Promise<BoardState> {
    return this.expectOk("POST", "/sessions", { n });
  }

  getBoard(sessionId: string): Promise<BoardState> {
    return this.expectOk("GET", `/sessions/${sessionId}`);
  }

  async toggle(sessionId: string, point: number | string): Promise<ToggleResult> {
    const { status, data } = await this.request("POST", `/sessions/${sessionId}/toggle`, { point });
    if (status === 200) {
      return { ok: true, board: data as BoardState };
    }
    if (status === 409) {
      return { ok: false, rejection: (data as { detail: ToggleRejection }).detail };
    }
    throw new Error(`toggle -> ${status}: ${JSON.stringify(data)}`);
  }

  undo(sessionId: string): Promise<BoardState> {
    return this.expectOk("POST", `/sessions/${sessionId}/undo`);
  }

  reset(sessionId: string): Promise<BoardState> {
    return this.expectOk("POST", `/sessions/${sessionId}/reset`);
  }

  grid(n: number): Promise<GridMeta> {
    return this.expectOk("GET", `/meta/grid?n=${n}`);
  }

  census(n: number, k: number): Promise<CensusMeta> {
    return this.expectOk("GET", `/meta/census?n=${n}&k=${k}`);
  }

  probability(n: number): Promise<ProbabilityMeta> {
    return this.expectOk("GET", `/meta/probability?n=${n}`);
  }
}
