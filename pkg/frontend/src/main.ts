// Application wiring. Server-authoritative: every click goes to the
// service and the whole board re-renders from its response. At most one
// mutation is in flight; further clicks queue behind it.

import { ApiClient, ServiceUnreachableError, type ProbabilityMeta, type ToggleRejection } from "./api.js";
import { buildBoardView, type BoardView, type Cell } from "./board.js";
import { renderGrid, renderRejection } from "./grid.js";
import { renderPanel } from "./panel.js";

const DIMENSIONS = [4, 5, 6, 7];

interface Elements {
  grid: HTMLElement;
  panel: HTMLElement;
  rejection: HTMLElement;
  banner: HTMLElement;
  nSelect: HTMLSelectElement;
  undo: HTMLButtonElement;
  reset: HTMLButtonElement;
}

class App {
  private sessionId = "";
  private view: BoardView | null = null;
  private probability: ProbabilityMeta | null = null;
  private queue: Promise<void> = Promise.resolve();

  constructor(
    private readonly api: ApiClient,
    private readonly el: Elements,
  ) {}

  async start(n: number): Promise<void> {
    await this.guarded(async () => {
      const [board, grid, probability] = await Promise.all([
        this.api.createSession(n),
        this.api.grid(n),
        this.api.probability(n),
      ]);
      this.sessionId = board.session_id;
      this.probability = probability;
      this.view = buildBoardView(board, { ...grid });
      this.gridMeta = grid;
      this.render(null);
    });
  }

  private gridMeta: Awaited<ReturnType<ApiClient["grid"]>> | null = null;

  /** Serialize mutations: one in-flight request, later clicks wait. */
  private enqueue(action: () => Promise<void>): void {
    this.queue = this.queue.then(() => this.guarded(action));
  }

  private async guarded(action: () => Promise<void>): Promise<void> {
    try {
      await action();
      this.el.banner.hidden = true;
    } catch (err) {
      if (err instanceof ServiceUnreachableError) {
        // read-only: keep the last board, mutate nothing locally
        this.el.banner.hidden = false;
        this.el.banner.textContent = "service unreachable; board is read-only";
        return;
      }
      throw err;
    }
  }

  onCellClick(cell: Cell): void {
    this.enqueue(async () => {
      const result = await this.api.toggle(this.sessionId, cell.point);
      if (result.ok) {
        this.view = buildBoardView(result.board, this.gridMeta!);
        this.render(null);
      } else {
        this.render(result.rejection);
      }
    });
  }

  onUndo(): void {
    this.enqueue(async () => {
      const board = await this.api.undo(this.sessionId);
      this.view = buildBoardView(board, this.gridMeta!);
      this.render(null);
    });
  }

  onReset(): void {
    this.enqueue(async () => {
      const board = await this.api.reset(this.sessionId);
      this.view = buildBoardView(board, this.gridMeta!);
      this.render(null);
    });
  }

  private render(rejection: ToggleRejection | null): void {
    if (!this.view) {
      return;
    }
    renderGrid(this.el.grid, this.view, { onCellClick: (c) => this.onCellClick(c) });
    renderPanel(this.el.panel, this.view, this.probability);
    renderRejection(this.el.rejection, rejection, this.view);
  }
}

export function boot(): void {
  const el: Elements = {
    grid: document.getElementById("grid")!,
    panel: document.getElementById("panel")!,
    rejection: document.getElementById("rejection")!,
    banner: document.getElementById("banner")!,
    nSelect: document.getElementById("n-select") as HTMLSelectElement,
    undo: document.getElementById("undo") as HTMLButtonElement,
    reset: document.getElementById("reset") as HTMLButtonElement,
  };
  for (const n of DIMENSIONS) {
    const opt = document.createElement("option");
    opt.value = String(n);
    opt.textContent = `n = ${n}`;
    if (n === 6) {
      opt.selected = true;
    }
    el.nSelect.appendChild(opt);
  }
  const api = new ApiClient("");
  const app = new App(api, el);
  el.nSelect.addEventListener("change", () => void app.start(Number(el.nSelect.value)));
  el.undo.addEventListener("click", () => app.onUndo());
  el.reset.addEventListener("click", () => app.onReset());
  void app.start(6);
}

if (typeof document !== "undefined" && document.getElementById("grid")) {
  boot();
}
