// View state for the explorer. The store mirrors server state: every action
// round-trips to the service and applies only the acknowledged response;
// optimistic updates are deliberately absent.

import { SessionApi } from "./api.js";
import type { Direction, GraphDto, NodePayload, SessionState } from "./types.js";

export interface ViewState {
  sessionId: string | null;
  current: NodePayload | null;
  selectedSummand: string | null;
  compareSelection: number[];
  compareResult: string | null;
  modShift: boolean;
  graph: GraphDto | null;
  busy: boolean;
  error: string | null;
}

export type Listener = (state: ViewState) => void;

export class ExplorerStore {
  private api: SessionApi;
  private listeners: Listener[] = [];
  state: ViewState = {
    sessionId: null,
    current: null,
    selectedSummand: null,
    compareSelection: [],
    compareResult: null,
    modShift: false,
    graph: null,
    busy: false,
    error: null,
  };

  constructor(api: SessionApi) {
    this.api = api;
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  private emit() {
    for (const l of this.listeners) l({ ...this.state });
  }

  private async act<T>(fn: () => Promise<T>): Promise<T | null> {
    if (this.state.busy) return null; // at most one in-flight request
    this.state.busy = true;
    this.state.error = null;
    this.emit();
    try {
      return await fn();
    } catch (err) {
      this.state.error = err instanceof Error ? err.message : String(err);
      return null;
    } finally {
      this.state.busy = false;
      this.emit();
    }
  }

  async loadAlgebra(algebra: unknown): Promise<void> {
    await this.act(async () => {
      const created = await this.api.createSession(algebra);
      this.state.sessionId = created.session_id;
      this.state.current = created.root;
      this.state.selectedSummand = null;
      this.state.compareSelection = [];
      this.state.compareResult = null;
      await this.refreshGraph();
    });
  }

  selectSummand(label: string | null) {
    this.state.selectedSummand = label;
    this.emit();
  }

  async mutate(direction: Direction): Promise<void> {
    const label = this.state.selectedSummand;
    const sid = this.state.sessionId;
    if (!label || !sid) return;
    await this.act(async () => {
      const res = await this.api.mutate(sid, label, direction);
      this.state.current = res.node;
      this.state.selectedSummand = null;
      await this.refreshGraph();
    });
  }

  async undo(): Promise<void> {
    const sid = this.state.sessionId;
    if (!sid) return;
    await this.act(async () => {
      const state: SessionState = await this.api.undo(sid);
      this.state.current = state.current;
      this.state.selectedSummand = null;
      await this.refreshGraph();
    });
  }

  async toggleModShift(): Promise<void> {
    this.state.modShift = !this.state.modShift;
    await this.act(async () => {
      await this.refreshGraph();
    });
  }

  async toggleCompare(nodeId: number): Promise<void> {
    const sel = this.state.compareSelection;
    if (sel.includes(nodeId)) {
      this.state.compareSelection = sel.filter((x) => x !== nodeId);
      this.state.compareResult = null;
      this.emit();
      return;
    }
    this.state.compareSelection = [...sel, nodeId].slice(-2);
    this.state.compareResult = null;
    if (this.state.compareSelection.length === 2 && this.state.sessionId) {
      const [a, b] = this.state.compareSelection;
      const sid = this.state.sessionId;
      await this.act(async () => {
        const res = await this.api.compare(sid, a, b);
        this.state.compareResult = res.relation;
      });
    } else {
      this.emit();
    }
  }

  private async refreshGraph(): Promise<void> {
    if (!this.state.sessionId) return;
    this.state.graph = await this.api.graph(this.state.sessionId, this.state.modShift);
  }

  /** Everything rendered must exist server-side; used as a sanity check. */
  renderedNodesSubsetOfServer(): boolean {
    const g = this.state.graph;
    if (!g) return true;
    const ids = new Set(g.nodes.map((n) => n.id));
    return g.arrows.every((a) => ids.has(a.source) && ids.has(a.target));
  }
}
