// Scripted end-to-end replay against a live backend: the two left mutations
// of the two-cycle algebra must render a 3-node graph whose node/edge sets
// equal GET /graph, and undo must restore the root view.

import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { SessionApi, fetchTransport } from "../src/api.js";
import { buildView, edgeKeySet, nodeIdSet } from "../src/graphview.js";
import { ExplorerStore } from "../src/store.js";

const PORT = 8473;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;

async function waitForServer(timeoutMs = 30000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${BASE}/sessions/none`);
      if (res.status === 404) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error("backend did not come up");
}

beforeAll(async () => {
  server = spawn("silt", ["serve", "--port", String(PORT)], { stdio: "ignore" });
  await waitForServer();
}, 40000);

afterAll(() => {
  server?.kill();
});

describe("scripted UI replay on the two-cycle algebra", () => {
  it("two mutations render a 3-node graph identical to GET /graph; undo restores the root", async () => {
    const api = new SessionApi(fetchTransport(BASE));
    const store = new ExplorerStore(api);
    await store.loadAlgebra({ preset: "two_cycle" });
    expect(store.state.error).toBeNull();
    const rootLabel = store.state.current!.label;
    const labels = store.state.current!.summands.map((s) => s.label);
    expect(labels.length).toBe(2);

    // mutation 1: left at the first summand, back to the root, mutation 2 at the second
    store.selectSummand(labels[0]);
    await store.mutate("left");
    expect(store.state.error).toBeNull();
    await store.undo();
    expect(store.state.current!.label).toBe(rootLabel);
    store.selectSummand(labels[1]);
    await store.mutate("left");
    expect(store.state.error).toBeNull();

    // rendered view vs server graph
    const serverGraph = await api.graph(store.state.sessionId!, false);
    expect(serverGraph.nodes.length).toBe(3);
    expect(serverGraph.arrows.length).toBe(2);
    const view = buildView(store.state.graph!, null, []);
    expect(nodeIdSet(view)).toEqual(new Set(serverGraph.nodes.map((n) => n.id)));
    expect(edgeKeySet(view)).toEqual(
      new Set(serverGraph.arrows.map((a) => `${a.source}->${a.target}`)),
    );
    expect(store.renderedNodesSubsetOfServer()).toBe(true);

    // undo restores the root view
    await store.undo();
    expect(store.state.current!.label).toBe(rootLabel);
    expect(store.state.graph!.nodes.length).toBe(3); // graph keeps explored nodes

    // the fork matches the printed example: both mutations replace one
    // projective by a two-term cone
    const nonRoot = serverGraph.nodes.filter((n) => n.id !== 0);
    for (const n of nonRoot) {
      expect(n.certificate).toBe("Verified");
      expect(n.labels.some((l) => l.startsWith("X"))).toBe(true);
    }
  }, 60000);
});
