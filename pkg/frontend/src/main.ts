// DOM wiring: algebra picker, summand chips, mutate buttons, graph panel,
// compare readout, undo and export. All state flows through ExplorerStore.

import { SessionApi, fetchTransport } from "./api.js";
import { EXAMPLES, parseAlgebraInput } from "./examples.js";
import { toDot, toJson } from "./export.js";
import { buildView, renderSvg } from "./graphview.js";
import { ExplorerStore, ViewState } from "./store.js";

function el<K extends keyof HTMLElementTagNameMap>(tag: K, attrs: Record<string, string> = {}, text = "") {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text) node.textContent = text;
  return node;
}

export function boot(root: HTMLElement, baseUrl: string) {
  const api = new SessionApi(fetchTransport(baseUrl));
  const store = new ExplorerStore(api);

  const picker = el("select");
  EXAMPLES.forEach((ex, i) => picker.appendChild(el("option", { value: String(i) }, ex.name)));
  const loadBtn = el("button", {}, "Load");
  const pasteArea = el("textarea", { rows: "3", placeholder: "…or paste an algebra presentation JSON" });
  const loadPasted = el("button", {}, "Load pasted JSON");
  const toolbar = el("div", { class: "toolbar" });
  const leftBtn = el("button", { disabled: "true" }, "Mutate left");
  const rightBtn = el("button", { disabled: "true" }, "Mutate right");
  const undoBtn = el("button", {}, "Undo");
  const modShift = el("button", {}, "mod [1]: off");
  const exportDot = el("button", {}, "Export DOT");
  const exportJson = el("button", {}, "Export JSON");
  const status = el("div", { class: "status" });
  const chips = el("div", { class: "chips" });
  const comparePanel = el("div", { class: "compare" });
  const graphPanel = el("div", { class: "graph" });

  toolbar.append(leftBtn, rightBtn, undoBtn, modShift, exportDot, exportJson);
  root.append(picker, loadBtn, pasteArea, loadPasted, toolbar, status, chips, comparePanel, graphPanel);

  loadBtn.addEventListener("click", () => {
    const ex = EXAMPLES[Number(picker.value)];
    void store.loadAlgebra(ex.payload);
  });
  loadPasted.addEventListener("click", () => {
    try {
      void store.loadAlgebra(parseAlgebraInput(pasteArea.value));
    } catch (err) {
      status.textContent = `bad JSON: ${err}`;
      status.className = "status error";
    }
  });
  leftBtn.addEventListener("click", () => void store.mutate("left"));
  rightBtn.addEventListener("click", () => void store.mutate("right"));
  undoBtn.addEventListener("click", () => void store.undo());
  modShift.addEventListener("click", () => void store.toggleModShift());
  exportDot.addEventListener("click", () => download("silting.dot", store.state.graph ? toDot(store.state.graph) : ""));
  exportJson.addEventListener("click", () => download("silting.json", store.state.graph ? toJson(store.state.graph) : ""));

  graphPanel.addEventListener("click", (ev) => {
    const g = (ev.target as Element).closest("g.node");
    if (g) void store.toggleCompare(Number(g.getAttribute("data-node-id")));
  });

  store.subscribe((state: ViewState) => render(state));

  function render(state: ViewState) {
    status.className = state.error ? "status error" : "status";
    status.textContent = state.error
      ? `server error: ${state.error}`
      : state.busy
        ? "working…"
        : state.current
          ? `current: ${state.current.label} (${state.current.certificate})`
          : "load an algebra to start";
    modShift.textContent = `mod [1]: ${state.modShift ? "on" : "off"}`;

    chips.textContent = "";
    if (state.current) {
      for (const s of state.current.summands) {
        const badge = Object.entries(s.graded_dims)
          .map(([d, v]) => `${d}:${v.join(",")}`)
          .join(" ");
        const chip = el(
          "button",
          { class: "chip" + (state.selectedSummand === s.label ? " selected" : "") },
          `${s.label}  (${badge})`,
        );
        chip.addEventListener("click", () =>
          store.selectSummand(state.selectedSummand === s.label ? null : s.label),
        );
        chips.appendChild(chip);
      }
    }
    const canMutate = Boolean(state.selectedSummand) && !state.busy;
    leftBtn.toggleAttribute("disabled", !canMutate);
    rightBtn.toggleAttribute("disabled", !canMutate);

    comparePanel.textContent =
      state.compareSelection.length === 2 && state.compareResult
        ? `compare(${state.compareSelection.join(", ")}): ${state.compareResult}`
        : state.compareSelection.length === 1
          ? "select a second node to compare"
          : "";

    if (state.graph) {
      const currentId = currentNodeId(state);
      const view = buildView(state.graph, currentId, state.compareSelection);
      graphPanel.innerHTML = renderSvg(view);
    }
  }

  function currentNodeId(state: ViewState): number | null {
    if (!state.graph || !state.current) return null;
    const ids = [...state.current.summands.map((s) => s.registry_id)].sort((a, b) => a - b);
    for (const n of state.graph.nodes) {
      const ns = [...n.summands].sort((a, b) => a - b);
      if (ns.length === ids.length && ns.every((v, i) => v === ids[i])) return n.id;
    }
    return null;
  }

  function download(name: string, text: string) {
    const a = el("a", {
      href: "data:text/plain;charset=utf-8," + encodeURIComponent(text),
      download: name,
    });
    a.click();
  }

  return store;
}

declare global {
  interface Window {
    siltlabBoot?: typeof boot;
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  window.siltlabBoot = boot;
  const mount = document.getElementById("app");
  if (mount) boot(mount, "");
}
