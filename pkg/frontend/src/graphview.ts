// View model and SVG rendering of the explored silting quiver. Pure string
// rendering so the same code is testable headless and embeddable in a page.

import { layeredLayout } from "./layout.js";
import type { GraphDto } from "./types.js";

export interface ViewNode {
  id: number;
  x: number;
  y: number;
  label: string;
  certificate: string;
  isCurrent: boolean;
  compareSelected: boolean;
}

export interface ViewEdge {
  source: number;
  target: number;
  label: string;
}

export interface GraphView {
  nodes: ViewNode[];
  edges: ViewEdge[];
  width: number;
  height: number;
}

export function buildView(
  graph: GraphDto,
  currentNodeId: number | null,
  compareSelection: number[],
): GraphView {
  const pos = layeredLayout({
    nodes: graph.nodes.map((n) => n.id),
    edges: graph.arrows.map((a) => ({ source: a.source, target: a.target })),
  });
  const nodes: ViewNode[] = graph.nodes.map((n) => ({
    id: n.id,
    x: pos.get(n.id)?.x ?? 0,
    y: pos.get(n.id)?.y ?? 0,
    label: (graph.mod_shift ? `[${n.labels.join("+")}]` : n.labels.join("+")),
    certificate: n.certificate,
    isCurrent: n.id === currentNodeId,
    compareSelected: compareSelection.includes(n.id),
  }));
  const edges: ViewEdge[] = graph.arrows.map((a) => ({
    source: a.source,
    target: a.target,
    label: a.class_label,
  }));
  const height = Math.max(220, ...nodes.map((n) => n.y + 80));
  return { nodes, edges, width: 900, height };
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

export function renderSvg(view: GraphView): string {
  const byId = new Map(view.nodes.map((n) => [n.id, n]));
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${view.width} ${view.height}" width="100%">`,
  );
  parts.push(
    `<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="#555"/></marker></defs>`,
  );
  for (const e of view.edges) {
    const s = byId.get(e.source);
    const t = byId.get(e.target);
    if (!s || !t) continue;
    const mx = (s.x + t.x) / 2;
    const my = (s.y + t.y) / 2;
    parts.push(
      `<g class="edge" data-source="${e.source}" data-target="${e.target}">` +
        `<line x1="${s.x}" y1="${s.y}" x2="${t.x}" y2="${t.y}" stroke="#555" marker-end="url(#arrow)"/>` +
        `<title>mutated class: ${esc(e.label)}</title>` +
        `<text x="${mx}" y="${my - 4}" font-size="10" fill="#777" text-anchor="middle">${esc(e.label)}</text></g>`,
    );
  }
  for (const n of view.nodes) {
    const stroke = n.isCurrent ? "#c33" : n.compareSelected ? "#36c" : "#333";
    const fill = n.certificate === "Verified" ? "#e8f4e8" : "#fdf3dc";
    parts.push(
      `<g class="node" data-node-id="${n.id}">` +
        `<rect x="${n.x - 56}" y="${n.y - 16}" width="112" height="32" rx="8" fill="${fill}" stroke="${stroke}" stroke-width="${n.isCurrent ? 3 : 1.5}"/>` +
        `<text x="${n.x}" y="${n.y + 4}" font-size="11" text-anchor="middle">${esc(n.label)}</text></g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

export function nodeIdSet(view: GraphView): Set<number> {
  return new Set(view.nodes.map((n) => n.id));
}

export function edgeKeySet(view: GraphView): Set<string> {
  return new Set(view.edges.map((e) => `${e.source}->${e.target}`));
}
