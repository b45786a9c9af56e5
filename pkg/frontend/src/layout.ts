// Graph layout: layered by longest path from the roots when the explored set
// is acyclic (the usual case: arrows follow the strict order), deterministic
// force-directed fallback otherwise.

export interface LayoutInput {
  nodes: number[];
  edges: { source: number; target: number }[];
}

export interface Point {
  x: number;
  y: number;
}

const WIDTH = 900;
const LAYER_H = 110;
const MARGIN = 70;

export function isAcyclic(input: LayoutInput): boolean {
  return longestPathLayers(input) !== null;
}

/** Longest-path layering; null when a cycle exists. */
export function longestPathLayers(input: LayoutInput): Map<number, number> | null {
  const indeg = new Map<number, number>();
  for (const n of input.nodes) indeg.set(n, 0);
  for (const e of input.edges) indeg.set(e.target, (indeg.get(e.target) ?? 0) + 1);
  const layer = new Map<number, number>();
  const queue = input.nodes.filter((n) => (indeg.get(n) ?? 0) === 0).sort((a, b) => a - b);
  for (const n of queue) layer.set(n, 0);
  const remaining = new Map(indeg);
  const order: number[] = [];
  while (queue.length) {
    const n = queue.shift()!;
    order.push(n);
    for (const e of input.edges) {
      if (e.source !== n) continue;
      const l = Math.max(layer.get(e.target) ?? 0, (layer.get(n) ?? 0) + 1);
      layer.set(e.target, l);
      const d = (remaining.get(e.target) ?? 0) - 1;
      remaining.set(e.target, d);
      if (d === 0) queue.push(e.target);
    }
  }
  if (order.length !== input.nodes.length) return null;
  return layer;
}

export function layeredLayout(input: LayoutInput): Map<number, Point> {
  const layers = longestPathLayers(input);
  const out = new Map<number, Point>();
  if (!layers) return forceLayout(input);
  const byLayer = new Map<number, number[]>();
  for (const n of input.nodes) {
    const l = layers.get(n) ?? 0;
    if (!byLayer.has(l)) byLayer.set(l, []);
    byLayer.get(l)!.push(n);
  }
  for (const [l, ns] of byLayer) {
    ns.sort((a, b) => a - b);
    const step = (WIDTH - 2 * MARGIN) / Math.max(1, ns.length - 1);
    ns.forEach((n, i) => {
      const x = ns.length === 1 ? WIDTH / 2 : MARGIN + i * step;
      out.set(n, { x, y: MARGIN + l * LAYER_H });
    });
  }
  return out;
}

/** Deterministic spring embedding (fixed seed, fixed iteration count). */
export function forceLayout(input: LayoutInput): Map<number, Point> {
  const pos = new Map<number, Point>();
  let seed = 0x5eed;
  const rand = () => {
    seed = (seed * 1103515245 + 12345) & 0x7fffffff;
    return seed / 0x7fffffff;
  };
  for (const n of [...input.nodes].sort((a, b) => a - b)) {
    pos.set(n, { x: MARGIN + rand() * (WIDTH - 2 * MARGIN), y: MARGIN + rand() * 500 });
  }
  const k = 140;
  for (let iter = 0; iter < 150; iter++) {
    const force = new Map<number, Point>();
    for (const n of input.nodes) force.set(n, { x: 0, y: 0 });
    for (const a of input.nodes) {
      for (const b of input.nodes) {
        if (a >= b) continue;
        const pa = pos.get(a)!;
        const pb = pos.get(b)!;
        const dx = pa.x - pb.x;
        const dy = pa.y - pb.y;
        const d2 = Math.max(25, dx * dx + dy * dy);
        const rep = (k * k) / d2;
        force.get(a)!.x += dx * rep * 0.01;
        force.get(a)!.y += dy * rep * 0.01;
        force.get(b)!.x -= dx * rep * 0.01;
        force.get(b)!.y -= dy * rep * 0.01;
      }
    }
    for (const e of input.edges) {
      const ps = pos.get(e.source)!;
      const pt = pos.get(e.target)!;
      const dx = pt.x - ps.x;
      const dy = pt.y - ps.y;
      force.get(e.source)!.x += dx * 0.02;
      force.get(e.source)!.y += dy * 0.02;
      force.get(e.target)!.x -= dx * 0.02;
      force.get(e.target)!.y -= dy * 0.02;
    }
    const damp = 1 - iter / 160;
    for (const n of input.nodes) {
      const p = pos.get(n)!;
      const f = force.get(n)!;
      p.x = Math.min(WIDTH - MARGIN, Math.max(MARGIN, p.x + f.x * damp));
      p.y = Math.min(600, Math.max(MARGIN, p.y + f.y * damp));
    }
  }
  return pos;
}
