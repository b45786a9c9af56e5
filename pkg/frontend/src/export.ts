// Client-side export of the explored graph as DOT or JSON.

import type { GraphDto } from "./types.js";

export function toDot(graph: GraphDto): string {
  const lines = ["digraph silting {"];
  for (const n of graph.nodes) {
    const label = graph.mod_shift ? `[${n.labels.join("+")}]` : n.labels.join("+");
    lines.push(`  n${n.id} [label="${label}"];`);
  }
  for (const a of graph.arrows) {
    lines.push(`  n${a.source} -> n${a.target} [label="${a.class_label}"];`);
  }
  lines.push("}");
  return lines.join("\n");
}

export function toJson(graph: GraphDto): string {
  return JSON.stringify(graph, null, 2);
}
