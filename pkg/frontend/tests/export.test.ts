import { describe, expect, it } from "vitest";

import { toDot, toJson } from "../src/export.js";
import type { GraphDto } from "../src/types.js";

const graph: GraphDto = {
  field_char: 32003,
  algebra_hash: "h",
  mod_shift: false,
  exhausted: false,
  nodes: [
    { id: 0, summands: [0, 1], labels: ["P1", "P2"], certificate: "Verified", gamma_matrix: [], shift_normal_form: 0, graded_dims: [] },
    { id: 1, summands: [1, 2], labels: ["P2", "X2"], certificate: "Verified", gamma_matrix: [], shift_normal_form: 0, graded_dims: [] },
  ],
  arrows: [{ source: 0, target: 1, class: 0, class_label: "P1", direction: "left" }],
};

describe("export", () => {
  it("renders DOT with one line per node and edge", () => {
    const dot = toDot(graph);
    expect(dot).toContain('n0 [label="P1+P2"];');
    expect(dot).toContain('n0 -> n1 [label="P1"];');
    expect(dot.startsWith("digraph")).toBe(true);
  });

  it("brackets mod-shift labels", () => {
    const dot = toDot({ ...graph, mod_shift: true });
    expect(dot).toContain('[label="[P1+P2]"]');
  });

  it("round-trips JSON", () => {
    expect(JSON.parse(toJson(graph))).toEqual(graph);
  });
});
