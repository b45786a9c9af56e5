// Bundled algebra presentations offered in the picker.

export interface ExampleAlgebra {
  name: string;
  payload: unknown;
}

const p = (vertices: string[], arrows: [string, string, string][], relations: { coeff: string; path: string[] }[][]) => ({
  field_char: 32003,
  vertices,
  arrows: arrows.map(([name, from, to]) => ({ name, from, to })),
  relations,
  path_length_cap: 8,
});

export const EXAMPLES: ExampleAlgebra[] = [
  { name: "A2 (1 -> 2)", payload: { preset: "a2" } },
  { name: "A3 (1 -> 2 -> 3)", payload: { preset: "a3" } },
  { name: "Kronecker (two arrows)", payload: { preset: "kronecker" } },
  { name: "two-cycle ab = ba = 0", payload: { preset: "two_cycle" } },
  { name: "dual numbers k[x]/x^2", payload: { preset: "dual_numbers" } },
  {
    name: "A2 (inline JSON)",
    payload: p(["1", "2"], [["a", "1", "2"]], []),
  },
];

export function parseAlgebraInput(text: string): unknown {
  const data = JSON.parse(text);
  if (typeof data !== "object" || data === null) {
    throw new Error("algebra JSON must be an object");
  }
  return data;
}
