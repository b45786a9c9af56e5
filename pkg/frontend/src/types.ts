// DTOs mirroring the session service JSON (see docs/schemas.md in the repo root).

export interface SummandInfo {
  registry_id: number;
  label: string;
  graded_dims: Record<string, number[]>;
  gamma?: number[];
}

export interface NodePayload {
  id: number;
  label: string;
  summands: SummandInfo[];
  certificate: string;
}

export interface SessionState {
  session_id: string;
  algebra: { hash: string; vertices: string[]; field_char: number };
  current: NodePayload;
  available_mutations: { left: string[]; right: string[] };
  history_length: number;
}

export interface GraphNodeDto {
  id: number;
  summands: number[];
  labels: string[];
  certificate: string;
  gamma_matrix: number[][];
  shift_normal_form: number;
  graded_dims: Record<string, number[]>[];
}

export interface GraphArrowDto {
  source: number;
  target: number;
  class: number;
  class_label: string;
  direction: string;
}

export interface GraphDto {
  field_char: number;
  algebra_hash: string;
  mod_shift: boolean;
  exhausted: boolean;
  nodes: GraphNodeDto[];
  arrows: GraphArrowDto[];
}

export interface MutateResponse {
  node: NodePayload;
  edge: { source: number; target: number; class: number; direction: string };
}

export type Direction = "left" | "right";
