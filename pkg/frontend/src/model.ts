/** Editor state and its lossless serialization to the engine's graph text. */

export type Pane = "left" | "right";

export interface NodeState {
  name: string;
  pane: Pane;
  x: number;
  y: number;
  cardinality: number;
  latent: boolean;
  exposure: boolean;
  outcome: boolean;
}

export interface EdgeState {
  from: string;
  to: string;
  monotone: boolean;
}

export interface ParameterInfo {
  name: string;
  interpretation: string;
}

export interface BoundsPayload {
  lower: unknown[];
  upper: unknown[];
  lower_text: string[];
  upper_text: string[];
  parameters: ParameterInfo[];
  logs: string[];
}

export interface AnalysisResponse {
  status: string;
  effect: string;
  bounds: BoundsPayload;
  parameters: ParameterInfo[];
  constraint_strings: string[];
  logs: string[];
  timing_seconds: number;
  warnings: string[];
  text?: string;
  latex?: string;
}

export interface EditorState {
  nodes: NodeState[];
  edges: EdgeState[];
  queryText: string;
  constraintsText: string;
  selectedNode: string | null;
  selectedEdge: number | null;
  violationBanner: string | null;
  statusMessage: string | null;
  showGhosts: boolean;
  lastResponse: AnalysisResponse | null;
}

export const NAME_RE = /^[A-Za-z][A-Za-z0-9_]*$/;

export function createState(): EditorState {
  return {
    nodes: [],
    edges: [],
    queryText: "",
    constraintsText: "",
    selectedNode: null,
    selectedEdge: null,
    violationBanner: null,
    statusMessage: null,
    showGhosts: false,
    lastResponse: null,
  };
}

export function findNode(state: EditorState, name: string): NodeState | undefined {
  return state.nodes.find((n) => n.name === name);
}

export function addNode(state: EditorState, name: string, pane: Pane, x: number, y: number): string | null {
  if (!NAME_RE.test(name)) {
    return `invalid name "${name}": use a letter followed by letters, digits, or _`;
  }
  if (findNode(state, name)) {
    return `a variable named "${name}" already exists`;
  }
  state.nodes.push({ name, pane, x, y, cardinality: 2, latent: false, exposure: false, outcome: false });
  state.showGhosts = false;
  return null;
}

export function renameNode(state: EditorState, oldName: string, newName: string): string | null {
  if (newName === oldName) return null;
  if (!NAME_RE.test(newName)) {
    return `invalid name "${newName}"`;
  }
  if (findNode(state, newName)) {
    return `a variable named "${newName}" already exists`;
  }
  const node = findNode(state, oldName);
  if (!node) return `no variable named "${oldName}"`;
  node.name = newName;
  for (const e of state.edges) {
    if (e.from === oldName) e.from = newName;
    if (e.to === oldName) e.to = newName;
  }
  if (state.selectedNode === oldName) state.selectedNode = newName;
  return null;
}

export function removeNode(state: EditorState, name: string): void {
  state.nodes = state.nodes.filter((n) => n.name !== name);
  state.edges = state.edges.filter((e) => e.from !== name && e.to !== name);
  if (state.selectedNode === name) state.selectedNode = null;
  state.selectedEdge = null;
  state.showGhosts = false;
}

function reaches(state: EditorState, from: string, to: string): boolean {
  const stack = [from];
  const seen = new Set<string>();
  while (stack.length) {
    const cur = stack.pop()!;
    if (cur === to) return true;
    for (const e of state.edges) {
      if (e.from === cur && !seen.has(e.to)) {
        seen.add(e.to);
        stack.push(e.to);
      }
    }
  }
  return false;
}

/** Adds an edge, or returns the violation message to show in the banner. */
export function addEdge(state: EditorState, from: string, to: string): string | null {
  if (from === to) {
    return "self-loops are not allowed in a DAG";
  }
  const a = findNode(state, from);
  const b = findNode(state, to);
  if (!a || !b) return "both endpoints must exist";
  if (a.pane === "right" && b.pane === "left") {
    return "edges between the two sides must go from L to R";
  }
  if (state.edges.some((e) => e.from === from && e.to === to)) {
    return `edge ${from} → ${to} already exists`;
  }
  if (reaches(state, to, from)) {
    return `edge ${from} → ${to} would create a cycle`;
  }
  state.edges.push({ from, to, monotone: false });
  state.showGhosts = false;
  return null;
}

export function removeEdge(state: EditorState, index: number): void {
  state.edges.splice(index, 1);
  state.selectedEdge = null;
  state.showGhosts = false;
}

export function setCardinality(state: EditorState, name: string, k: number): string | null {
  if (!Number.isInteger(k) || k < 2) {
    return "cardinality must be an integer of at least 2";
  }
  const node = findNode(state, name);
  if (!node) return `no variable named "${name}"`;
  node.cardinality = k;
  return null;
}

export function toggleLatent(state: EditorState, name: string): void {
  const node = findNode(state, name);
  if (node) node.latent = !node.latent;
}

/** At most one exposure and one outcome; assigning moves the flag. */
export function setExposure(state: EditorState, name: string): void {
  for (const n of state.nodes) n.exposure = n.name === name ? !n.exposure : false;
}

export function setOutcome(state: EditorState, name: string): void {
  for (const n of state.nodes) n.outcome = n.name === name ? !n.outcome : false;
}

export function toggleMonotone(state: EditorState, index: number): void {
  const e = state.edges[index];
  if (e) e.monotone = !e.monotone;
}

/**
 * Engine graph text for the current editor state.  Matches the engine's own
 * canonical serialization, so serialize -> engine parse -> engine re-serialize
 * is a fixed point.  Ghost confounder overlays are display-only and excluded.
 */
export function serializeGraph(state: EditorState): string {
  const lines: string[] = [];
  for (const n of state.nodes) {
    const parts = [`node ${n.name}`];
    if (n.pane === "left") parts.push("side=left");
    if (n.cardinality !== 2) parts.push(`card=${n.cardinality}`);
    if (n.latent) parts.push("latent");
    if (n.exposure) parts.push("exposure");
    if (n.outcome) parts.push("outcome");
    lines.push(parts.join(" "));
  }
  for (const e of state.edges) {
    lines.push(`edge ${e.from} -> ${e.to}${e.monotone ? " monotone" : ""}`);
  }
  return lines.join("\n") + (lines.length ? "\n" : "");
}

/** The total causal risk difference when an exposure/outcome pair is flagged. */
export function defaultQuery(state: EditorState): string | null {
  const exposure = state.nodes.find((n) => n.exposure);
  const outcome = state.nodes.find((n) => n.outcome);
  if (!exposure || !outcome) return null;
  return `p{${outcome.name}(${exposure.name} = 1) = 1} - p{${outcome.name}(${exposure.name} = 0) = 1}`;
}

/** Display-only confounder overlays shown after a successful Analyze. */
export function ghostNodes(state: EditorState): NodeState[] {
  if (!state.showGhosts) return [];
  const ghosts: NodeState[] = [];
  const left = state.nodes.filter((n) => n.pane === "left" && !n.latent);
  const right = state.nodes.filter((n) => n.pane === "right" && !n.latent);
  if (left.length && !left.some((n) => n.latent)) {
    ghosts.push({ name: "Ul", pane: "left", x: 60, y: 40, cardinality: 2, latent: true, exposure: false, outcome: false });
  }
  if (right.length) {
    ghosts.push({ name: "Ur", pane: "right", x: 540, y: 40, cardinality: 2, latent: true, exposure: false, outcome: false });
  }
  return ghosts;
}

/** Banner text for any current side violation, or null. */
export function sideViolation(state: EditorState): string | null {
  for (const e of state.edges) {
    const a = findNode(state, e.from);
    const b = findNode(state, e.to);
    if (a && b && a.pane === "right" && b.pane === "left") {
      return "edges between the two sides must go from L to R";
    }
  }
  return null;
}
