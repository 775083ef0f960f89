/** The studio app: canvas gestures, attribute hotkeys, submission, results.
 *
 * Gestures (also listed in the in-app help):
 *   Shift+click empty pane  add a variable there (type its name, Enter)
 *   drag                    move a variable
 *   Shift+drag A to B       add the edge A -> B
 *   double-click            rename
 *   click + 'u'             toggle latent (unobserved)
 *   click + 'c' / digit     set the number of levels
 *   click + 'e' / 'y'       mark exposure / outcome
 *   click edge + 'm'        toggle assumed monotone influence
 *   Delete / Backspace      remove the selection
 */

import { ApiClient, ApiError } from "./api.js";
import {
  EditorState,
  addEdge,
  addNode,
  createState,
  defaultQuery,
  findNode,
  removeEdge,
  removeNode,
  renameNode,
  serializeGraph,
  setCardinality,
  setExposure,
  setOutcome,
  sideViolation,
  toggleLatent,
  toggleMonotone,
} from "./model.js";
import { CANVAS_H, CANVAS_W, renderGraph } from "./render.js";
import { renderResults, renderViolations } from "./results.js";

const HELP_LINES = [
  "Shift+click: add variable",
  "Shift+drag: add edge",
  "double-click: rename",
  "drag: move",
  "u: latent",
  "c or digit: levels",
  "e: exposure",
  "y: outcome",
  "m: monotone edge",
  "Del: remove",
];

type PendingInput =
  | { kind: "create"; pane: "left" | "right"; x: number; y: number }
  | { kind: "rename"; name: string }
  | { kind: "cardinality"; name: string };

export class Studio {
  state: EditorState;
  api: ApiClient;

  private root: HTMLElement;
  private svg!: SVGSVGElement;
  private banner!: HTMLElement;
  private status!: HTMLElement;
  private queryBox!: HTMLTextAreaElement;
  private constraintsBox!: HTMLTextAreaElement;
  private results!: HTMLElement;
  private spinner!: HTMLElement;
  private nameInput!: HTMLInputElement;
  private pending: PendingInput | null = null;
  private moveDrag: { name: string; dx: number; dy: number } | null = null;
  private edgeDrag: { from: string } | null = null;

  constructor(root: HTMLElement, fetchImpl?: ConstructorParameters<typeof ApiClient>[0]) {
    this.root = root;
    this.state = createState();
    this.api = new ApiClient(fetchImpl);
    this.build();
    this.render();
  }

  // ------------------------------------------------------------------ DOM

  private build(): void {
    this.root.innerHTML = `
      <header>
        <h1>DAG studio</h1>
        <p class="help">${HELP_LINES.join(" · ")}</p>
      </header>
      <div id="banner" class="banner" hidden></div>
      <div id="status" class="status"></div>
      <div class="canvas-wrap">
        <svg id="canvas" width="${CANVAS_W}" height="${CANVAS_H}"></svg>
        <input id="name-input" class="name-input" hidden autocomplete="off" />
      </div>
      <div class="io">
        <label>causal query
          <textarea id="query" rows="2" placeholder="p{Y(X = 1) = 1} - p{Y(X = 0) = 1}"></textarea>
        </label>
        <label>extra constraints (one per line)
          <textarea id="constraints" rows="2" placeholder="X(Z = 1) >= X(Z = 0)"></textarea>
        </label>
        <div class="buttons">
          <button id="parse-constraints">Parse</button>
          <button id="analyze">Analyze the graph</button>
          <button id="compute">Compute the bounds</button>
          <span id="spinner" class="spinner" hidden>computing…</span>
        </div>
      </div>
      <div id="results" class="results"></div>
    `;
    this.svg = this.root.querySelector("#canvas") as unknown as SVGSVGElement;
    this.banner = this.root.querySelector("#banner")!;
    this.status = this.root.querySelector("#status")!;
    this.queryBox = this.root.querySelector("#query")!;
    this.constraintsBox = this.root.querySelector("#constraints")!;
    this.results = this.root.querySelector("#results")!;
    this.spinner = this.root.querySelector("#spinner")!;
    this.nameInput = this.root.querySelector("#name-input")!;

    this.svg.addEventListener("mousedown", (e) => this.onMouseDown(e as MouseEvent));
    this.svg.addEventListener("mousemove", (e) => this.onMouseMove(e as MouseEvent));
    this.svg.addEventListener("mouseup", (e) => this.onMouseUp(e as MouseEvent));
    this.svg.addEventListener("dblclick", (e) => this.onDoubleClick(e as MouseEvent));
    document.addEventListener("keydown", (e) => this.onKeyDown(e));
    this.nameInput.addEventListener("keydown", (e) => this.onNameInputKey(e));

    this.queryBox.addEventListener("input", () => {
      this.state.queryText = this.queryBox.value;
    });
    this.constraintsBox.addEventListener("input", () => {
      this.state.constraintsText = this.constraintsBox.value;
    });
    (this.root.querySelector("#parse-constraints") as HTMLButtonElement).addEventListener("click", () => this.parseConstraints());
    (this.root.querySelector("#analyze") as HTMLButtonElement).addEventListener("click", () => this.analyzeGraph());
    (this.root.querySelector("#compute") as HTMLButtonElement).addEventListener("click", () => void this.compute());
  }

  // ----------------------------------------------------------- helpers

  private canvasPoint(e: MouseEvent): { x: number; y: number } {
    const rect = this.svg.getBoundingClientRect();
    const sx = rect.width ? CANVAS_W / rect.width : 1;
    const sy = rect.height ? CANVAS_H / rect.height : 1;
    return { x: (e.clientX - rect.left) * sx, y: (e.clientY - rect.top) * sy };
  }

  private nodeAt(e: MouseEvent): string | null {
    const target = e.target as Element | null;
    const group = target?.closest?.("[data-node]");
    const name = group?.getAttribute("data-node") ?? null;
    if (name && findNode(this.state, name)) return name;
    return null;
  }

  private edgeAt(e: MouseEvent): number | null {
    const target = e.target as Element | null;
    const group = target?.closest?.("[data-edge]");
    const raw = group?.getAttribute("data-edge");
    return raw == null ? null : Number(raw);
  }

  private setBanner(message: string | null): void {
    this.state.violationBanner = message;
    this.banner.hidden = message == null;
    this.banner.textContent = message ?? "";
  }

  private setStatus(message: string): void {
    this.state.statusMessage = message;
    this.status.textContent = message;
  }

  render(): void {
    renderGraph(this.svg, this.state);
  }

  // ----------------------------------------------------------- gestures

  private onMouseDown(e: MouseEvent): void {
    if (!this.nameInput.hidden) this.commitNameInput();
    const node = this.nodeAt(e);
    const point = this.canvasPoint(e);
    if (node && e.shiftKey) {
      this.edgeDrag = { from: node };
      return;
    }
    if (node) {
      this.state.selectedNode = node;
      this.state.selectedEdge = null;
      const spec = findNode(this.state, node)!;
      this.moveDrag = { name: node, dx: spec.x - point.x, dy: spec.y - point.y };
      this.render();
      return;
    }
    const edge = this.edgeAt(e);
    if (edge != null) {
      this.state.selectedEdge = edge;
      this.state.selectedNode = null;
      this.render();
      return;
    }
    if (e.shiftKey) {
      const pane = point.x < CANVAS_W / 2 ? "left" : "right";
      this.openInput({ kind: "create", pane, x: point.x, y: point.y }, "", point);
      return;
    }
    this.state.selectedNode = null;
    this.state.selectedEdge = null;
    this.render();
  }

  private onMouseMove(e: MouseEvent): void {
    if (this.moveDrag) {
      const spec = findNode(this.state, this.moveDrag.name);
      if (spec) {
        const point = this.canvasPoint(e);
        spec.x = Math.max(0, Math.min(CANVAS_W, point.x + this.moveDrag.dx));
        spec.y = Math.max(0, Math.min(CANVAS_H, point.y + this.moveDrag.dy));
        this.render();
      }
    }
  }

  private onMouseUp(e: MouseEvent): void {
    if (this.edgeDrag) {
      const target = this.nodeAt(e);
      if (target && target !== this.edgeDrag.from) {
        const error = addEdge(this.state, this.edgeDrag.from, target);
        if (error) {
          this.setBanner(error);
        } else {
          this.setBanner(sideViolation(this.state));
          this.setStatus(`added edge ${this.edgeDrag.from} → ${target}`);
        }
        this.render();
      }
      this.edgeDrag = null;
    }
    this.moveDrag = null;
  }

  private onDoubleClick(e: MouseEvent): void {
    const node = this.nodeAt(e);
    if (!node) return;
    const spec = findNode(this.state, node)!;
    this.openInput({ kind: "rename", name: node }, node, { x: spec.x, y: spec.y });
  }

  private onKeyDown(e: KeyboardEvent): void {
    const active = document.activeElement;
    if (active === this.nameInput || active === this.queryBox || active === this.constraintsBox) return;
    const node = this.state.selectedNode;
    if (e.key === "Delete" || e.key === "Backspace") {
      if (node) {
        removeNode(this.state, node);
        this.setStatus(`removed ${node}`);
      } else if (this.state.selectedEdge != null) {
        removeEdge(this.state, this.state.selectedEdge);
        this.setStatus("removed edge");
      }
      this.setBanner(sideViolation(this.state));
      this.render();
      return;
    }
    if (node) {
      if (e.key === "u") {
        toggleLatent(this.state, node);
        this.setStatus(`${node} is now ${findNode(this.state, node)!.latent ? "latent" : "observed"}`);
      } else if (e.key === "e") {
        setExposure(this.state, node);
        this.setStatus(`${node} marked as exposure`);
        this.prefillDefaultQuery();
      } else if (e.key === "y") {
        setOutcome(this.state, node);
        this.setStatus(`${node} marked as outcome`);
        this.prefillDefaultQuery();
      } else if (e.key === "c") {
        const spec = findNode(this.state, node)!;
        this.openInput({ kind: "cardinality", name: node }, String(spec.cardinality), { x: spec.x, y: spec.y });
      } else if (/^[0-9]$/.test(e.key)) {
        const error = setCardinality(this.state, node, Number(e.key));
        this.setStatus(error ?? `cardinality of ${node} set to ${e.key}`);
      } else {
        return;
      }
      this.render();
      return;
    }
    if (this.state.selectedEdge != null && e.key === "m") {
      toggleMonotone(this.state, this.state.selectedEdge);
      const edge = this.state.edges[this.state.selectedEdge];
      this.setStatus(`edge ${edge.from} → ${edge.to} ${edge.monotone ? "assumed monotone" : "no longer monotone"}`);
      this.render();
    }
  }

  // ------------------------------------------------------ inline input

  private openInput(pending: PendingInput, value: string, at: { x: number; y: number }): void {
    this.pending = pending;
    this.nameInput.hidden = false;
    this.nameInput.value = value;
    this.nameInput.classList.remove("invalid");
    this.nameInput.style.left = `${at.x}px`;
    this.nameInput.style.top = `${at.y}px`;
    this.nameInput.focus();
  }

  private onNameInputKey(e: KeyboardEvent): void {
    if (e.key === "Enter") {
      e.preventDefault();
      this.commitNameInput();
    } else if (e.key === "Escape") {
      this.pending = null;
      this.nameInput.hidden = true;
      this.nameInput.blur();
    }
  }

  private commitNameInput(): void {
    if (!this.pending || this.nameInput.hidden) return;
    const value = this.nameInput.value.trim();
    let error: string | null = null;
    if (this.pending.kind === "create") {
      error = addNode(this.state, value, this.pending.pane, this.pending.x, this.pending.y);
      if (!error) {
        this.state.selectedNode = value;
        this.setStatus(`added ${value} on the ${this.pending.pane} side`);
      }
    } else if (this.pending.kind === "rename") {
      error = renameNode(this.state, this.pending.name, value);
      if (!error) this.setStatus(`renamed to ${value}`);
    } else {
      error = setCardinality(this.state, this.pending.name, Number(value));
      if (!error) this.setStatus(`cardinality of ${this.pending.name} set to ${value}`);
    }
    if (error) {
      // keep the input open so the user can fix the name
      this.nameInput.classList.add("invalid");
      this.setStatus(error);
      return;
    }
    this.pending = null;
    this.nameInput.hidden = true;
    this.nameInput.blur();
    this.render();
  }

  // ------------------------------------------------------- submission

  private prefillDefaultQuery(): void {
    if (this.state.queryText.trim()) return;
    const suggestion = defaultQuery(this.state);
    if (suggestion) {
      this.state.queryText = suggestion;
      this.queryBox.value = suggestion;
    }
  }

  parseConstraints(): void {
    const lines = this.state.constraintsText.split("\n").filter((l) => l.trim());
    this.setStatus(lines.length
      ? `${lines.length} constraint${lines.length > 1 ? "s" : ""} will be included`
      : "no constraints entered");
  }

  analyzeGraph(): void {
    if (!this.state.nodes.length) {
      this.setStatus("draw a graph first");
      return;
    }
    const violation = sideViolation(this.state);
    this.setBanner(violation);
    if (violation) return;
    this.state.showGhosts = true;
    this.prefillDefaultQuery();
    this.setStatus("graph analyzed; within-side confounders are assumed (shown as ghosts)");
    this.render();
  }

  serializedGraph(): string {
    return serializeGraph(this.state);
  }

  async compute(): Promise<void> {
    if (!this.state.nodes.length) {
      this.setStatus("draw a graph first");
      return;
    }
    this.prefillDefaultQuery();
    this.spinner.hidden = false;
    this.setBanner(null);
    try {
      const response = await this.api.analyze({
        graph: this.serializedGraph(),
        effect: this.state.queryText.trim() || undefined,
        constraints: this.state.constraintsText.trim() || undefined,
        options: { emit: ["json", "text", "latex"] },
      });
      this.state.lastResponse = response;
      this.state.queryText = response.effect;
      this.queryBox.value = response.effect;
      renderResults(this.results, response);
      this.setStatus(`bounds computed: ${response.bounds.lower_text.length} lower / ${response.bounds.upper_text.length} upper expressions`);
    } catch (err) {
      if ((err as Error).name === "AbortError") return;
      const apiError = err as ApiError;
      renderViolations(
        this.results,
        apiError.message ?? String(err),
        apiError.violations ?? [],
        apiError.code === "NETWORK" || apiError.code === "TIMEOUT" ? () => void this.compute() : undefined,
      );
      this.setStatus("computation failed");
    } finally {
      this.spinner.hidden = true;
    }
  }
}
