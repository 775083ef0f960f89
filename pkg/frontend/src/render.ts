/** SVG rendering of the editor state; decorations track node/edge attributes. */

import { EditorState, NodeState, findNode, ghostNodes } from "./model.js";

const SVG_NS = "http://www.w3.org/2000/svg";
export const CANVAS_W = 640;
export const CANVAS_H = 360;
export const NODE_R = 18;

function el(tag: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  return node;
}

function edgeEndpoints(a: NodeState, b: NodeState): [number, number, number, number] {
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const len = Math.hypot(dx, dy) || 1;
  const pad = NODE_R + 4;
  return [a.x + (dx / len) * pad, a.y + (dy / len) * pad, b.x - (dx / len) * pad, b.y - (dy / len) * pad];
}

export function renderGraph(svg: SVGSVGElement, state: EditorState): void {
  svg.innerHTML = "";
  svg.setAttribute("viewBox", `0 0 ${CANVAS_W} ${CANVAS_H}`);

  const defs = el("defs", {});
  const marker = el("marker", {
    id: "arrow", viewBox: "0 0 10 10", refX: 9, refY: 5,
    markerWidth: 7, markerHeight: 7, orient: "auto-start-reverse",
  });
  marker.appendChild(el("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#444" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  svg.appendChild(el("rect", {
    class: "pane pane-left", x: 0, y: 0, width: CANVAS_W / 2, height: CANVAS_H,
    "data-pane": "left",
  }));
  svg.appendChild(el("rect", {
    class: "pane pane-right", x: CANVAS_W / 2, y: 0, width: CANVAS_W / 2, height: CANVAS_H,
    "data-pane": "right",
  }));
  const leftLabel = el("text", { class: "pane-label", x: 12, y: 20 });
  leftLabel.textContent = "L (instruments / baseline)";
  const rightLabel = el("text", { class: "pane-label", x: CANVAS_W / 2 + 12, y: 20 });
  rightLabel.textContent = "R (exposure / outcome)";
  svg.appendChild(leftLabel);
  svg.appendChild(rightLabel);

  state.edges.forEach((edge, index) => {
    const a = findNode(state, edge.from);
    const b = findNode(state, edge.to);
    if (!a || !b) return;
    const [x1, y1, x2, y2] = edgeEndpoints(a, b);
    const group = el("g", {
      class: [
        "edge",
        edge.monotone ? "monotone" : "",
        state.selectedEdge === index ? "selected" : "",
      ].join(" ").trim(),
      "data-edge": index,
    });
    group.appendChild(el("line", { class: "edge-hit", x1, y1, x2, y2 }));
    group.appendChild(el("line", { class: "edge-line", x1, y1, x2, y2, "marker-end": "url(#arrow)" }));
    if (edge.monotone) {
      const label = el("text", { class: "edge-label", x: (x1 + x2) / 2, y: (y1 + y2) / 2 - 6 });
      label.textContent = "m";
      group.appendChild(label);
    }
    svg.appendChild(group);
  });

  const drawNode = (node: NodeState, ghost: boolean) => {
    const classes = [
      "node",
      ghost ? "ghost" : "",
      node.latent ? "latent" : "",
      node.exposure ? "exposure" : "",
      node.outcome ? "outcome" : "",
      state.selectedNode === node.name && !ghost ? "selected" : "",
    ].join(" ").trim();
    const group = el("g", { class: classes, "data-node": node.name });
    group.appendChild(el("circle", { cx: node.x, cy: node.y, r: NODE_R }));
    const label = el("text", { class: "node-label", x: node.x, y: node.y + 4 });
    label.textContent = node.name;
    group.appendChild(label);
    if (node.cardinality !== 2) {
      const badge = el("text", { class: "card-badge", x: node.x + NODE_R - 2, y: node.y - NODE_R + 6 });
      badge.textContent = String(node.cardinality);
      group.appendChild(badge);
    }
    svg.appendChild(group);
  };

  for (const node of state.nodes) drawNode(node, false);
  for (const ghost of ghostNodes(state)) drawNode(ghost, true);
}
