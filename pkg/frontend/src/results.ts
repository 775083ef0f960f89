/** Rendering of engine responses: bound lists, parameter table, LaTeX, export.
 *
 * Every displayed number and expression comes from the engine payload; the
 * studio itself never computes bounds.
 */

import type { AnalysisResponse } from "./model.js";

function h(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function expressionList(title: string, wrapper: string, expressions: string[]): HTMLElement {
  const section = h("div", "bound-block");
  section.appendChild(h("h3", "", title));
  if (expressions.length > 1) section.appendChild(h("div", "bound-wrapper", `${wrapper} {`));
  const list = h("ul", "bound-list");
  for (const text of expressions) {
    list.appendChild(h("li", "bound-expression", text));
  }
  section.appendChild(list);
  if (expressions.length > 1) section.appendChild(h("div", "bound-wrapper", "}"));
  return section;
}

function download(filename: string, text: string, type: string): void {
  const url = URL.createObjectURL(new Blob([text], { type }));
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}

export function renderResults(container: HTMLElement, response: AnalysisResponse): void {
  container.innerHTML = "";
  container.appendChild(h("div", "effect-echo", `query: ${response.effect}`));
  container.appendChild(expressionList("lower bound", "MAX", response.bounds.lower_text));
  container.appendChild(expressionList("upper bound", "MIN", response.bounds.upper_text));

  const tableWrap = h("div", "parameter-block");
  tableWrap.appendChild(h("h3", "", "parameter interpretations"));
  const table = h("table", "parameter-table") as HTMLTableElement;
  const head = table.createTHead().insertRow();
  head.appendChild(h("th", "", "parameter"));
  head.appendChild(h("th", "", "meaning"));
  const body = table.createTBody();
  for (const p of response.parameters) {
    const row = body.insertRow();
    row.insertCell().textContent = p.name;
    row.insertCell().textContent = p.interpretation;
  }
  tableWrap.appendChild(table);
  container.appendChild(tableWrap);

  if (response.latex) {
    const latexBlock = h("div", "latex-block");
    latexBlock.appendChild(h("h3", "", "LaTeX"));
    const pre = h("pre", "latex-source", response.latex);
    latexBlock.appendChild(pre);
    const copy = h("button", "copy-latex", "Copy LaTeX") as HTMLButtonElement;
    copy.addEventListener("click", () => {
      void navigator.clipboard?.writeText(response.latex ?? "");
    });
    latexBlock.appendChild(copy);
    container.appendChild(latexBlock);
  }

  const exports = h("div", "export-block");
  const exportJson = h("button", "export-json", "Export bounds JSON") as HTMLButtonElement;
  exportJson.addEventListener("click", () => {
    download("bounds.json", JSON.stringify(response.bounds, null, 2) + "\n", "application/json");
  });
  exports.appendChild(exportJson);
  if (response.latex) {
    const exportTex = h("button", "export-latex", "Export LaTeX") as HTMLButtonElement;
    exportTex.addEventListener("click", () => {
      download("bounds.tex", (response.latex ?? "") + "\n", "text/x-tex");
    });
    exports.appendChild(exportTex);
  }
  container.appendChild(exports);

  const logs = h("details", "logs-block");
  logs.appendChild(h("summary", "", `logs (computed in ${response.timing_seconds.toFixed(3)} s)`));
  const pre = h("pre", "logs-text", response.logs.join("\n"));
  logs.appendChild(pre);
  container.appendChild(logs);
}

export function renderViolations(container: HTMLElement, message: string, violations: { code: string; message: string }[], onRetry?: () => void): void {
  container.innerHTML = "";
  const box = h("div", "error-box");
  box.appendChild(h("div", "error-title", message));
  if (violations.length) {
    const list = h("ul", "violation-list");
    for (const v of violations) {
      list.appendChild(h("li", "violation-item", `${v.code}: ${v.message}`));
    }
    box.appendChild(list);
  }
  if (onRetry) {
    const retry = h("button", "retry-button", "Retry") as HTMLButtonElement;
    retry.addEventListener("click", onRetry);
    box.appendChild(retry);
  }
  container.appendChild(box);
}
