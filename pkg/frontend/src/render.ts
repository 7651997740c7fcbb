import type { Answer, ClassNode, OntologySummary } from "./api.js";
import type { QueryState } from "./state.js";

// HTML-string renderers. Pure functions over API payloads so they can
// be tested without a browser; main.ts assigns the output to innerHTML.

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function chain(names: string[]): string {
  return names.map(escapeHtml).join(" &rarr; ");
}

export function renderAnswer(answer: Answer): string {
  const groups = answer.results
    .map(
      (group) => `
    <div class="result-group">
      <span class="property">${escapeHtml(group.property)}</span>
      <ul class="values">
        ${group.values.map((v) => `<li>${escapeHtml(v)}</li>`).join("")}
      </ul>
    </div>`
    )
    .join("");
  const trace = answer.trace;
  const levelNoun = trace.levels_walked === 1 ? "level" : "levels";
  return `
  <section class="answer">
    <header>
      <span class="mode-badge mode-${answer.mode}">${answer.mode}</span>
      <span class="subjects">${escapeHtml(answer.instance)} &middot; ${escapeHtml(answer.class)}</span>
    </header>
    ${groups}
    <details class="trace">
      <summary>how this was found (${trace.levels_walked} ${levelNoun} walked)</summary>
      <dl>
        <dt>instance-side chain</dt><dd>${chain(trace.domain_chain_used)}</dd>
        <dt>class-side chain</dt><dd>${chain(trace.range_chain_used)}</dd>
        <dt>matched at</dt>
        <dd>${escapeHtml(trace.matched_domain)} &rarr; ${escapeHtml(trace.matched_range)}</dd>
      </dl>
    </details>
  </section>`;
}

export function renderError(code: string, message: string): string {
  const cls = code.replace(/[^a-z0-9_-]/gi, "");
  return `
  <section class="error error-${cls}" role="alert">
    <span class="error-code">${escapeHtml(code)}</span>
    <p>${escapeHtml(message)}</p>
    <p class="retry-hint">Edit the query and submit again.</p>
  </section>`;
}

export function renderState(state: QueryState): string {
  switch (state.kind) {
    case "idle":
      return `<p class="placeholder">Type a question about the knowledge base.</p>`;
    case "loading":
      return `<p class="loading">Searching for "${escapeHtml(state.query)}"&hellip;</p>`;
    case "answered":
      return renderAnswer(state.answer);
    case "failed":
      return renderError(state.code, state.message);
  }
}

function renderClassNode(node: ClassNode): string {
  const instances = node.instances.length
    ? `<ul class="instances">${node.instances
        .map((i) => `<li>${escapeHtml(i)}</li>`)
        .join("")}</ul>`
    : "";
  const children = node.children.length
    ? `<ul class="children">${node.children
        .map((c) => `<li>${renderClassNode(c)}</li>`)
        .join("")}</ul>`
    : "";
  return `<span class="class-name">${escapeHtml(node.name)}</span>${instances}${children}`;
}

export function renderOntology(summary: OntologySummary): string {
  if (summary.roots.length === 0) {
    return `<p class="placeholder">no classes</p>`;
  }
  const forest = summary.roots
    .map((root) => `<li>${renderClassNode(root)}</li>`)
    .join("");
  const counts = summary.counts;
  return `
  <ul class="forest">${forest}</ul>
  <p class="counts">${counts.classes} classes, ${counts.properties} properties,
  ${counts.instances} instances from ${counts.documents} documents</p>`;
}

export function renderHistory(items: readonly string[]): string {
  if (items.length === 0) {
    return "";
  }
  return `<ul class="history">${items
    .map(
      (q, i) =>
        `<li><button type="button" class="history-item" data-index="${i}">${escapeHtml(q)}</button></li>`
    )
    .join("")}</ul>`;
}
