// HTML string renderers: pure functions from state to markup, kept free of
// DOM access so they run under plain node in tests.
import { readyToSubmit, userFacingHoles } from "./model.js";
export function escapeHtml(text) {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;")
        .replace(/'/g, "&#39;");
}
export function renderFeatureList(features, error) {
    if (error) {
        return `<div class="error" data-role="search-error">${escapeHtml(error)}
      <button data-action="retry">Retry</button></div>`;
    }
    if (!features.length) {
        return `<p class="empty" data-role="empty">No matching functionality. Try other words.</p>`;
    }
    const rows = features
        .map((f) => `<li>
        <button data-action="select" data-id="${escapeHtml(f.id)}">
          <span class="phrase">${escapeHtml(f.phrase)}</span>
          <span class="support">${f.support} mentions</span>
        </button>
      </li>`)
        .join("\n");
    return `<ul class="features" data-role="feature-list">${rows}</ul>`;
}
export function renderHoleForm(hole) {
    const placeholder = hole.recommendations[0] ?? "";
    const options = hole.recommendations
        .map((text, i) => `<option value="${escapeHtml(text)}"${text === hole.chosen ? " selected" : ""}>${i + 1}. ${escapeHtml(text)}</option>`)
        .join("");
    const err = hole.error
        ? `<span class="hole-error" data-role="hole-error">${escapeHtml(hole.error)}</span>`
        : "";
    const typeLabel = hole.expectedType ? `: ${escapeHtml(hole.expectedType)}` : "";
    return `<div class="hole${hole.error ? " has-error" : ""}" data-hole="${escapeHtml(hole.id)}">
    <label>${escapeHtml(hole.id)}${typeLabel}</label>
    <input data-role="hole-input" value="${escapeHtml(hole.chosen)}"
           placeholder="${escapeHtml(placeholder)}" />
    ${options ? `<select data-role="hole-select"><option value="">recommendations</option>${options}</select>` : ""}
    ${err}
  </div>`;
}
export function renderPatternView(state) {
    if (!state.entry) {
        return "";
    }
    const facing = userFacingHoles(state.holes);
    const auto = state.holes.filter((h) => h.kind === "HOLE" && h.autoAccepted);
    const bodies = state.holes.filter((h) => h.kind === "BODY");
    const disabled = readyToSubmit(state.holes) ? "" : " disabled";
    return `<section data-role="pattern">
    <h2>${escapeHtml(state.entry.phrase)}</h2>
    <pre class="skeleton" data-role="skeleton">${escapeHtml(state.entry.skeleton)}</pre>
    <div class="holes">${facing.map(renderHoleForm).join("\n")}</div>
    ${auto.length ? `<p class="auto" data-role="auto">${auto.length} trivial ${auto.length === 1 ? "hole" : "holes"} pre-filled from your context.</p>` : ""}
    ${bodies.map(renderHoleForm).join("\n")}
    ${state.fillError ? `<div class="error" data-role="fill-error">${escapeHtml(state.fillError)}</div>` : ""}
    <button data-action="submit"${disabled}>Synthesize snippet</button>
  </section>`;
}
export function renderSnippetView(snippet) {
    // the snippet is displayed verbatim: escaping only, no reformatting
    return `<section data-role="snippet">
    <pre class="code" data-role="snippet-code">${escapeHtml(snippet)}</pre>
    <button data-action="copy">Copy to clipboard</button>
    <button data-action="back">Back to search</button>
  </section>`;
}
export function renderApp(state) {
    const search = `<header>
    <h1>featsmith</h1>
    <input data-role="query" value="${escapeHtml(state.query)}"
           placeholder="What do you want to do?" />
  </header>`;
    if (state.stage === "search") {
        return `${search}${renderFeatureList(state.features, state.searchError)}`;
    }
    if (state.stage === "fill") {
        return `${search}${renderPatternView(state)}`;
    }
    return `${search}${renderSnippetView(state.snippet ?? "")}`;
}
