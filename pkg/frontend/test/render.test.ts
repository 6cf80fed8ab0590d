import { describe, expect, it } from "vitest";

import { initialState } from "../src/model.js";
import {
  escapeHtml,
  renderApp,
  renderFeatureList,
  renderHoleForm,
  renderSnippetView,
} from "../src/render.js";

const HOLE = {
  id: "HOLE2",
  kind: "HOLE" as const,
  expectedType: "short",
  recommendations: ["color", "(short) 42"],
  chosen: "color",
  chosenRank: 1,
  autoAccepted: false,
  error: null,
};

describe("feature list rendering", () => {
  it("shows ranked entries with support counts", () => {
    const html = renderFeatureList(
      [
        { id: "f001", phrase: "set cell color", support: 6 },
        { id: "f002", phrase: "merge cell", support: 5 },
      ],
      null,
    );
    expect(html).toContain("set cell color");
    expect(html.indexOf("set cell color")).toBeLessThan(html.indexOf("merge cell"));
    expect(html).toContain("6 mentions");
    expect(html).toContain('data-id="f001"');
  });

  it("renders the empty state for no matches", () => {
    expect(renderFeatureList([], null)).toContain('data-role="empty"');
  });

  it("renders an error state with a retry affordance", () => {
    const html = renderFeatureList([], "service unreachable");
    expect(html).toContain('data-role="search-error"');
    expect(html).toContain('data-action="retry"');
  });
});

describe("hole form rendering", () => {
  it("greys the top recommendation as the placeholder", () => {
    const html = renderHoleForm({ ...HOLE, chosen: "" });
    expect(html).toContain('placeholder="color"');
  });

  it("exposes the full ranked list in the dropdown", () => {
    const html = renderHoleForm(HOLE);
    expect(html).toContain("1. color");
    expect(html).toContain("2. (short) 42");
  });

  it("highlights a server-reported type error on the hole", () => {
    const html = renderHoleForm({ ...HOLE, error: "expected short" });
    expect(html).toContain("has-error");
    expect(html).toContain("expected short");
  });

  it("escapes markup in expressions", () => {
    const html = renderHoleForm({ ...HOLE, chosen: 'f("<b>")' });
    expect(html).not.toContain("<b>");
    expect(html).toContain("&lt;b&gt;");
  });
});

describe("snippet view rendering", () => {
  it("displays the snippet verbatim (escaped) with a copy action", () => {
    const snippet = 'cell.setCellValue("a < b");\n';
    const html = renderSnippetView(snippet);
    expect(html).toContain('data-action="copy"');
    expect(html).toContain(escapeHtml(snippet));
  });
});

describe("app shell", () => {
  it("renders the search stage by default", () => {
    const html = renderApp(initialState());
    expect(html).toContain('data-role="query"');
    expect(html).toContain('data-role="empty"');
  });
});
