import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, HoleRecommendations } from "../src/api.js";
import {
  AppFlow,
  acceptRecommendation,
  holeModels,
  overrideWithText,
  readyToSubmit,
  userFacingHoles,
} from "../src/model.js";

const ENTRY = {
  id: "f001",
  phrase: "set cell color",
  support: 6,
  surface_forms: ["set the cell color"],
  api: { name: "setFillForegroundColor", qualified: "CellStyle.setFillForegroundColor" },
  skeleton: "<$HOLE1>.setFillForegroundColor(<$HOLE2>);\n",
  holes: [
    { id: "HOLE1", kind: "HOLE" as const, expected_type: "Workbook", marker: "<$HOLE1>" },
    { id: "HOLE2", kind: "HOLE" as const, expected_type: "short", marker: "<$HOLE2>" },
  ],
  pattern_support: 11,
  provenance: "alpha/Color00.java",
};

const RECS: HoleRecommendations[] = [
  {
    ...ENTRY.holes[0],
    recommendations: [
      { rank: 1, text: "wb", cost: 0, frequency: 3 },
      { rank: 2, text: "new HSSFWorkbook()", cost: 2, frequency: 1 },
    ],
  },
  {
    ...ENTRY.holes[1],
    recommendations: [{ rank: 1, text: "color", cost: 0, frequency: 2 }],
  },
];

class FakeClient {
  log: Array<{ entry: string; hole: string; rank: number | null }> = [];
  failSearch = false;
  failFill: { hole: string; message: string } | null = null;
  lastFills: Record<string, string> | null = null;

  async searchFeatures(query: string) {
    if (this.failSearch) {
      throw new Error("service unreachable");
    }
    if (query.includes("nothing")) {
      return [];
    }
    return [{ id: "f001", phrase: "set cell color", support: 6 }];
  }

  async getEntry(_id: string) {
    return ENTRY;
  }

  async recommend(_id: string, _ctx: unknown) {
    return RECS;
  }

  async fill(_id: string, _ctx: unknown, fills: Record<string, string>) {
    this.lastFills = fills;
    if (this.failFill) {
      throw new ApiError(422, {
        code: "type_mismatch",
        message: this.failFill.message,
        hole: this.failFill.hole,
      });
    }
    return "style.setFillForegroundColor(color);\n";
  }

  async logInteraction(entry: string, hole: string, rank: number | null) {
    this.log.push({ entry, hole, rank });
    return { ok: true };
  }
}

const asClient = (fake: FakeClient) => fake as unknown as ApiClient;

describe("search view state", () => {
  it("lists matches and clears errors", async () => {
    const flow = new AppFlow(asClient(new FakeClient()));
    const state = await flow.search("set cell color");
    expect(state.features.map((f) => f.phrase)).toEqual(["set cell color"]);
    expect(state.searchError).toBeNull();
  });

  it("shows an error state when the service is unreachable", async () => {
    const fake = new FakeClient();
    fake.failSearch = true;
    const flow = new AppFlow(asClient(fake));
    const state = await flow.search("anything");
    expect(state.searchError).toMatch(/unreachable/);
    expect(state.features).toEqual([]);
  });

  it("represents a no-match query as an empty list", async () => {
    const flow = new AppFlow(asClient(new FakeClient()));
    const state = await flow.search("nothing matches this");
    expect(state.features).toEqual([]);
    expect(state.searchError).toBeNull();
  });
});

describe("hole form models", () => {
  it("pre-accepts object-typed holes and keeps scalar parameters user-facing", () => {
    const holes = holeModels(RECS);
    expect(holes[0].autoAccepted).toBe(true); // Workbook plumbing: "wb"
    expect(holes[0].chosen).toBe("wb");
    expect(holes[0].chosenRank).toBe(1);
    // the short-typed color is a user decision even though a candidate exists
    expect(userFacingHoles(holes).map((h) => h.id)).toEqual(["HOLE2"]);
  });

  it("auto-creates object plumbing via constructors too", () => {
    const holes = holeModels([
      { ...RECS[0], recommendations: [{ rank: 1, text: "new HSSFWorkbook()", cost: 2, frequency: 0 }] },
    ]);
    expect(holes[0].autoAccepted).toBe(true);
  });

  it("keeps recommendation-less object holes user-facing", () => {
    const holes = holeModels([{ ...RECS[0], recommendations: [] }]);
    expect(holes[0].autoAccepted).toBe(false);
    expect(userFacingHoles(holes).map((h) => h.id)).toEqual(["HOLE1"]);
  });

  it("tracks accept vs override for logging", () => {
    let hole = holeModels(RECS)[0];
    hole = acceptRecommendation(hole, 2);
    expect(hole.chosen).toBe("new HSSFWorkbook()");
    expect(hole.chosenRank).toBe(2);
    hole = overrideWithText(hole, "myCustomWb");
    expect(hole.chosenRank).toBeNull(); // custom text logs as rank-absent
    hole = overrideWithText(hole, "wb");
    expect(hole.chosenRank).toBe(1); // typed text matching a rec keeps its rank
  });

  it("gates submission on nonempty expression holes", () => {
    const holes = holeModels(RECS);
    expect(readyToSubmit(holes)).toBe(true);
    const cleared = holes.map((h) => ({ ...h, chosen: "" }));
    expect(readyToSubmit(cleared)).toBe(false);
  });
});

describe("fill and submit flow", () => {
  it("submits chosen fills and logs exactly one event per hole", async () => {
    const fake = new FakeClient();
    const flow = new AppFlow(asClient(fake));
    await flow.search("set cell color");
    await flow.select("f001", [{ name: "wb", type: "Workbook" }]);
    const skeletonBefore = flow.state.entry!.skeleton;
    const state = await flow.submit();
    expect(state.stage).toBe("snippet");
    expect(state.snippet).toBe("style.setFillForegroundColor(color);\n");
    expect(fake.lastFills).toEqual({ HOLE1: "wb", HOLE2: "color" });
    expect(fake.log).toEqual([
      { entry: "f001", hole: "HOLE1", rank: 1 },
      { entry: "f001", hole: "HOLE2", rank: 1 },
    ]);
    // the UI never mutates skeleton text client-side
    expect(flow.state.entry!.skeleton).toBe(skeletonBefore);
  });

  it("attaches a type error to the offending hole and logs nothing", async () => {
    const fake = new FakeClient();
    fake.failFill = { hole: "HOLE2", message: "expected short" };
    const flow = new AppFlow(asClient(fake));
    await flow.select("f001", []);
    const state = await flow.submit();
    expect(state.stage).toBe("fill");
    expect(state.holes.find((h) => h.id === "HOLE2")?.error).toBe("expected short");
    expect(state.holes.find((h) => h.id === "HOLE1")?.error).toBeNull();
    expect(fake.log).toEqual([]);
  });

  it("degrades to manual entry when recommendations fail", async () => {
    const fake = new FakeClient();
    fake.recommend = async () => {
      throw new Error("boom");
    };
    const flow = new AppFlow(asClient(fake));
    const state = await flow.select("f001", []);
    expect(state.holes).toHaveLength(2);
    expect(state.holes.every((h) => h.recommendations.length === 0)).toBe(true);
    expect(state.holes.every((h) => !h.autoAccepted)).toBe(true);
  });
});
