// Live round trip against the real service on the bundled toy fixture:
// search -> select -> accept defaults -> snippet, asserting the displayed
// snippet equals the service response byte for byte and that every
// interaction produced exactly one log line.

import { spawn, spawnSync, ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { AppFlow, userFacingHoles } from "../src/model.js";

const REPO = resolve(__dirname, "..", "..");
const FIXTURE = join(REPO, "tests", "fixtures", "toylib");
const PORT = 8765 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

const python = spawnSync("python3", ["--version"]).status === 0;
const suite = python ? describe : describe.skip;

suite("UI round trip against the live service", () => {
  let workDir: string;
  let server: ChildProcess | null = null;
  let logPath: string;

  beforeAll(async () => {
    workDir = mkdtempSync(join(tmpdir(), "featsmith-ui-"));
    logPath = join(workDir, "interactions.jsonl");
    const artifact = join(workDir, "toy.nli.json");
    const build = spawnSync(
      "python3",
      [
        "-m", "featsmith.cli", "build",
        "--threads", join(FIXTURE, "threads.jsonl"),
        "--tags", "toysheet",
        "--client", join(FIXTURE, "client"),
        "--api-index", join(FIXTURE, "api_index.json"),
        "--out", artifact,
      ],
      { cwd: REPO, encoding: "utf-8" },
    );
    expect(build.status, build.stderr).toBe(0);

    server = spawn(
      "python3",
      [
        "-m", "featsmith.cli", "serve",
        "--artifact", artifact,
        "--port", String(PORT),
        "--log", logPath,
      ],
      { cwd: REPO, stdio: "ignore" },
    );
    // wait for readiness
    const deadline = Date.now() + 30_000;
    for (;;) {
      try {
        const res = await fetch(`${BASE}/api/features`);
        if (res.ok) {
          break;
        }
      } catch {
        /* not up yet */
      }
      if (Date.now() > deadline) {
        throw new Error("service did not start");
      }
      await new Promise((r) => setTimeout(r, 250));
    }
  }, 60_000);

  afterAll(() => {
    server?.kill("SIGTERM");
    rmSync(workDir, { recursive: true, force: true });
  });

  it(
    "search -> select -> accept defaults -> snippet matches the service byte-for-byte",
    async () => {
      const client = new ApiClient(BASE);
      const flow = new AppFlow(client, "roundtrip");
      const context = [
        { name: "wb", type: "Workbook" },
        { name: "cell", type: "Cell" },
        { name: "color", type: "short" },
      ];

      const searched = await flow.search("set cell color");
      expect(searched.searchError).toBeNull();
      expect(searched.features[0].phrase).toBe("set cell color");

      const selected = await flow.select(searched.features[0].id, context);
      expect(selected.stage).toBe("fill");
      const expressionHoles = selected.holes.filter((h) => h.kind === "HOLE");
      expect(expressionHoles.length).toBeGreaterThan(0);
      // accepting defaults: every expression hole already has its rank-1 text
      expect(expressionHoles.every((h) => h.chosen.length > 0)).toBe(true);
      expect(userFacingHoles(selected.holes).length).toBeLessThan(
        expressionHoles.length + 1,
      );

      const submitted = await flow.submit();
      expect(submitted.stage).toBe("snippet");
      expect(submitted.fillError).toBeNull();

      // byte-for-byte: the displayed snippet equals an equivalent direct call
      const fills: Record<string, string> = {};
      for (const h of expressionHoles) {
        fills[h.id] = h.chosen;
      }
      const direct = await fetch(
        `${BASE}/api/features/${searched.features[0].id}/fill`,
        {
          method: "POST",
          headers: { "Content-Type": "application/json" },
          body: JSON.stringify({ context, fills }),
        },
      );
      const directBody = await direct.json();
      expect(submitted.snippet).toBe(directBody.snippet);
      expect(submitted.snippet).not.toContain("<$");

      // one log entry per interaction
      const lines = readFileSync(logPath, "utf-8")
        .split("\n")
        .filter((l) => l.trim())
        .map((l) => JSON.parse(l))
        .filter((r) => r.session === "roundtrip");
      expect(lines.length).toBe(expressionHoles.length);
      const byHole = new Map(lines.map((r) => [r.hole_id, r]));
      for (const h of expressionHoles) {
        expect(byHole.get(h.id)?.accepted_rank).toBe(1);
      }
    },
    60_000,
  );

  it("rejects a wrong-typed fill with a structured error naming the hole", async () => {
    const client = new ApiClient(BASE);
    const flow = new AppFlow(client, "roundtrip-err");
    const context = [
      { name: "wb", type: "Workbook" },
      { name: "cell", type: "Cell" },
      { name: "color", type: "short" },
    ];
    const searched = await flow.search("set cell color");
    await flow.select(searched.features[0].id, context);
    flow.setHole("HOLE1", (h) => ({ ...h, chosen: "cell", chosenRank: null }));
    const state = await flow.submit();
    expect(state.stage).toBe("fill");
    const hole1 = state.holes.find((h) => h.id === "HOLE1");
    expect(hole1?.error).toBeTruthy();
  }, 30_000);
});
