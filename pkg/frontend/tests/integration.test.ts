// Round trip against the real service: spawn `python3 -m ontosearch serve`
// on the bundled fixture KB, then drive the same client, state machine,
// and renderers the page uses.

import { spawn, type ChildProcess } from "node:child_process";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { Client } from "../src/api.js";
import { QueryConsole } from "../src/state.js";
import { renderOntology, renderState } from "../src/render.js";

const REPO_ROOT = join(dirname(fileURLToPath(import.meta.url)), "..", "..");
const KB_DIR = join(REPO_ROOT, "fixtures", "crops");
const PORT = 8754;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForHealthy(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const response = await fetch(`${BASE}/healthz`);
      if (response.ok) {
        return;
      }
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error("service did not become healthy");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "ontosearch", "serve", KB_DIR, "--host", "127.0.0.1",
     "--port", String(PORT)],
    { cwd: REPO_ROOT, stdio: ["ignore", "ignore", "pipe"] }
  );
  server.stderr?.on("data", () => {});
  await waitForHealthy();
});

afterAll(() => {
  server.kill("SIGTERM");
});

describe("query console against the live service", () => {
  it("answers the fertilizer query with K123 and a trace", async () => {
    const console_ = new QueryConsole(new Client(BASE));
    const state = await console_.submit("fertilizer required for mango");

    expect(state.kind).toBe("answered");
    if (state.kind !== "answered") {
      return;
    }
    const values = state.answer.results.flatMap((g) => g.values);
    expect(values).toContain("K123");
    expect(state.answer.trace.levels_walked).toBeGreaterThanOrEqual(1);

    const html = renderState(state);
    expect(html).toContain("K123");
    expect(html).toContain("<details");
    expect(html).toContain("mode-forward");
  });

  it("renders the reversed query as a distinct no-relation state", async () => {
    const console_ = new QueryConsole(new Client(BASE));
    const state = await console_.submit("crops required for which K123");

    expect(state.kind).toBe("failed");
    if (state.kind !== "failed") {
      return;
    }
    expect(state.code).toBe("no_relation");

    const html = renderState(state);
    expect(html).toContain("error-no_relation");
    expect(html).not.toContain("mode-badge");
  });

  it("renders the live class forest", async () => {
    const summary = await new Client(BASE).ontology();
    const crops = summary.roots.find((r) => r.name === "Crops");
    expect(crops).toBeDefined();
    expect(crops!.children.map((c) => c.name)).toEqual([
      "Cereals",
      "Fruits",
      "Vegetable",
    ]);

    const html = renderOntology(summary);
    expect(html).toContain("Crops");
    expect(html).toContain("potato");
  });

  it("keeps the session history re-submittable", async () => {
    const console_ = new QueryConsole(new Client(BASE));
    await console_.submit("soil required for potato");
    await console_.submit("price of rice");
    expect(console_.history).toEqual([
      "soil required for potato",
      "price of rice",
    ]);

    const replay = await console_.submit(console_.history[0]);
    expect(replay.kind).toBe("answered");
    if (replay.kind === "answered") {
      expect(replay.answer.results[0].values).toEqual(["KR256"]);
    }
  });
});
