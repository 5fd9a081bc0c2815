// Full flow against a live service: synthesize a corpus, start the Python
// review service, and label one video end-to-end through the console.
// Excluded from the default run; enable with RUN_E2E=1 (npm run test:e2e).

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { createConsole } from "../src/main.js";

const PORT = 8743;
const BASE = `http://127.0.0.1:${PORT}`;

let workdir: string;
let server: ChildProcess | null = null;

async function waitForService(timeoutMs = 20000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/meta`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("service did not come up in time");
}

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "vidmod-e2e-"));
  const synth = spawnSync(
    "python3",
    ["-m", "vidmod.cli", "synth", "--videos", "20", "--deviant", "0.4",
     "--seed", "5", "--out", join(workdir, "corpus.jsonl")],
    { encoding: "utf-8" },
  );
  if (synth.status !== 0) {
    throw new Error(`synth failed: ${synth.stderr}`);
  }
  writeFileSync(
    join(workdir, "config.json"),
    JSON.stringify({ corpus_path: "corpus.jsonl", threshold: 0.5, train: { epochs: 100 } }),
  );
  server = spawn(
    "python3",
    ["-m", "vidmod.cli", "serve", "--config", join(workdir, "config.json"),
     "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitForService();
});

afterAll(() => {
  server?.kill("SIGTERM");
  rmSync(workdir, { recursive: true, force: true });
});

describe("live service flow", () => {
  it("labels one synthetic video end-to-end", async () => {
    const ui = await createConsole(new ApiClient(BASE), "e2e-moderator");
    document.body.append(ui.root);

    const queue = await ui.loadQueue();
    expect(queue.length).toBeGreaterThan(0);
    const target = queue[0]!.video_id;
    await ui.openVideo(target);

    // all three views rendered from live layouts
    expect(ui.root.querySelectorAll(".timeline-block").length).toBeGreaterThan(0);
    expect(ui.root.querySelectorAll(".scene-row").length).toBeGreaterThan(0);
    expect(ui.root.querySelectorAll(".histogram-row").length).toBeGreaterThan(0);

    // interactions drive the shared playhead
    const firstFrame = ui.root.querySelector(".frame-cell img")!;
    firstFrame.dispatchEvent(new MouseEvent("click", { bubbles: true }));

    // deviant label without evidence is blocked before any request
    ui.store.setPendingLabel("protected_products");
    expect(ui.reviewForm.canSubmit()).toBe(false);

    // mark a frame as evidence via the star and submit
    const star = ui.root.querySelector(".frame-cell .evidence-toggle")!;
    star.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(ui.reviewForm.canSubmit()).toBe(true);
    await ui.reviewForm.submit();

    const message = ui.root.querySelector(".form-message")!.textContent ?? "";
    expect(message).toContain("accepted");

    // the reviewed video left the queue
    const after = await ui.loadQueue();
    expect(after.map((item) => item.video_id)).not.toContain(target);
  });

  it("rejects a duplicate review through the real service", async () => {
    const api = new ApiClient(BASE);
    const queue = await api.queue();
    const target = queue[0]!.video_id;
    const payload = {
      label: "normal",
      moderator_id: "dup-moderator",
      evidence: { frame_times: [], tags: [], words: [] },
    };
    await api.submitReview(target, payload);
    await expect(api.submitReview(target, payload)).rejects.toThrowError(/already reviewed/);
  });
});
