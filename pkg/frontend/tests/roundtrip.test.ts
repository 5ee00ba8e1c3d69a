/** End-to-end against the real backend: spawns the Python server on
 * fixture CSVs and drives the same endpoints the browser uses. */

import { ChildProcess, spawn } from "node:child_process";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { fetchGraph, fetchMeta } from "../src/api.js";
import { validateGraphDoc } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));
const fixtures = join(here, "fixtures");
const N = 24;

let server: ChildProcess | null = null;
let base = "";

function startServer(): Promise<string> {
  return new Promise((resolve, reject) => {
    const child = spawn("python3", [
      "-m", "mapdiag", "serve",
      "--data", join(fixtures, "data.csv"),
      "--embedding", join(fixtures, "emb.csv"),
      "--port", "0",
    ], { stdio: ["ignore", "pipe", "pipe"] });
    server = child;
    let sniffed = "";
    let stderr = "";
    const timer = setTimeout(
      () => reject(new Error(`server did not start: ${sniffed} ${stderr}`)),
      15000);
    child.stdout?.on("data", (chunk: Buffer) => {
      sniffed += chunk.toString();
      const match = sniffed.match(/serving on (http:\/\/[^/\s]+)\//);
      if (match) {
        clearTimeout(timer);
        resolve(match[1]);
      }
    });
    child.stderr?.on("data", (chunk: Buffer) => {
      stderr += chunk.toString();
    });
    child.on("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`server exited early (${code}): ${stderr}`));
    });
  });
}

beforeAll(async () => {
  base = await startServer();
}, 20000);

afterAll(() => {
  server?.kill("SIGINT");
});

describe("kappa round-trip through the live server", () => {
  it("meta advertises the dataset and kappa range", async () => {
    const meta = await fetchMeta(base);
    expect(meta.n).toBe(N);
    expect(meta.kappa_min).toBe(1);
    expect(meta.kappa_max).toBe(N - 1);
    expect(meta.kinds).toContain("retrieval");
    expect(meta.kinds).toContain("relevance");
  });

  it("kappa=4 yields 4N edges, kappa=10 yields 10N edges", async () => {
    for (const kappa of [4, 10] as const) {
      for (const kind of ["retrieval", "relevance"] as const) {
        const doc = await fetchGraph(base, kind, "tc", kappa);
        expect(doc.kappa).toBe(kappa);
        expect(doc.kind).toBe(kind);
        expect(doc.edges).toHaveLength(kappa * N);
        expect(doc.nodes).toHaveLength(N);
      }
    }
  });

  it("served documents pass schema validation verbatim", async () => {
    const resp = await fetch(`${base}/api/graph?kind=retrieval&model=pr&kappa=6`);
    expect(resp.ok).toBe(true);
    const raw = await resp.json();
    const doc = validateGraphDoc(raw);
    expect(doc.report.pointwise_F).toHaveLength(N);
    expect(doc.report.normalizer).toBe(6);
  });

  it("surfaces server-side parameter errors", async () => {
    await expect(fetchGraph(base, "retrieval", "tc", 0))
      .rejects.toThrow(/kappa/);
    const resp = await fetch(`${base}/api/graph?kind=unknown`);
    expect(resp.status).toBe(404);
  });
});
